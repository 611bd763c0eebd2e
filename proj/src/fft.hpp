#pragma once

#include <complex>
#include <span>
#include <vector>

namespace effindex::detail {

/// Bins 0..n/2 of the forward DFT sum_t x_t exp(-2 pi i j t / n).
std::vector<std::complex<double>> forward_dft_real(std::span<const double> x);

/// Full forward DFT of a complex sequence, same sign convention.
std::vector<std::complex<double>> forward_dft(
    std::span<const std::complex<double>> x);

}  // namespace effindex::detail

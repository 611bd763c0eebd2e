#include "effindex/spectral.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>

#include <fmt/format.h>

#include "effindex/error.hpp"
#include "fft.hpp"

namespace effindex {

Periodogram periodogram(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n < kMinPeriodogramLength) {
    throw Error(ErrorCode::series_too_short,
                fmt::format("periodogram needs at least {} observations, got {}",
                            kMinPeriodogramLength, n));
  }
  double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  // Constant input must give exact zeros, not round-off of the mean.
  if (std::all_of(x.begin(), x.end(), [&](double v) { return v == x[0]; })) {
    mean = x[0];
  }
  std::vector<double> centred(n);
  for (std::size_t t = 0; t < n; ++t) centred[t] = x[t] - mean;

  const auto spectrum = detail::forward_dft_real(centred);

  Periodogram out;
  out.length = n;
  const std::size_t half = (n - 1) / 2;
  out.frequencies.resize(half);
  out.ordinates.resize(half);
  const double two_pi = 2.0 * std::numbers::pi;
  const double scale = 1.0 / (two_pi * static_cast<double>(n));
  for (std::size_t j = 1; j <= half; ++j) {
    out.frequencies[j - 1] = two_pi * static_cast<double>(j) / static_cast<double>(n);
    out.ordinates[j - 1] = std::norm(spectrum[j]) * scale;
  }
  return out;
}

}  // namespace effindex

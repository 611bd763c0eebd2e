#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace effindex {

/// Periodogram at the positive Fourier frequencies 2*pi*j/n, j = 1..(n-1)/2.
/// Normalised so white noise of variance s^2 has flat level s^2 / (2 pi).
struct Periodogram {
  std::size_t length = 0;  ///< n, the length of the transformed series
  std::vector<double> frequencies;
  std::vector<double> ordinates;

  std::size_t size() const noexcept { return ordinates.size(); }
};

inline constexpr std::size_t kMinPeriodogramLength = 8;

/// Mean is removed before transforming. Throws series_too_short below 8.
Periodogram periodogram(std::span<const double> x);

}  // namespace effindex

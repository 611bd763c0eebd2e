#pragma once

#include <cstddef>

#include "effindex/series.hpp"
#include "effindex/spectral.hpp"

namespace effindex {

enum class HurstMethod { local_whittle, gph };

const char* to_string(HurstMethod method) noexcept;

struct HurstEstimate {
  HurstMethod method = HurstMethod::local_whittle;
  double hurst = 0.5;
  std::size_t bandwidth = 0;
  /// Local Whittle: the minimiser sits on the search box edge (or the
  /// objective is flat). GPH: the estimate falls outside (0, 1).
  bool boundary = false;
};

struct LrdConfig {
  /// m = floor(n^q) low Fourier frequencies enter each estimator.
  double bandwidth_exponent = 0.6;

  /// Bandwidth for a periodogram of a length-n series, capped at (n-1)/2.
  /// Throws invalid_input when it falls below kMinBandwidth.
  std::size_t bandwidth(std::size_t n) const;
};

inline constexpr std::size_t kMinLrdLength = 64;
inline constexpr std::size_t kMinBandwidth = 4;
inline constexpr double kWhittleBoxHalfWidth = 0.49;
inline constexpr double kWhittleTolerance = 1e-6;

/// Profiled local Whittle objective at memory parameter d over the first m
/// ordinates.
double whittle_objective(const Periodogram& pg, std::size_t m, double d);

HurstEstimate local_whittle(const LogReturnSeries& r, const LrdConfig& cfg);
HurstEstimate local_whittle(const Periodogram& pg, const LrdConfig& cfg);

/// Log-periodogram regression on ln(4 sin^2(lambda/2)).
HurstEstimate gph(const LogReturnSeries& r, const LrdConfig& cfg);
HurstEstimate gph(const Periodogram& pg, const LrdConfig& cfg);

}  // namespace effindex

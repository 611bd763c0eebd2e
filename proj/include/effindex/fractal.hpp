#pragma once

#include <span>

#include "effindex/series.hpp"

namespace effindex {

enum class FractalMethod { hall_wood, genton };

const char* to_string(FractalMethod method) noexcept;

/// Two-scale (lags 1 and 2) fractal dimension of a log-price path.
struct FractalDimEstimate {
  FractalMethod method = FractalMethod::hall_wood;
  double dimension = 1.5;
  /// Regression value before clamping to [1, 2].
  double raw = 1.5;
  bool clamped = false;
};

inline constexpr std::size_t kMinFractalLength = 8;

/// Gaussian consistency factor of the Qn scale estimator.
inline constexpr double kQnConsistency = 2.2191;

/// Rousseeuw-Croux Qn: kQnConsistency times the k-th smallest pairwise
/// distance, k = C(h, 2), h = floor(len/2) + 1. Needs at least 2 values.
/// Runs in O(len log len) by bisecting on the distance and counting pairs.
double qn_scale(std::span<const double> x);

/// Box-counting estimator from mean absolute non-overlapping increments.
/// Throws degenerate_path when either scale has zero total variation.
FractalDimEstimate hall_wood(const LogPriceSeries& lp);

/// Variogram estimator with Qn^2 of the lag-l increments. Throws
/// degenerate_path when Qn vanishes at either lag (e.g. a straight line).
FractalDimEstimate genton(const LogPriceSeries& lp);

}  // namespace effindex

#pragma once

#include <cstddef>
#include <span>

#include "effindex/series.hpp"

namespace effindex {

struct ApEnConfig {
  std::size_t embedding = 2;     ///< template length m
  double tolerance_factor = 0.2; ///< r = factor * sample standard deviation
};

struct ApEnEstimate {
  double value = 0.0;  ///< nats
};

/// Sample standard deviation (n - 1 denominator).
double sample_stddev(std::span<const double> x);

/// Approximate entropy Phi^m - Phi^(m+1), self-matches included, max-norm
/// template distance. Throws degenerate_series for zero standard deviation.
ApEnEstimate apen(const LogReturnSeries& r, const ApEnConfig& cfg);

/// Same statistic with an explicit absolute tolerance (>= 0). Used when the
/// tolerance is anchored to another series, as for shuffled replicates.
ApEnEstimate apen_with_tolerance(std::span<const double> x, std::size_t embedding,
                                 double tolerance);

}  // namespace effindex

#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "effindex/entropy.hpp"
#include "effindex/fractal.hpp"
#include "effindex/lrd.hpp"
#include "effindex/series.hpp"

namespace effindex {

/// Range of each measure in the distance: Hurst and fractal dimension share
/// a unit range, approximate entropy is rescaled by two.
inline constexpr double kRangeHurst = 1.0;
inline constexpr double kRangeFractal = 1.0;
inline constexpr double kRangeEntropy = 2.0;

/// Values of the measures for an uncorrelated, efficient market.
inline constexpr double kEfficientHurst = 0.5;
inline constexpr double kEfficientFractal = 1.5;
inline constexpr double kEfficientEntropy = 1.0;

enum class AggregationMode {
  average,        ///< three terms: mean of the two H and two D estimates
  per_estimator,  ///< five terms, one per estimator
};

const char* to_string(AggregationMode mode) noexcept;
AggregationMode parse_aggregation_mode(const std::string& text);

struct MeasureConfig {
  LrdConfig lrd;
  ApEnConfig apen;
};

struct EIConfig {
  AggregationMode mode = AggregationMode::average;
  std::size_t shuffles = 100;
  MeasureConfig measures;

  /// Throws invalid_input unless shuffles >= 2 and the estimator settings
  /// are in range.
  void validate() const;
};

/// The five raw measure values in a fixed order.
struct MeasureValues {
  double h_lw = 0.0;
  double h_gph = 0.0;
  double d_hw = 0.0;
  double d_g = 0.0;
  double apen = 0.0;
};

/// Baseline of the classic index: the theoretical efficient values.
MeasureValues classic_baseline() noexcept;

struct MeasureSet {
  HurstEstimate h_lw;
  HurstEstimate h_gph;
  FractalDimEstimate d_hw;
  FractalDimEstimate d_g;
  ApEnEstimate apen;

  MeasureValues values() const noexcept;
};

/// Estimate all five measures. Hurst and entropy use the returns, fractal
/// dimension the log-price path; `apen_tolerance` is the absolute ApEn
/// tolerance.
MeasureSet estimate_measures(const LogReturnSeries& returns,
                             const LogPriceSeries& log_prices,
                             const MeasureConfig& cfg, double apen_tolerance);

/// Convenience for a single price series with the tolerance taken from its
/// own returns.
MeasureSet estimate_measures(const PriceSeries& prices, const MeasureConfig& cfg);

/// Squared normalised deviations grouped by factor (Hurst, fractal,
/// entropy). In per-estimator mode each factor sums its estimators' terms.
using FactorTerms = std::array<double, 3>;

FactorTerms ei_terms(const MeasureValues& measured, const MeasureValues& baseline,
                     AggregationMode mode) noexcept;

/// Square root of the summed squared normalised deviations.
double ei_point(const MeasureValues& measured, const MeasureValues& baseline,
                AggregationMode mode) noexcept;

/// Point index against classic_baseline(), with ApEn divided by
/// `apen_normalizer` so its efficient value is one.
double ei_classic(const MeasureValues& measured, double apen_normalizer,
                  AggregationMode mode);

/// Median across replicates of each factor's share of the summed squares,
/// renormalised to sum to one. A replicate with no deviation at all counts
/// as equal thirds.
std::array<double, 3> contributions(const std::vector<FactorTerms>& replicates);

double median(std::vector<double> values);

struct EIEstimate {
  std::string label;
  std::size_t observations = 0;
  double median = 0.0;
  double standard_error = 0.0;  ///< sample standard deviation of the draws
  std::vector<double> draws;
  std::array<double, 3> contributions{};
  MeasureSet measures;  ///< original series
  /// Replicate measures, aligned with draws.
  std::vector<MeasureValues> replicates;
  std::vector<FactorTerms> replicate_terms;
  /// Classic point index, ApEn normalised by the median shuffled ApEn.
  double classic = 0.0;
  /// Replicate attempts that failed and were redrawn, with reasons.
  std::vector<std::string> dropped;
};

/// Shuffle inference: measures on the original series, then for each
/// replicate the measures of shuffled returns (and the log-price path
/// rebuilt from them at ln P_0) serve as the baseline of one draw.
/// Failed replicates are redrawn from the next replicate index, up to
/// 2 * shuffles attempts in total. `threads` > 1 evaluates replicates
/// concurrently with results identical to sequential execution.
EIEstimate ei_inference(const PriceSeries& prices, const EIConfig& cfg,
                        const SeedSpec& seed, unsigned threads = 1);

}  // namespace effindex

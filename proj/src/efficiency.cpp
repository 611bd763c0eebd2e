#include "effindex/efficiency.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "effindex/error.hpp"
#include "effindex/parallel.hpp"
#include "effindex/spectral.hpp"

namespace effindex {

const char* to_string(AggregationMode mode) noexcept {
  return mode == AggregationMode::average ? "average" : "per-estimator";
}

AggregationMode parse_aggregation_mode(const std::string& text) {
  if (text == "average") return AggregationMode::average;
  if (text == "per-estimator") return AggregationMode::per_estimator;
  throw Error(ErrorCode::invalid_input,
              fmt::format("unknown aggregation mode '{}'", text));
}

void EIConfig::validate() const {
  if (shuffles < 2) {
    throw Error(ErrorCode::invalid_input, "at least 2 shuffles are required");
  }
  const double q = measures.lrd.bandwidth_exponent;
  if (!(q > 0.0 && q < 1.0)) {
    throw Error(ErrorCode::invalid_input,
                fmt::format("bandwidth exponent {} outside (0, 1)", q));
  }
  if (measures.apen.embedding < 1) {
    throw Error(ErrorCode::invalid_input, "ApEn embedding must be >= 1");
  }
  if (!(measures.apen.tolerance_factor > 0.0)) {
    throw Error(ErrorCode::invalid_input, "ApEn tolerance factor must be > 0");
  }
}

MeasureValues classic_baseline() noexcept {
  return {kEfficientHurst, kEfficientHurst, kEfficientFractal, kEfficientFractal,
          kEfficientEntropy};
}

MeasureValues MeasureSet::values() const noexcept {
  return {h_lw.hurst, h_gph.hurst, d_hw.dimension, d_g.dimension, apen.value};
}

MeasureSet estimate_measures(const LogReturnSeries& returns,
                             const LogPriceSeries& log_prices,
                             const MeasureConfig& cfg, double apen_tolerance) {
  const Periodogram pg = periodogram(returns.values());
  MeasureSet out;
  out.h_lw = local_whittle(pg, cfg.lrd);
  out.h_gph = gph(pg, cfg.lrd);
  out.d_hw = hall_wood(log_prices);
  out.d_g = genton(log_prices);
  out.apen = apen_with_tolerance(returns.values(), cfg.apen.embedding, apen_tolerance);
  return out;
}

MeasureSet estimate_measures(const PriceSeries& prices, const MeasureConfig& cfg) {
  const LogReturnSeries returns = log_returns(prices);
  const double sd = sample_stddev(returns.values());
  if (sd == 0.0) {
    throw Error(ErrorCode::degenerate_series,
                fmt::format("series '{}': constant returns", prices.id()));
  }
  return estimate_measures(returns, log_prices(prices), cfg,
                           cfg.apen.tolerance_factor * sd);
}

FactorTerms ei_terms(const MeasureValues& measured, const MeasureValues& baseline,
                     AggregationMode mode) noexcept {
  auto sq = [](double deviation, double range) {
    const double z = deviation / range;
    return z * z;
  };
  FactorTerms terms{};
  if (mode == AggregationMode::average) {
    terms[0] = sq(0.5 * (measured.h_lw + measured.h_gph) -
                      0.5 * (baseline.h_lw + baseline.h_gph),
                  kRangeHurst);
    terms[1] = sq(0.5 * (measured.d_hw + measured.d_g) -
                      0.5 * (baseline.d_hw + baseline.d_g),
                  kRangeFractal);
  } else {
    terms[0] = sq(measured.h_lw - baseline.h_lw, kRangeHurst) +
               sq(measured.h_gph - baseline.h_gph, kRangeHurst);
    terms[1] = sq(measured.d_hw - baseline.d_hw, kRangeFractal) +
               sq(measured.d_g - baseline.d_g, kRangeFractal);
  }
  terms[2] = sq(measured.apen - baseline.apen, kRangeEntropy);
  return terms;
}

double ei_point(const MeasureValues& measured, const MeasureValues& baseline,
                AggregationMode mode) noexcept {
  const FactorTerms t = ei_terms(measured, baseline, mode);
  return std::sqrt(t[0] + t[1] + t[2]);
}

double ei_classic(const MeasureValues& measured, double apen_normalizer,
                  AggregationMode mode) {
  if (!(apen_normalizer > 0.0)) {
    throw Error(ErrorCode::invalid_input, "ApEn normaliser must be positive");
  }
  MeasureValues scaled = measured;
  scaled.apen = measured.apen / apen_normalizer;
  return ei_point(scaled, classic_baseline(), mode);
}

double median(std::vector<double> values) {
  if (values.empty()) {
    throw Error(ErrorCode::invalid_input, "median of an empty set");
  }
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

std::array<double, 3> contributions(const std::vector<FactorTerms>& replicates) {
  if (replicates.empty()) {
    throw Error(ErrorCode::invalid_input, "contributions need at least one replicate");
  }
  std::array<std::vector<double>, 3> shares;
  for (const auto& terms : replicates) {
    const double total = terms[0] + terms[1] + terms[2];
    for (std::size_t f = 0; f < 3; ++f) {
      shares[f].push_back(total > 0.0 ? terms[f] / total : 1.0 / 3.0);
    }
  }
  std::array<double, 3> out{};
  double sum = 0.0;
  for (std::size_t f = 0; f < 3; ++f) {
    out[f] = median(shares[f]);
    sum += out[f];
  }
  if (sum == 0.0) {
    // Medians can all vanish when every replicate is dominated by a
    // different factor; fall back to mean shares.
    for (std::size_t f = 0; f < 3; ++f) {
      double mean = 0.0;
      for (double s : shares[f]) mean += s;
      out[f] = mean / static_cast<double>(shares[f].size());
    }
    sum = out[0] + out[1] + out[2];
  }
  for (auto& s : out) s /= sum;
  return out;
}

namespace {

struct Attempt {
  bool ok = false;
  MeasureValues values;
  std::string error;
};

}  // namespace

EIEstimate ei_inference(const PriceSeries& prices, const EIConfig& cfg,
                        const SeedSpec& seed, unsigned threads) {
  cfg.validate();
  const LogReturnSeries returns = log_returns(prices);
  const LogPriceSeries path = log_prices(prices);
  const double sd = sample_stddev(returns.values());
  if (sd == 0.0) {
    throw Error(ErrorCode::degenerate_series,
                fmt::format("series '{}': constant returns", prices.id()));
  }
  const double tolerance = cfg.measures.apen.tolerance_factor * sd;

  EIEstimate est;
  est.label = prices.id();
  est.observations = prices.size();
  est.measures = estimate_measures(returns, path, cfg.measures, tolerance);
  const MeasureValues original = est.measures.values();

  const std::size_t wanted = cfg.shuffles;
  const std::size_t max_attempts = 2 * wanted;
  std::vector<Attempt> attempts;
  std::size_t successes = 0;
  while (successes < wanted && attempts.size() < max_attempts) {
    const std::size_t start = attempts.size();
    const std::size_t batch = std::min(wanted - successes, max_attempts - start);
    attempts.resize(start + batch);
    parallel_for(batch, threads, [&](std::size_t i) {
      const std::size_t k = start + i;
      try {
        const LogReturnSeries shuffled = shuffle_returns(returns, seed, k);
        const LogPriceSeries rebuilt = rebuild_log_prices(shuffled, path[0]);
        attempts[k].values =
            estimate_measures(shuffled, rebuilt, cfg.measures, tolerance).values();
        attempts[k].ok = true;
      } catch (const Error& e) {
        attempts[k].error = fmt::format("replicate {}: {}", k, e.what());
      }
    });
    for (std::size_t k = start; k < attempts.size(); ++k) {
      if (attempts[k].ok) {
        ++successes;
      } else {
        est.dropped.push_back(attempts[k].error);
      }
    }
  }
  if (successes < wanted) {
    throw Error(ErrorCode::degenerate_series,
                fmt::format("series '{}': only {} of {} replicates succeeded in {} "
                            "attempts; last failure: {}",
                            prices.id(), successes, wanted, attempts.size(),
                            est.dropped.empty() ? "none" : est.dropped.back()));
  }

  for (const auto& attempt : attempts) {
    if (!attempt.ok) continue;
    const FactorTerms terms = ei_terms(original, attempt.values, cfg.mode);
    est.replicates.push_back(attempt.values);
    est.replicate_terms.push_back(terms);
    est.draws.push_back(std::sqrt(terms[0] + terms[1] + terms[2]));
  }

  est.median = median(est.draws);
  double mean = 0.0;
  for (double d : est.draws) mean += d;
  mean /= static_cast<double>(est.draws.size());
  double ss = 0.0;
  for (double d : est.draws) ss += (d - mean) * (d - mean);
  est.standard_error = std::sqrt(ss / static_cast<double>(est.draws.size() - 1));
  est.contributions = contributions(est.replicate_terms);

  std::vector<double> shuffled_apen;
  for (const auto& r : est.replicates) shuffled_apen.push_back(r.apen);
  const double normalizer = median(shuffled_apen);
  est.classic = normalizer > 0.0 ? ei_classic(original, normalizer, cfg.mode)
                                 : std::numeric_limits<double>::quiet_NaN();
  return est;
}

}  // namespace effindex

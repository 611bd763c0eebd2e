#include "effindex/lrd.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <fmt/format.h>

#include "effindex/error.hpp"

namespace effindex {

const char* to_string(HurstMethod method) noexcept {
  return method == HurstMethod::local_whittle ? "local-whittle" : "gph";
}

std::size_t LrdConfig::bandwidth(std::size_t n) const {
  if (!(bandwidth_exponent > 0.0 && bandwidth_exponent < 1.0)) {
    throw Error(ErrorCode::invalid_input,
                fmt::format("bandwidth exponent {} outside (0, 1)",
                            bandwidth_exponent));
  }
  auto m = static_cast<std::size_t>(
      std::floor(std::pow(static_cast<double>(n), bandwidth_exponent)));
  m = std::min(m, (n - 1) / 2);
  if (m < kMinBandwidth) {
    throw Error(ErrorCode::invalid_input,
                fmt::format("bandwidth {} below minimum {} for n = {}", m,
                            kMinBandwidth, n));
  }
  return m;
}

namespace {

void require_length(std::size_t n) {
  if (n < kMinLrdLength) {
    throw Error(ErrorCode::series_too_short,
                fmt::format("Hurst estimation needs at least {} returns, got {}",
                            kMinLrdLength, n));
  }
}

void require_nondegenerate(const Periodogram& pg, std::size_t m) {
  const bool all_zero = std::all_of(pg.ordinates.begin(), pg.ordinates.begin() + m,
                                    [](double v) { return v == 0.0; });
  if (all_zero) {
    throw Error(ErrorCode::degenerate_series,
                "periodogram vanishes over the bandwidth (constant series?)");
  }
}

}  // namespace

double whittle_objective(const Periodogram& pg, std::size_t m, double d) {
  double weighted = 0.0;
  double log_freq = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const double lambda = pg.frequencies[j];
    weighted += std::pow(lambda, 2.0 * d) * pg.ordinates[j];
    log_freq += std::log(lambda);
  }
  const double inv_m = 1.0 / static_cast<double>(m);
  return std::log(weighted * inv_m) - 2.0 * d * log_freq * inv_m;
}

HurstEstimate local_whittle(const Periodogram& pg, const LrdConfig& cfg) {
  require_length(pg.length);
  const std::size_t m = cfg.bandwidth(pg.length);
  require_nondegenerate(pg, m);

  HurstEstimate est{HurstMethod::local_whittle, 0.5, m, false};
  const double lo = -kWhittleBoxHalfWidth;
  const double hi = kWhittleBoxHalfWidth;
  auto objective = [&](double d) { return whittle_objective(pg, m, d); };

  const double f_lo = objective(lo);
  const double f_mid = objective(0.0);
  const double f_hi = objective(hi);
  if (std::max({f_lo, f_mid, f_hi}) - std::min({f_lo, f_mid, f_hi}) < 1e-12) {
    est.boundary = true;
    return est;
  }

  // Golden-section search; the objective is convex in d (log-sum-exp of
  // affine functions minus a linear term), so the bracket holds the minimum.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double e = a + inv_phi * (b - a);
  double fc = objective(c);
  double fe = objective(e);
  while (b - a > kWhittleTolerance) {
    if (fc <= fe) {
      b = e;
      e = c;
      fe = fc;
      c = b - inv_phi * (b - a);
      fc = objective(c);
    } else {
      a = c;
      c = e;
      fc = fe;
      e = a + inv_phi * (b - a);
      fe = objective(e);
    }
  }
  const double d_hat = 0.5 * (a + b);
  est.hurst = d_hat + 0.5;
  est.boundary = (d_hat - lo) < 10 * kWhittleTolerance ||
                 (hi - d_hat) < 10 * kWhittleTolerance;
  return est;
}

HurstEstimate local_whittle(const LogReturnSeries& r, const LrdConfig& cfg) {
  require_length(r.size());
  return local_whittle(periodogram(r.values()), cfg);
}

HurstEstimate gph(const Periodogram& pg, const LrdConfig& cfg) {
  require_length(pg.length);
  const std::size_t m = cfg.bandwidth(pg.length);
  require_nondegenerate(pg, m);

  std::vector<double> xs;
  std::vector<double> ys;
  xs.reserve(m);
  ys.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    if (pg.ordinates[j] <= 0.0) continue;
    const double s = std::sin(0.5 * pg.frequencies[j]);
    xs.push_back(std::log(4.0 * s * s));
    ys.push_back(std::log(pg.ordinates[j]));
  }
  if (xs.size() < kMinBandwidth) {
    throw Error(ErrorCode::degenerate_series,
                fmt::format("only {} nonzero periodogram ordinates in bandwidth",
                            xs.size()));
  }
  const double k = static_cast<double>(xs.size());
  double x_mean = 0.0;
  double y_mean = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    x_mean += xs[i];
    y_mean += ys[i];
  }
  x_mean /= k;
  y_mean /= k;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - x_mean) * (ys[i] - y_mean);
    sxx += (xs[i] - x_mean) * (xs[i] - x_mean);
  }
  const double slope = sxy / sxx;

  HurstEstimate est{HurstMethod::gph, 0.5 - slope, m, false};
  est.boundary = !(est.hurst > 0.0 && est.hurst < 1.0);
  return est;
}

HurstEstimate gph(const LogReturnSeries& r, const LrdConfig& cfg) {
  require_length(r.size());
  return gph(periodogram(r.values()), cfg);
}

}  // namespace effindex

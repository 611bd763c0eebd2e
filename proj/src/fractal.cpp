#include "effindex/fractal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <vector>

#include <fmt/format.h>

#include "effindex/error.hpp"

namespace effindex {

const char* to_string(FractalMethod method) noexcept {
  return method == FractalMethod::hall_wood ? "hall-wood" : "genton";
}

namespace {

void require_length(const LogPriceSeries& lp) {
  if (lp.size() < kMinFractalLength) {
    throw Error(ErrorCode::series_too_short,
                fmt::format("fractal dimension needs at least {} points, got {}",
                            kMinFractalLength, lp.size()));
  }
}

FractalDimEstimate finish(FractalMethod method, double raw) {
  FractalDimEstimate est;
  est.method = method;
  est.raw = raw;
  est.dimension = std::clamp(raw, 1.0, 2.0);
  est.clamped = est.dimension != raw;
  return est;
}

// Pairs i < j of sorted data with x[j] - x[i] <= t.
std::uint64_t count_within(const std::vector<double>& sorted, double t) {
  std::uint64_t count = 0;
  std::size_t i = 0;
  for (std::size_t j = 1; j < sorted.size(); ++j) {
    while (sorted[j] - sorted[i] > t) ++i;
    count += j - i;
  }
  return count;
}

}  // namespace

double qn_scale(std::span<const double> x) {
  const std::size_t p = x.size();
  if (p < 2) {
    throw Error(ErrorCode::invalid_input, "Qn needs at least two values");
  }
  const std::uint64_t h = p / 2 + 1;
  const std::uint64_t k = h * (h - 1) / 2;

  std::vector<double> sorted(x.begin(), x.end());
  std::sort(sorted.begin(), sorted.end());

  if (count_within(sorted, 0.0) >= k) return 0.0;

  // Invariant: count(lo) < k <= count(hi).
  double lo = 0.0;
  double hi = sorted.back() - sorted.front();
  std::uint64_t count_lo = count_within(sorted, lo);
  std::uint64_t count_hi = count_within(sorted, hi);
  const std::uint64_t enumerate_limit = 8 * p;
  while (count_hi - count_lo > enumerate_limit) {
    const double mid = lo + 0.5 * (hi - lo);
    if (!(mid > lo && mid < hi)) return kQnConsistency * hi;
    const std::uint64_t count_mid = count_within(sorted, mid);
    if (count_mid >= k) {
      hi = mid;
      count_hi = count_mid;
    } else {
      lo = mid;
      count_lo = count_mid;
    }
  }

  // Collect every distance in (lo, hi] and select among them.
  std::vector<double> window;
  window.reserve(count_hi - count_lo);
  std::size_t first_within_lo = 0;
  std::size_t first_within_hi = 0;
  for (std::size_t j = 1; j < p; ++j) {
    while (sorted[j] - sorted[first_within_hi] > hi) ++first_within_hi;
    while (first_within_lo < j && sorted[j] - sorted[first_within_lo] > lo) ++first_within_lo;
    for (std::size_t i = first_within_hi; i < first_within_lo; ++i) {
      window.push_back(sorted[j] - sorted[i]);
    }
  }
  const auto offset = static_cast<std::ptrdiff_t>(k - count_lo - 1);
  std::nth_element(window.begin(), window.begin() + offset, window.end());
  return kQnConsistency * window[static_cast<std::size_t>(offset)];
}

FractalDimEstimate hall_wood(const LogPriceSeries& lp) {
  require_length(lp);
  const std::size_t increments = lp.size() - 1;
  double mean_abs[2] = {0.0, 0.0};
  for (std::size_t lag = 1; lag <= 2; ++lag) {
    const std::size_t blocks = increments / lag;
    double total = 0.0;
    for (std::size_t i = 1; i <= blocks; ++i) {
      total += std::abs(lp[i * lag] - lp[(i - 1) * lag]);
    }
    mean_abs[lag - 1] = total / static_cast<double>(blocks);
  }
  if (mean_abs[0] == 0.0 || mean_abs[1] == 0.0) {
    throw Error(ErrorCode::degenerate_path,
                "Hall-Wood: path has no variation at lag 1 or 2");
  }
  // Increments of a straight line agree only up to the rounding of the
  // stored levels; a lag-2 mean within that rounding of twice the lag-1
  // mean is read as exactly twice.
  double scale = 0.0;
  for (double v : lp.values()) scale = std::max(scale, std::abs(v));
  double ratio = mean_abs[1] / mean_abs[0];
  const double roundoff = 8.0 * std::numeric_limits<double>::epsilon() * scale / mean_abs[0];
  if (std::abs(ratio / 2.0 - 1.0) <= roundoff) ratio = 2.0;
  const double slope = std::log(ratio) / std::numbers::ln2;
  return finish(FractalMethod::hall_wood, 2.0 - slope);
}

FractalDimEstimate genton(const LogPriceSeries& lp) {
  require_length(lp);
  double variogram[2] = {0.0, 0.0};
  std::vector<double> diffs;
  diffs.reserve(lp.size());
  for (std::size_t lag = 1; lag <= 2; ++lag) {
    diffs.clear();
    for (std::size_t i = 0; i + lag < lp.size(); ++i) {
      diffs.push_back(lp[i + lag] - lp[i]);
    }
    double qn = qn_scale(diffs);
    // Round-off spread of a straight line counts as no spread.
    double largest = 0.0;
    for (double d : diffs) largest = std::max(largest, std::abs(d));
    if (qn <= 64.0 * std::numeric_limits<double>::epsilon() * largest) qn = 0.0;
    variogram[lag - 1] = qn * qn;
  }
  if (variogram[0] == 0.0 || variogram[1] == 0.0) {
    throw Error(ErrorCode::degenerate_path,
                "Genton: Qn of increments vanishes at lag 1 or 2");
  }
  const double slope =
      std::log(variogram[1] / variogram[0]) / (2.0 * std::numbers::ln2);
  return finish(FractalMethod::genton, 2.0 - slope);
}

}  // namespace effindex

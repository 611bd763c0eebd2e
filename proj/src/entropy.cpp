#include "effindex/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <fmt/format.h>

#include "effindex/error.hpp"

namespace effindex {

double sample_stddev(std::span<const double> x) {
  if (x.size() < 2) return 0.0;
  if (std::all_of(x.begin(), x.end(), [&](double v) { return v == x[0]; })) {
    return 0.0;
  }
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(x.size() - 1));
}

ApEnEstimate apen_with_tolerance(std::span<const double> x, std::size_t embedding,
                                 double tolerance) {
  const std::size_t n = x.size();
  const std::size_t m = embedding;
  if (m < 1) throw Error(ErrorCode::invalid_input, "ApEn embedding must be >= 1");
  if (n < m + 2) {
    throw Error(ErrorCode::series_too_short,
                fmt::format("ApEn with m = {} needs at least {} values, got {}", m,
                            m + 2, n));
  }
  if (!(tolerance >= 0.0)) {
    throw Error(ErrorCode::invalid_input, "ApEn tolerance must be nonnegative");
  }

  const std::size_t short_count = n - m + 1;  // templates of length m
  const std::size_t long_count = n - m;       // templates of length m + 1
  // Self-matches included.
  std::vector<std::size_t> short_matches(short_count, 1);
  std::vector<std::size_t> long_matches(long_count, 1);

  for (std::size_t i = 0; i < short_count; ++i) {
    for (std::size_t j = i + 1; j < short_count; ++j) {
      bool match = true;
      for (std::size_t k = 0; k < m; ++k) {
        if (std::abs(x[i + k] - x[j + k]) > tolerance) {
          match = false;
          break;
        }
      }
      if (!match) continue;
      ++short_matches[i];
      ++short_matches[j];
      if (j < long_count && std::abs(x[i + m] - x[j + m]) <= tolerance) {
        ++long_matches[i];
        ++long_matches[j];
      }
    }
  }

  auto phi = [](const std::vector<std::size_t>& counts) {
    const double total = static_cast<double>(counts.size());
    double sum = 0.0;
    for (std::size_t c : counts) sum += std::log(static_cast<double>(c) / total);
    return sum / total;
  };
  return ApEnEstimate{phi(short_matches) - phi(long_matches)};
}

ApEnEstimate apen(const LogReturnSeries& r, const ApEnConfig& cfg) {
  if (!(cfg.tolerance_factor > 0.0)) {
    throw Error(ErrorCode::invalid_input, "ApEn tolerance factor must be > 0");
  }
  if (r.size() < cfg.embedding + 2) {
    throw Error(ErrorCode::series_too_short,
                fmt::format("ApEn with m = {} needs at least {} values, got {}",
                            cfg.embedding, cfg.embedding + 2, r.size()));
  }
  const double sd = sample_stddev(r.values());
  if (sd == 0.0) {
    throw Error(ErrorCode::degenerate_series,
                "ApEn undefined for a series with zero standard deviation");
  }
  return apen_with_tolerance(r.values(), cfg.embedding, cfg.tolerance_factor * sd);
}

}  // namespace effindex

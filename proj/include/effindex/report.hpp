#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "effindex/efficiency.hpp"

namespace effindex {

/// Everything needed to reproduce a ranking besides the data itself.
struct RunInfo {
  EIConfig config;
  std::uint64_t seed = 0;
  std::string policy = "reject";

  /// Stable one-line description embedded in every output.
  std::string fingerprint() const;

  /// Inverse of fingerprint(). Throws parse_error.
  static RunInfo from_fingerprint(const std::string& text);
};

struct RankingRow {
  std::size_t rank = 0;
  std::string label;
  double ei_median = 0.0;
  double ei_se = 0.0;
  double h_lw = 0.0;
  double h_gph = 0.0;
  double d_hw = 0.0;
  double d_g = 0.0;
  double apen = 0.0;
  std::array<double, 3> contributions{};  ///< Hurst, fractal, entropy
  std::size_t n_obs = 0;
  std::size_t n_shuffles = 0;
  std::uint64_t seed = 0;
  AggregationMode mode = AggregationMode::average;
  bool tie = false;  ///< shares its median with a neighbour
};

struct RankingReport {
  RunInfo info;
  std::vector<RankingRow> rows;
  /// Series excluded from the ranking and why.
  std::vector<std::string> diagnostics;
};

/// Ascending median EI, rank 1 most efficient. Equal medians are ordered by
/// label and flagged. Throws empty_report when `estimates` is empty.
RankingReport rank(const std::vector<EIEstimate>& estimates, const RunInfo& info);

}  // namespace effindex

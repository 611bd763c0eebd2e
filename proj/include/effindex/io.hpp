#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "effindex/efficiency.hpp"
#include "effindex/report.hpp"
#include "effindex/series.hpp"

namespace effindex {

enum class GapPolicy { reject, forward_fill };

const char* to_string(GapPolicy policy) noexcept;
GapPolicy parse_gap_policy(const std::string& text);

inline constexpr std::size_t kMinPanelLength = 64;

struct SeriesProvenance {
  std::string label;
  /// 1-based file lines whose missing cell was forward-filled.
  std::vector<std::size_t> filled_lines;
};

/// Price columns sharing one date axis. Series that fail validation are
/// listed in `excluded` with a reason in `diagnostics`; the rest are in
/// `series`, aligned with `provenance`.
struct PricePanel {
  std::vector<Date> timestamps;
  std::vector<PriceSeries> series;
  std::vector<SeriesProvenance> provenance;
  std::vector<std::string> excluded;
  std::vector<std::string> diagnostics;
};

/// Header row, then one row per date: ISO-8601 date (YYYY-MM-DD) followed by
/// one price per series. Empty, NA and NaN cells are missing. File-level
/// problems (no header, duplicate labels, bad or non-increasing dates) throw
/// parse_error; per-series problems only exclude that series.
PricePanel ingest_csv(std::istream& in, GapPolicy policy);
PricePanel ingest_csv(const std::filesystem::path& path, GapPolicy policy);

std::string format_date(Date date);
Date parse_date(std::string_view text);

enum class ReportFormat { csv, json, text };

ReportFormat parse_report_format(const std::string& text);

/// csv: rank,label,ei_median,ei_se,h_lw,h_gph,d_hw,d_g,apen,contrib_h,
/// contrib_d,contrib_ae,n_obs,n_shuffles,seed,mode after a '#' fingerprint
/// line. text: "rank  label  median±se" with four decimals.
std::string emit_ranking(const RankingReport& report, ReportFormat format);

/// Inverse of the csv form of emit_ranking. Throws parse_error.
RankingReport parse_ranking_csv(std::string_view text);

/// One row per series in rank order: rank,label,contrib_h,contrib_d,contrib_ae.
std::string emit_contributions(const RankingReport& report);

/// Raw measures of one series without shuffling.
std::string emit_measures(const std::string& label, std::size_t observations,
                          const MeasureSet& measures, const RunInfo& info,
                          ReportFormat format);

}  // namespace effindex

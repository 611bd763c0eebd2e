#include <algorithm>
#include <charconv>

#include <fmt/format.h>
#include <json.hpp>

#include "effindex/error.hpp"
#include "effindex/io.hpp"

namespace effindex {

namespace {

constexpr const char* kRankingColumns =
    "rank,label,ei_median,ei_se,h_lw,h_gph,d_hw,d_g,apen,contrib_h,contrib_d,"
    "contrib_ae,n_obs,n_shuffles,seed,mode";
constexpr const char* kContributionColumns = "rank,label,contrib_h,contrib_d,contrib_ae";

std::string comment_line(const RankingReport& report) {
  return fmt::format("# {}\n", report.info.fingerprint());
}

std::string emit_csv(const RankingReport& report) {
  std::string out = comment_line(report);
  out += kRankingColumns;
  out += '\n';
  for (const auto& r : report.rows) {
    // "{}" is the shortest representation that parses back to the same double.
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", r.rank,
                       r.label, r.ei_median, r.ei_se, r.h_lw, r.h_gph, r.d_hw, r.d_g,
                       r.apen, r.contributions[0], r.contributions[1],
                       r.contributions[2], r.n_obs, r.n_shuffles, r.seed,
                       to_string(r.mode));
  }
  return out;
}

std::string emit_text(const RankingReport& report) {
  std::size_t rank_width = 1;
  std::size_t label_width = 1;
  for (const auto& r : report.rows) {
    rank_width = std::max(rank_width, std::to_string(r.rank).size());
    label_width = std::max(label_width, r.label.size());
  }
  std::string out = comment_line(report);
  out += "# rank  label  EI median±standard error\n";
  for (const auto& r : report.rows) {
    out += fmt::format("{:>{}}  {:<{}}  {:.4f}±{:.4f}{}\n", r.rank, rank_width, r.label,
                       label_width, r.ei_median, r.ei_se, r.tie ? "  (tie)" : "");
  }
  for (const auto& d : report.diagnostics) out += fmt::format("# excluded: {}\n", d);
  return out;
}

nlohmann::json config_json(const RunInfo& info) {
  return {
      {"bandwidth_exponent", info.config.measures.lrd.bandwidth_exponent},
      {"apen_m", info.config.measures.apen.embedding},
      {"apen_r", info.config.measures.apen.tolerance_factor},
      {"mode", to_string(info.config.mode)},
      {"shuffles", info.config.shuffles},
      {"seed", info.seed},
      {"policy", info.policy},
      {"fingerprint", info.fingerprint()},
  };
}

std::string emit_json(const RankingReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : report.rows) {
    rows.push_back({
        {"rank", r.rank},
        {"label", r.label},
        {"ei_median", r.ei_median},
        {"ei_se", r.ei_se},
        {"h_lw", r.h_lw},
        {"h_gph", r.h_gph},
        {"d_hw", r.d_hw},
        {"d_g", r.d_g},
        {"apen", r.apen},
        {"contrib_h", r.contributions[0]},
        {"contrib_d", r.contributions[1]},
        {"contrib_ae", r.contributions[2]},
        {"n_obs", r.n_obs},
        {"n_shuffles", r.n_shuffles},
        {"seed", r.seed},
        {"mode", to_string(r.mode)},
        {"tie", r.tie},
    });
  }
  const nlohmann::json doc = {
      {"format", "effindex-ranking"},
      {"version", 1},
      {"config", config_json(report.info)},
      {"rows", std::move(rows)},
      {"diagnostics", report.diagnostics},
  };
  return doc.dump(2) + "\n";
}

template <class T>
T parse_number(std::string_view cell, std::size_t line_no, const char* column) {
  T value{};
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) {
    throw Error(ErrorCode::parse_error,
                fmt::format("line {}: bad {} value '{}'", line_no, column, cell));
  }
  return value;
}

}  // namespace

ReportFormat parse_report_format(const std::string& text) {
  if (text == "csv") return ReportFormat::csv;
  if (text == "json") return ReportFormat::json;
  if (text == "text" || text == "text-table") return ReportFormat::text;
  throw Error(ErrorCode::invalid_input, fmt::format("unknown format '{}'", text));
}

std::string emit_ranking(const RankingReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::csv: return emit_csv(report);
    case ReportFormat::json: return emit_json(report);
    case ReportFormat::text: return emit_text(report);
  }
  return {};
}

RankingReport parse_ranking_csv(std::string_view text) {
  RankingReport report;
  bool have_info = false;
  bool have_header = false;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (!have_info) {
        std::string_view body = line.substr(1);
        while (!body.empty() && body.front() == ' ') body.remove_prefix(1);
        report.info = RunInfo::from_fingerprint(std::string(body));
        have_info = true;
      }
      continue;
    }
    if (!have_header) {
      if (line != kRankingColumns) {
        throw Error(ErrorCode::parse_error,
                    fmt::format("line {}: unexpected ranking header", line_no));
      }
      have_header = true;
      continue;
    }
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    for (;;) {
      const std::size_t comma = line.find(',', start);
      cells.push_back(line.substr(start, comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (cells.size() != 16) {
      throw Error(ErrorCode::parse_error,
                  fmt::format("line {}: expected 16 cells, got {}", line_no,
                              cells.size()));
    }
    RankingRow r;
    r.rank = parse_number<std::size_t>(cells[0], line_no, "rank");
    r.label = std::string(cells[1]);
    r.ei_median = parse_number<double>(cells[2], line_no, "ei_median");
    r.ei_se = parse_number<double>(cells[3], line_no, "ei_se");
    r.h_lw = parse_number<double>(cells[4], line_no, "h_lw");
    r.h_gph = parse_number<double>(cells[5], line_no, "h_gph");
    r.d_hw = parse_number<double>(cells[6], line_no, "d_hw");
    r.d_g = parse_number<double>(cells[7], line_no, "d_g");
    r.apen = parse_number<double>(cells[8], line_no, "apen");
    r.contributions[0] = parse_number<double>(cells[9], line_no, "contrib_h");
    r.contributions[1] = parse_number<double>(cells[10], line_no, "contrib_d");
    r.contributions[2] = parse_number<double>(cells[11], line_no, "contrib_ae");
    r.n_obs = parse_number<std::size_t>(cells[12], line_no, "n_obs");
    r.n_shuffles = parse_number<std::size_t>(cells[13], line_no, "n_shuffles");
    r.seed = parse_number<std::uint64_t>(cells[14], line_no, "seed");
    r.mode = parse_aggregation_mode(std::string(cells[15]));
    report.rows.push_back(std::move(r));
  }
  if (!have_header) throw Error(ErrorCode::parse_error, "ranking csv has no header");
  if (!have_info) throw Error(ErrorCode::parse_error, "ranking csv has no fingerprint line");
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    if (report.rows[i].ei_median == report.rows[i - 1].ei_median) {
      report.rows[i].tie = report.rows[i - 1].tie = true;
    }
  }
  return report;
}

std::string emit_contributions(const RankingReport& report) {
  std::string out = comment_line(report);
  out += kContributionColumns;
  out += '\n';
  for (const auto& r : report.rows) {
    out += fmt::format("{},{},{},{},{}\n", r.rank, r.label, r.contributions[0],
                       r.contributions[1], r.contributions[2]);
  }
  return out;
}

std::string emit_measures(const std::string& label, std::size_t observations,
                          const MeasureSet& m, const RunInfo& info,
                          ReportFormat format) {
  switch (format) {
    case ReportFormat::csv: {
      std::string out = fmt::format("# {}\n", info.fingerprint());
      out += "label,n_obs,h_lw,h_gph,d_hw,d_g,apen,bandwidth,h_lw_boundary,"
             "h_gph_boundary,d_hw_clamped,d_g_clamped\n";
      out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{}\n", label, observations,
                         m.h_lw.hurst, m.h_gph.hurst, m.d_hw.dimension, m.d_g.dimension,
                         m.apen.value, m.h_lw.bandwidth, int(m.h_lw.boundary),
                         int(m.h_gph.boundary), int(m.d_hw.clamped), int(m.d_g.clamped));
      return out;
    }
    case ReportFormat::json: {
      const nlohmann::json doc = {
          {"format", "effindex-measures"},
          {"version", 1},
          {"config", config_json(info)},
          {"label", label},
          {"n_obs", observations},
          {"bandwidth", m.h_lw.bandwidth},
          {"h_lw", {{"value", m.h_lw.hurst}, {"boundary", m.h_lw.boundary}}},
          {"h_gph", {{"value", m.h_gph.hurst}, {"boundary", m.h_gph.boundary}}},
          {"d_hw", {{"value", m.d_hw.dimension}, {"raw", m.d_hw.raw}, {"clamped", m.d_hw.clamped}}},
          {"d_g", {{"value", m.d_g.dimension}, {"raw", m.d_g.raw}, {"clamped", m.d_g.clamped}}},
          {"apen", m.apen.value},
      };
      return doc.dump(2) + "\n";
    }
    case ReportFormat::text: {
      std::string out = fmt::format("# {}\n", info.fingerprint());
      out += fmt::format("series        {} ({} observations)\n", label, observations);
      out += fmt::format("H local Whittle  {:.4f}{}\n", m.h_lw.hurst,
                         m.h_lw.boundary ? "  (boundary)" : "");
      out += fmt::format("H GPH            {:.4f}{}\n", m.h_gph.hurst,
                         m.h_gph.boundary ? "  (boundary)" : "");
      out += fmt::format("D Hall-Wood      {:.4f}{}\n", m.d_hw.dimension,
                         m.d_hw.clamped ? "  (clamped)" : "");
      out += fmt::format("D Genton         {:.4f}{}\n", m.d_g.dimension,
                         m.d_g.clamped ? "  (clamped)" : "");
      out += fmt::format("ApEn             {:.4f}\n", m.apen.value);
      out += fmt::format("bandwidth m      {}\n", m.h_lw.bandwidth);
      return out;
    }
  }
  return {};
}

}  // namespace effindex

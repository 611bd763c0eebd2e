#include "effindex/report.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

#include "effindex/error.hpp"

namespace effindex {

std::string RunInfo::fingerprint() const {
  return fmt::format(
      "effindex-v1;bandwidth_exponent={};apen_m={};apen_r={};mode={};"
      "shuffles={};seed={};policy={}",
      config.measures.lrd.bandwidth_exponent, config.measures.apen.embedding,
      config.measures.apen.tolerance_factor, to_string(config.mode),
      config.shuffles, seed, policy);
}

RunInfo RunInfo::from_fingerprint(const std::string& text) {
  auto bad = [&](const std::string& why) {
    return Error(ErrorCode::parse_error,
                 fmt::format("bad configuration fingerprint '{}': {}", text, why));
  };
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t semi = text.find(';', start);
    parts.push_back(text.substr(start, semi - start));
    if (semi == std::string::npos) break;
    start = semi + 1;
  }
  if (parts.empty() || parts[0] != "effindex-v1") throw bad("unknown version tag");
  RunInfo info;
  std::size_t seen = 0;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const std::size_t eq = parts[i].find('=');
    if (eq == std::string::npos) throw bad("expected key=value");
    const std::string key = parts[i].substr(0, eq);
    const std::string value = parts[i].substr(eq + 1);
    try {
      if (key == "bandwidth_exponent") {
        info.config.measures.lrd.bandwidth_exponent = std::stod(value);
      } else if (key == "apen_m") {
        info.config.measures.apen.embedding = std::stoul(value);
      } else if (key == "apen_r") {
        info.config.measures.apen.tolerance_factor = std::stod(value);
      } else if (key == "mode") {
        info.config.mode = parse_aggregation_mode(value);
      } else if (key == "shuffles") {
        info.config.shuffles = std::stoul(value);
      } else if (key == "seed") {
        info.seed = std::stoull(value);
      } else if (key == "policy") {
        info.policy = value;
      } else {
        throw bad("unknown key " + key);
      }
    } catch (const std::logic_error&) {
      throw bad("invalid value for " + key);
    }
    ++seen;
  }
  if (seen != 7) throw bad("expected 7 fields");
  return info;
}

RankingReport rank(const std::vector<EIEstimate>& estimates, const RunInfo& info) {
  if (estimates.empty()) {
    throw Error(ErrorCode::empty_report, "no successful estimates to rank");
  }
  std::vector<std::size_t> order(estimates.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& ea = estimates[a];
    const auto& eb = estimates[b];
    if (ea.median != eb.median) return ea.median < eb.median;
    return ea.label < eb.label;
  });

  RankingReport report;
  report.info = info;
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const EIEstimate& e = estimates[order[pos]];
    const MeasureValues m = e.measures.values();
    RankingRow row;
    row.rank = pos + 1;
    row.label = e.label;
    row.ei_median = e.median;
    row.ei_se = e.standard_error;
    row.h_lw = m.h_lw;
    row.h_gph = m.h_gph;
    row.d_hw = m.d_hw;
    row.d_g = m.d_g;
    row.apen = m.apen;
    row.contributions = e.contributions;
    row.n_obs = e.observations;
    row.n_shuffles = e.draws.size();
    row.seed = info.seed;
    row.mode = info.config.mode;
    report.rows.push_back(std::move(row));
  }
  for (std::size_t pos = 1; pos < report.rows.size(); ++pos) {
    if (report.rows[pos].ei_median == report.rows[pos - 1].ei_median) {
      report.rows[pos].tie = true;
      report.rows[pos - 1].tie = true;
    }
  }
  return report;
}

}  // namespace effindex

// Command-line front end: analyze, estimate, contributions, synthesize.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "effindex/efficiency.hpp"
#include "effindex/error.hpp"
#include "effindex/io.hpp"
#include "effindex/parallel.hpp"
#include "effindex/report.hpp"
#include "effindex/synth.hpp"

namespace {

using namespace effindex;

constexpr int kExitClean = 0;
constexpr int kExitFailure = 1;
constexpr int kExitPartial = 2;

struct MeasureOptions {
  double bandwidth_exponent = 0.6;
  std::size_t apen_m = 2;
  double apen_r = 0.2;
  std::string policy = "reject";
  std::string format = "text";
  std::string output;
};

struct AnalyzeOptions {
  std::string input;
  std::size_t shuffles = 100;
  std::uint64_t seed = 20141130;
  std::string mode = "average";
  std::string contributions_out;
  unsigned threads = 1;
};

struct EstimateOptions {
  std::string input;
  std::string series;
};

struct ContributionsOptions {
  std::string input;
  std::string output;
};

struct SynthOptions {
  std::string kind = "fgn";
  std::vector<double> hurst{0.5};
  std::size_t length = 1430;
  std::size_t series = 1;
  double sigma = 0.01;
  double initial = 100.0;
  std::uint64_t seed = 1;
  std::string output;
};

void add_measure_flags(CLI::App* cmd, MeasureOptions& opt) {
  cmd->add_option("--bandwidth-exponent", opt.bandwidth_exponent,
                  "Bandwidth m = floor(n^q) for the Hurst estimators")
      ->envname("EFFINDEX_BANDWIDTH_EXPONENT")
      ->capture_default_str();
  cmd->add_option("--apen-m", opt.apen_m, "ApEn embedding dimension")
      ->envname("EFFINDEX_APEN_M")
      ->capture_default_str();
  cmd->add_option("--apen-r", opt.apen_r, "ApEn tolerance as a multiple of the sd")
      ->envname("EFFINDEX_APEN_R")
      ->capture_default_str();
  cmd->add_option("--policy", opt.policy, "Missing observations: reject or ffill")
      ->envname("EFFINDEX_POLICY")
      ->check(CLI::IsMember({"reject", "ffill"}))
      ->capture_default_str();
  cmd->add_option("--format", opt.format, "Output format: text, csv or json")
      ->envname("EFFINDEX_FORMAT")
      ->check(CLI::IsMember({"text", "csv", "json"}))
      ->capture_default_str();
  cmd->add_option("-o,--output", opt.output, "Write the report here instead of stdout")
      ->envname("EFFINDEX_OUTPUT");
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::invalid_input, fmt::format("cannot write '{}'", path));
  out << content;
}

RunInfo make_run_info(const MeasureOptions& m, std::size_t shuffles, std::uint64_t seed,
                      const std::string& mode) {
  RunInfo info;
  info.config.mode = parse_aggregation_mode(mode);
  info.config.shuffles = shuffles;
  info.config.measures.lrd.bandwidth_exponent = m.bandwidth_exponent;
  info.config.measures.apen.embedding = m.apen_m;
  info.config.measures.apen.tolerance_factor = m.apen_r;
  info.seed = seed;
  info.policy = m.policy;
  return info;
}

int run_analyze(const MeasureOptions& m, const AnalyzeOptions& a) {
  const RunInfo info = make_run_info(m, a.shuffles, a.seed, a.mode);
  info.config.validate();
  const PricePanel panel = ingest_csv(a.input, parse_gap_policy(m.policy));
  for (const auto& d : panel.diagnostics) std::cerr << d << '\n';

  const std::size_t count = panel.series.size();
  std::vector<std::optional<EIEstimate>> results(count);
  std::vector<std::string> failures(count);
  // One series: spread its replicates; several: spread the series.
  const unsigned outer = count > 1 ? a.threads : 1;
  const unsigned inner = count > 1 ? 1 : a.threads;
  parallel_for(count, outer, [&](std::size_t i) {
    try {
      results[i] = ei_inference(panel.series[i], info.config, SeedSpec{a.seed}, inner);
    } catch (const Error& e) {
      failures[i] = fmt::format("series '{}' excluded: {}", panel.series[i].id(), e.what());
    }
  });

  std::vector<EIEstimate> estimates;
  std::vector<std::string> diagnostics = panel.diagnostics;
  for (std::size_t i = 0; i < count; ++i) {
    if (results[i]) {
      estimates.push_back(std::move(*results[i]));
    } else {
      std::cerr << failures[i] << '\n';
      diagnostics.push_back(failures[i]);
    }
  }
  if (estimates.empty()) {
    std::cerr << "no series could be ranked\n";
    return kExitFailure;
  }
  RankingReport report = rank(estimates, info);
  report.diagnostics = std::move(diagnostics);
  write_output(m.output, emit_ranking(report, parse_report_format(m.format)));
  if (!a.contributions_out.empty()) {
    write_output(a.contributions_out, emit_contributions(report));
  }
  const bool partial = !panel.excluded.empty() || estimates.size() < count;
  return partial ? kExitPartial : kExitClean;
}

int run_estimate(const MeasureOptions& m, const EstimateOptions& e) {
  const RunInfo info = make_run_info(m, 100, 0, "average");
  const PricePanel panel = ingest_csv(e.input, parse_gap_policy(m.policy));
  for (const auto& d : panel.diagnostics) std::cerr << d << '\n';
  const PriceSeries* chosen = nullptr;
  for (const auto& s : panel.series) {
    if (e.series.empty() || s.id() == e.series) {
      chosen = &s;
      break;
    }
  }
  if (chosen == nullptr) {
    std::cerr << (e.series.empty() ? std::string("no usable series in input")
                                   : fmt::format("series '{}' not available", e.series))
              << '\n';
    return kExitFailure;
  }
  const MeasureSet measures = estimate_measures(*chosen, info.config.measures);
  write_output(m.output, emit_measures(chosen->id(), chosen->size(), measures, info,
                                       parse_report_format(m.format)));
  return kExitClean;
}

int run_contributions(const ContributionsOptions& c) {
  std::ifstream in(c.input, std::ios::binary);
  if (!in) throw Error(ErrorCode::parse_error, fmt::format("cannot open '{}'", c.input));
  std::stringstream buffer;
  buffer << in.rdbuf();
  const RankingReport report = parse_ranking_csv(buffer.str());
  write_output(c.output, emit_contributions(report));
  return kExitClean;
}

int run_synthesize(const SynthOptions& s) {
  if (s.length < 2) throw Error(ErrorCode::invalid_input, "--length must be >= 2");
  const SeedSpec base{s.seed};
  std::vector<std::vector<double>> prices;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < s.series; ++i) {
    const SeedSpec seed{base.replicate_seed(i)};
    const double hurst = s.hurst[i % s.hurst.size()];
    std::vector<double> returns;
    if (s.kind == "fgn") {
      returns = gen_fgn(FgnSpec{hurst, s.length - 1, s.sigma}, seed);
    } else if (s.kind == "iid") {
      returns = gen_iid_gaussian(s.length - 1, s.sigma, seed);
    } else {
      returns = gen_logistic_map(s.length - 1, 4.0, 1000, seed);
      for (auto& r : returns) r = s.sigma * (r - 0.5);
    }
    labels.push_back(fmt::format("S{:03d}", i + 1));
    const PriceSeries series = prices_from_returns(labels.back(), returns, s.initial);
    prices.emplace_back(series.values().begin(), series.values().end());
  }
  const PriceSeries axis("axis", std::vector<double>(s.length, 1.0));
  std::string out = "date";
  for (const auto& l : labels) out += "," + l;
  out += '\n';
  for (std::size_t t = 0; t < s.length; ++t) {
    out += format_date(axis.timestamps()[t]);
    for (const auto& p : prices) out += fmt::format(",{}", p[t]);
    out += '\n';
  }
  write_output(s.output, out);
  return kExitClean;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Efficiency Index of price series with shuffle-based inference"};
  app.require_subcommand(1);

  MeasureOptions analyze_measures;
  AnalyzeOptions analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "Rank a price panel by median EI");
  analyze_cmd->add_option("input", analyze.input, "Price panel CSV")->required();
  add_measure_flags(analyze_cmd, analyze_measures);
  analyze_cmd->add_option("--shuffles", analyze.shuffles, "Shuffled replicates per series")
      ->envname("EFFINDEX_SHUFFLES")
      ->capture_default_str();
  analyze_cmd->add_option("--seed", analyze.seed, "Base seed of the replicate streams")
      ->envname("EFFINDEX_SEED")
      ->capture_default_str();
  analyze_cmd->add_option("--mode", analyze.mode, "Aggregation: average or per-estimator")
      ->envname("EFFINDEX_MODE")
      ->check(CLI::IsMember({"average", "per-estimator"}))
      ->capture_default_str();
  analyze_cmd->add_option("--contributions-out", analyze.contributions_out,
                          "Also write the factor contribution CSV here")
      ->envname("EFFINDEX_CONTRIBUTIONS_OUT");
  analyze_cmd->add_option("--threads", analyze.threads, "Worker threads")
      ->envname("EFFINDEX_THREADS")
      ->capture_default_str();

  MeasureOptions estimate_measures_opt;
  EstimateOptions estimate;
  auto* estimate_cmd =
      app.add_subcommand("estimate", "Raw measures of one series, no shuffling");
  estimate_cmd->add_option("input", estimate.input, "Price panel CSV")->required();
  estimate_cmd->add_option("--series", estimate.series, "Label (default: first usable)")
      ->envname("EFFINDEX_SERIES_LABEL");
  add_measure_flags(estimate_cmd, estimate_measures_opt);

  ContributionsOptions contrib;
  auto* contrib_cmd = app.add_subcommand(
      "contributions", "Factor contributions from a ranking CSV, in rank order");
  contrib_cmd->add_option("input", contrib.input, "Ranking CSV from analyze")->required();
  contrib_cmd->add_option("-o,--output", contrib.output, "Output path (default stdout)")
      ->envname("EFFINDEX_OUTPUT");

  SynthOptions synth;
  auto* synth_cmd = app.add_subcommand("synthesize", "Write a synthetic price panel CSV");
  synth_cmd->add_option("--kind", synth.kind, "Return process: fgn, iid or logistic")
      ->envname("EFFINDEX_KIND")
      ->check(CLI::IsMember({"fgn", "iid", "logistic"}))
      ->capture_default_str();
  synth_cmd->add_option("--hurst", synth.hurst, "Hurst exponents, cycled over series")
      ->envname("EFFINDEX_HURST")
      ->delimiter(',')
      ->capture_default_str();
  synth_cmd->add_option("--length", synth.length, "Prices per series")
      ->envname("EFFINDEX_LENGTH")
      ->capture_default_str();
  synth_cmd->add_option("--series", synth.series, "Number of series")
      ->envname("EFFINDEX_SERIES")
      ->capture_default_str();
  synth_cmd->add_option("--sigma", synth.sigma, "Return scale")
      ->envname("EFFINDEX_SIGMA")
      ->capture_default_str();
  synth_cmd->add_option("--initial-price", synth.initial, "First price")
      ->envname("EFFINDEX_INITIAL_PRICE")
      ->capture_default_str();
  synth_cmd->add_option("--seed", synth.seed, "Base seed")
      ->envname("EFFINDEX_SEED")
      ->capture_default_str();
  synth_cmd->add_option("-o,--output", synth.output, "Output path (default stdout)")
      ->envname("EFFINDEX_OUTPUT");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitClean : kExitFailure;
  }

  try {
    if (*analyze_cmd) return run_analyze(analyze_measures, analyze);
    if (*estimate_cmd) return run_estimate(estimate_measures_opt, estimate);
    if (*contrib_cmd) return run_contributions(contrib);
    if (*synth_cmd) return run_synthesize(synth);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}

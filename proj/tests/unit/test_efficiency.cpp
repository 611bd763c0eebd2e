#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "effindex/efficiency.hpp"
#include "effindex/error.hpp"
#include "effindex/report.hpp"
#include "effindex/synth.hpp"
#include "oracles.hpp"

using namespace effindex;

namespace {

PriceSeries iid_prices(std::uint64_t seed, std::size_t n = 1430) {
  return prices_from_returns("iid", gen_iid_gaussian(n - 1, 0.01, SeedSpec{seed}));
}

PriceSeries fgn_prices(double hurst, std::uint64_t seed, std::size_t n = 1430) {
  return prices_from_returns("fgn", gen_fgn(FgnSpec{hurst, n - 1, 0.01}, SeedSpec{seed}));
}

EIEstimate fake_estimate(std::string label, double median) {
  EIEstimate e;
  e.label = std::move(label);
  e.median = median;
  e.draws = {median, median};
  e.contributions = {1.0 / 3, 1.0 / 3, 1.0 / 3};
  return e;
}

}  // namespace

TEST_CASE("efficient-market constants and ranges") {
  const auto b = classic_baseline();
  CHECK(b.h_lw == 0.5);
  CHECK(b.h_gph == 0.5);
  CHECK(b.d_hw == 1.5);
  CHECK(b.d_g == 1.5);
  CHECK(b.apen == 1.0);
  CHECK(kRangeHurst == 1.0);
  CHECK(kRangeFractal == 1.0);
  CHECK(kRangeEntropy == 2.0);
}

TEST_CASE("distance arithmetic") {
  const MeasureValues base{0.5, 0.5, 1.5, 1.5, 1.0};
  SUBCASE("zero distance") {
    CHECK(ei_point(base, base, AggregationMode::average) == 0.0);
    CHECK(ei_point(base, base, AggregationMode::per_estimator) == 0.0);
  }
  SUBCASE("Hurst only") {
    MeasureValues m = base;
    m.h_lw = m.h_gph = 0.6;
    CHECK(std::abs(ei_point(m, base, AggregationMode::average) - 0.1) <= 1e-12);
  }
  SUBCASE("all three factors") {
    MeasureValues m = base;
    m.h_lw = m.h_gph = 0.6;
    m.d_hw = m.d_g = 1.55;
    m.apen = 1.2;
    // sqrt(0.1^2 + 0.05^2 + (0.2/2)^2) = sqrt(0.0225) = 0.15
    CHECK(std::abs(ei_point(m, base, AggregationMode::average) - 0.15) <= 1e-12);
  }
  SUBCASE("averaging within a factor") {
    MeasureValues m = base;
    m.h_lw = 0.7;
    m.h_gph = 0.5;
    CHECK(std::abs(ei_point(m, base, AggregationMode::average) - 0.1) <= 1e-12);
    CHECK(std::abs(ei_point(m, base, AggregationMode::per_estimator) - 0.2) <= 1e-12);
  }
}

TEST_CASE("modes agree when paired estimators coincide") {
  const MeasureValues base{0.52, 0.52, 1.47, 1.47, 1.6};
  const MeasureValues m{0.71, 0.71, 1.31, 1.31, 1.45};
  const auto avg = ei_terms(m, base, AggregationMode::average);
  const auto per = ei_terms(m, base, AggregationMode::per_estimator);
  const double h = (0.71 - 0.52) * (0.71 - 0.52);
  const double d = (1.31 - 1.47) * (1.31 - 1.47);
  CHECK(avg[0] == doctest::Approx(h).epsilon(1e-14));
  CHECK(avg[1] == doctest::Approx(d).epsilon(1e-14));
  // Per-estimator mode counts each identical term twice.
  CHECK(per[0] == doctest::Approx(2 * avg[0]).epsilon(1e-14));
  CHECK(per[1] == doctest::Approx(2 * avg[1]).epsilon(1e-14));
  CHECK(per[2] == avg[2]);
}

TEST_CASE("classic index normalises ApEn") {
  MeasureValues m{0.5, 0.5, 1.5, 1.5, 1.8};
  CHECK(ei_classic(m, 1.8, AggregationMode::average) == 0.0);
  CHECK(std::abs(ei_classic(m, 0.9, AggregationMode::average) - 0.5) <= 1e-12);
  CHECK_THROWS_AS(ei_classic(m, 0.0, AggregationMode::average), Error);
}

TEST_CASE("contribution shares") {
  SUBCASE("Hurst only") {
    const std::vector<FactorTerms> reps(10, FactorTerms{0.04, 0.0, 0.0});
    const auto c = contributions(reps);
    CHECK(c[0] == 1.0);
    CHECK(c[1] == 0.0);
    CHECK(c[2] == 0.0);
  }
  SUBCASE("entropy range halves its deviation") {
    // Deviations (0.1, 0.1, 0.2) with ranges (1, 1, 2).
    const double h = 0.1 * 0.1;
    const double ae = (0.2 / 2) * (0.2 / 2);
    const std::vector<FactorTerms> reps(7, FactorTerms{h, h, ae});
    const auto c = contributions(reps);
    for (double s : c) CHECK(s == doctest::Approx(1.0 / 3).epsilon(1e-12));
  }
  SUBCASE("zero deviation counts as equal thirds") {
    const auto c = contributions({FactorTerms{0, 0, 0}});
    for (double s : c) CHECK(s == doctest::Approx(1.0 / 3).epsilon(1e-15));
  }
  SUBCASE("medians that all vanish fall back to means") {
    const auto c = contributions({FactorTerms{1, 0, 0}, FactorTerms{0, 1, 0}, FactorTerms{0, 0, 1}});
    for (double s : c) CHECK(s == doctest::Approx(1.0 / 3).epsilon(1e-15));
  }
  SUBCASE("renormalised to one") {
    const auto c = contributions({FactorTerms{0.5, 0.3, 0.2}, FactorTerms{0.1, 0.6, 0.3},
                                  FactorTerms{0.2, 0.2, 0.6}, FactorTerms{0.7, 0.1, 0.2}});
    CHECK(std::abs(c[0] + c[1] + c[2] - 1.0) <= 1e-12);
    for (double s : c) CHECK((s >= 0.0 && s <= 1.0));
  }
}

TEST_CASE("median") {
  CHECK(median({3.0, 1.0, 2.0}) == 2.0);
  CHECK(median({4.0, 1.0, 3.0, 2.0}) == 2.5);
  CHECK_THROWS_AS(median({}), Error);
}

TEST_CASE("ranking order and ties") {
  RunInfo info;
  const auto report = rank({fake_estimate("A", 0.3), fake_estimate("B", 0.1),
                            fake_estimate("C", 0.2)},
                           info);
  REQUIRE(report.rows.size() == 3);
  CHECK(report.rows[0].label == "B");
  CHECK(report.rows[1].label == "C");
  CHECK(report.rows[2].label == "A");
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(report.rows[i].rank == i + 1);
    CHECK_FALSE(report.rows[i].tie);
  }

  const auto tied = rank({fake_estimate("Zed", 0.2), fake_estimate("Alpha", 0.2),
                          fake_estimate("Mid", 0.1)},
                         info);
  CHECK(tied.rows[0].label == "Mid");
  CHECK_FALSE(tied.rows[0].tie);
  CHECK(tied.rows[1].label == "Alpha");
  CHECK(tied.rows[2].label == "Zed");
  CHECK(tied.rows[1].tie);
  CHECK(tied.rows[2].tie);

  try {
    rank({}, info);
    FAIL("expected empty-report");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::empty_report);
  }
}

TEST_CASE("configuration validation") {
  EIConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.shuffles = 1;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = EIConfig{};
  cfg.measures.lrd.bandwidth_exponent = 1.2;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = EIConfig{};
  cfg.measures.apen.tolerance_factor = 0.0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  CHECK(parse_aggregation_mode("per-estimator") == AggregationMode::per_estimator);
  CHECK_THROWS_AS(parse_aggregation_mode("sum"), Error);
}

TEST_CASE("inference output invariants") {
  EIConfig cfg;
  cfg.shuffles = 40;
  const auto est = ei_inference(fgn_prices(0.7, 3), cfg, SeedSpec{9});
  REQUIRE(est.draws.size() == 40);
  CHECK(est.replicates.size() == 40);
  CHECK(est.observations == 1430);
  CHECK(est.median == median(est.draws));
  CHECK(est.standard_error == doctest::Approx(std::sqrt(oracle::variance(est.draws))).epsilon(1e-12));
  for (double d : est.draws) CHECK(d >= 0.0);
  CHECK(std::abs(est.contributions[0] + est.contributions[1] + est.contributions[2] - 1.0) <= 1e-12);
  for (double c : est.contributions) CHECK((c >= 0.0 && c <= 1.0));
  CHECK(std::isfinite(est.classic));
  // Each draw is the distance from the original measures to that replicate.
  for (std::size_t k = 0; k < est.draws.size(); ++k) {
    CHECK(est.draws[k] == ei_point(est.measures.values(), est.replicates[k], cfg.mode));
  }
}

TEST_CASE("inference is deterministic and independent of thread count") {
  EIConfig cfg;
  cfg.shuffles = 24;
  const auto p = iid_prices(4);
  const auto a = ei_inference(p, cfg, SeedSpec{123});
  const auto b = ei_inference(p, cfg, SeedSpec{123});
  const auto c = ei_inference(p, cfg, SeedSpec{123}, 7);
  CHECK(a.draws == b.draws);
  CHECK(a.draws == c.draws);
  CHECK(a.median == c.median);
  CHECK(a.standard_error == c.standard_error);
  CHECK(a.contributions == c.contributions);
  const auto d = ei_inference(p, cfg, SeedSpec{124});
  CHECK(a.draws != d.draws);
}

TEST_CASE("price rescaling leaves the estimate unchanged") {
  EIConfig cfg;
  cfg.shuffles = 20;
  const auto p = fgn_prices(0.6, 8);
  std::vector<double> scaled(p.values().begin(), p.values().end());
  for (auto& v : scaled) v *= 1000.0;
  const auto a = ei_inference(p, cfg, SeedSpec{1});
  const auto b = ei_inference(PriceSeries("fgn", scaled), cfg, SeedSpec{1});
  CHECK(std::abs(a.median - b.median) <= 1e-9);
  CHECK(std::abs(a.standard_error - b.standard_error) <= 1e-9);
  for (std::size_t k = 0; k < a.draws.size(); ++k) CHECK(std::abs(a.draws[k] - b.draws[k]) <= 1e-9);
  for (std::size_t f = 0; f < 3; ++f) {
    CHECK(std::abs(a.contributions[f] - b.contributions[f]) <= 1e-9);
  }
}

TEST_CASE("degenerate original series propagates") {
  const PriceSeries flat("flat", std::vector<double>(300, 5.0));
  try {
    ei_inference(flat, EIConfig{}, SeedSpec{1});
    FAIL("expected degenerate-series");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::degenerate_series);
  }
  CHECK_THROWS_AS(ei_inference(iid_prices(1, 40), EIConfig{}, SeedSpec{1}), Error);
}

TEST_CASE("persistent prices rank as less efficient than white-noise prices") {
  EIConfig cfg;
  cfg.shuffles = 30;
  int holds = 0;
  for (std::uint64_t s = 0; s < 10; ++s) {
    const double iid = ei_inference(iid_prices(50 + s), cfg, SeedSpec{s}).median;
    const double fgn = ei_inference(fgn_prices(0.8, 60 + s), cfg, SeedSpec{s}).median;
    if (iid < fgn) ++holds;
  }
  CHECK(holds == 10);
}

TEST_CASE("median settles as the shuffle count grows") {
  const auto p = fgn_prices(0.65, 21);
  EIConfig cfg;
  cfg.shuffles = 10;
  const double m10 = ei_inference(p, cfg, SeedSpec{2}).median;
  cfg.shuffles = 100;
  const double m100 = ei_inference(p, cfg, SeedSpec{2}).median;
  cfg.shuffles = 1000;
  const double m1000 = ei_inference(p, cfg, SeedSpec{2}).median;
  MESSAGE("median at N = 10, 100, 1000: " << m10 << " " << m100 << " " << m1000);
  CHECK(std::abs(m100 - m1000) <= 0.01);
}

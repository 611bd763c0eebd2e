#include "effindex/series.hpp"

#include <cmath>
#include <random>
#include <utility>

#include <fmt/format.h>

#include "effindex/error.hpp"

namespace effindex {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_input: return "invalid-input";
    case ErrorCode::series_too_short: return "series-too-short";
    case ErrorCode::degenerate_series: return "degenerate-series";
    case ErrorCode::degenerate_path: return "degenerate-path";
    case ErrorCode::embedding_failure: return "embedding-failure";
    case ErrorCode::generation_failure: return "generation-failure";
    case ErrorCode::parse_error: return "parse-error";
    case ErrorCode::empty_report: return "empty-report";
  }
  return "unknown";
}

namespace {

std::vector<Date> daily_axis(std::size_t n) {
  using namespace std::chrono;
  const Date start = year_month_day{year{2011}, month{1}, day{1}};
  std::vector<Date> axis(n);
  for (std::size_t i = 0; i < n; ++i) axis[i] = start + days{static_cast<int>(i)};
  return axis;
}

}  // namespace

PriceSeries::PriceSeries(std::string id, std::vector<Date> timestamps,
                         std::vector<double> values)
    : id_(std::move(id)),
      timestamps_(std::move(timestamps)),
      values_(std::move(values)) {
  validate();
}

void PriceSeries::validate() const {
  if (values_.size() != timestamps_.size()) {
    throw Error(ErrorCode::invalid_input,
                fmt::format("series '{}': {} values but {} timestamps", id_,
                            values_.size(), timestamps_.size()));
  }
  if (values_.size() < 2) {
    throw Error(ErrorCode::series_too_short,
                fmt::format("series '{}': need at least 2 observations", id_));
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!(values_[i] > 0.0) || !std::isfinite(values_[i])) {
      throw Error(ErrorCode::invalid_input,
                  fmt::format("series '{}': non-positive or non-finite price "
                              "{} at index {}",
                              id_, values_[i], i));
    }
    if (i > 0 && !(timestamps_[i - 1] < timestamps_[i])) {
      throw Error(ErrorCode::invalid_input,
                  fmt::format("series '{}': timestamps not strictly "
                              "increasing at index {}",
                              id_, i));
    }
  }
}

PriceSeries::PriceSeries(std::string id, std::vector<double> values)
    : id_(std::move(id)), values_(std::move(values)) {
  timestamps_ = daily_axis(values_.size());
  validate();
}

LogPriceSeries::LogPriceSeries(std::vector<double> values)
    : values_(std::move(values)) {}

LogReturnSeries::LogReturnSeries(std::vector<double> values)
    : values_(std::move(values)) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw Error(ErrorCode::invalid_input,
                  fmt::format("non-finite return at index {}", i));
    }
  }
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t SeedSpec::replicate_seed(std::uint64_t replicate) const noexcept {
  return splitmix64(base_seed ^ splitmix64(replicate ^ 0xD1B54A32D192ED03ULL));
}

LogPriceSeries log_prices(const PriceSeries& p) {
  std::vector<double> out(p.size());
  const auto v = p.values();
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::log(v[i]);
  return LogPriceSeries(std::move(out));
}

LogReturnSeries log_returns(const PriceSeries& p) {
  const auto v = p.values();
  std::vector<double> out(v.size() - 1);
  double prev = std::log(v[0]);
  for (std::size_t t = 1; t < v.size(); ++t) {
    const double cur = std::log(v[t]);
    out[t - 1] = cur - prev;
    prev = cur;
  }
  return LogReturnSeries(std::move(out));
}

LogReturnSeries shuffle_returns(const LogReturnSeries& r, const SeedSpec& seed,
                                std::uint64_t replicate) {
  if (r.empty()) {
    throw Error(ErrorCode::invalid_input, "cannot shuffle an empty series");
  }
  std::vector<double> out(r.values().begin(), r.values().end());
  std::mt19937_64 engine(seed.replicate_seed(replicate));
  for (std::size_t i = out.size() - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(uniform_below(engine, i + 1));
    std::swap(out[i], out[j]);
  }
  return LogReturnSeries(std::move(out));
}

LogPriceSeries rebuild_log_prices(const LogReturnSeries& r, double anchor) {
  std::vector<double> out(r.size() + 1);
  out[0] = anchor;
  for (std::size_t t = 0; t < r.size(); ++t) out[t + 1] = out[t] + r[t];
  return LogPriceSeries(std::move(out));
}

}  // namespace effindex

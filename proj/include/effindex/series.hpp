#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace effindex {

using Date = std::chrono::sys_days;

/// Observed price path. Construction validates the invariants: at least two
/// observations, strictly positive finite prices, strictly increasing dates.
class PriceSeries {
 public:
  PriceSeries(std::string id, std::vector<Date> timestamps,
              std::vector<double> values);

  /// Daily timestamps starting at 2011-01-01, for synthetic fixtures.
  PriceSeries(std::string id, std::vector<double> values);

  const std::string& id() const noexcept { return id_; }
  std::span<const Date> timestamps() const noexcept { return timestamps_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }

 private:
  void validate() const;

  std::string id_;
  std::vector<Date> timestamps_;
  std::vector<double> values_;
};

class LogPriceSeries {
 public:
  explicit LogPriceSeries(std::vector<double> values);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

 private:
  std::vector<double> values_;
};

class LogReturnSeries {
 public:
  /// Throws invalid_input on non-finite values.
  explicit LogReturnSeries(std::vector<double> values);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }
  double operator[](std::size_t i) const { return values_[i]; }

 private:
  std::vector<double> values_;
};

/// Base seed plus the rule deriving an independent stream per replicate.
struct SeedSpec {
  std::uint64_t base_seed = 0;

  /// Avalanche mix of (base_seed, replicate). Depends only on the pair, so
  /// replicates can be evaluated in any order or concurrently.
  std::uint64_t replicate_seed(std::uint64_t replicate) const noexcept;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

LogPriceSeries log_prices(const PriceSeries& p);
LogReturnSeries log_returns(const PriceSeries& p);

/// Fisher-Yates permutation of r driven by seed.replicate_seed(replicate).
/// Throws invalid_input on empty input.
LogReturnSeries shuffle_returns(const LogReturnSeries& r, const SeedSpec& seed,
                                std::uint64_t replicate);

/// output[0] = anchor, output[t+1] = output[t] + r[t].
LogPriceSeries rebuild_log_prices(const LogReturnSeries& r, double anchor);

/// Unbiased integer in [0, bound) from a 64-bit engine, independent of the
/// standard library's distribution implementation.
template <class Engine>
std::uint64_t uniform_below(Engine& engine, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t draw = engine();
    if (draw >= threshold) return draw % bound;
  }
}

}  // namespace effindex

#include "effindex/synth.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include <fmt/format.h>

#include "effindex/error.hpp"
#include "fft.hpp"

namespace effindex {

double fgn_autocovariance(double hurst, double sigma, std::size_t lag) {
  const double k = static_cast<double>(lag);
  const double two_h = 2.0 * hurst;
  return 0.5 * sigma * sigma *
         (std::pow(k + 1.0, two_h) - 2.0 * std::pow(k, two_h) +
          std::pow(std::abs(k - 1.0), two_h));
}

namespace {

void validate(const FgnSpec& spec) {
  if (!(spec.hurst > 0.0 && spec.hurst < 1.0)) {
    throw Error(ErrorCode::invalid_input,
                fmt::format("fGn Hurst exponent {} outside (0, 1)", spec.hurst));
  }
  if (spec.length < 8) {
    throw Error(ErrorCode::series_too_short, "fGn length must be at least 8");
  }
  if (!(spec.sigma > 0.0)) {
    throw Error(ErrorCode::invalid_input, "fGn sigma must be positive");
  }
}

std::vector<double> embedding_eigenvalues(const FgnSpec& spec, std::size_t size) {
  std::vector<std::complex<double>> row(size);
  for (std::size_t k = 0; k < size; ++k) {
    const std::size_t lag = k <= size / 2 ? k : size - k;
    row[k] = fgn_autocovariance(spec.hurst, spec.sigma, lag);
  }
  const auto spectrum = detail::forward_dft(row);
  std::vector<double> eig(size);
  for (std::size_t k = 0; k < size; ++k) eig[k] = spectrum[k].real();
  return eig;
}

}  // namespace

double fgn_min_embedding_eigenvalue(const FgnSpec& spec) {
  validate(spec);
  const auto eig = embedding_eigenvalues(spec, 2 * (spec.length - 1));
  return *std::min_element(eig.begin(), eig.end());
}

std::vector<double> gen_fgn(const FgnSpec& spec, const SeedSpec& seed) {
  validate(spec);
  const double floor = -1e-9 * spec.sigma * spec.sigma;
  std::size_t size = 2 * (spec.length - 1);
  auto eig = embedding_eigenvalues(spec, size);
  if (*std::min_element(eig.begin(), eig.end()) < floor) {
    size *= 2;
    eig = embedding_eigenvalues(spec, size);
    const double worst = *std::min_element(eig.begin(), eig.end());
    if (worst < floor) {
      throw Error(ErrorCode::embedding_failure,
                  fmt::format("circulant embedding of size {} has eigenvalue {}",
                              size, worst));
    }
  }

  std::mt19937_64 engine(seed.base_seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<std::complex<double>> weights(size);
  const double inv_size = 1.0 / static_cast<double>(size);
  for (std::size_t k = 0; k < size; ++k) {
    const double amplitude = std::sqrt(std::max(eig[k], 0.0) * inv_size);
    const double re = normal(engine);
    const double im = normal(engine);
    weights[k] = {amplitude * re, amplitude * im};
  }
  const auto field = detail::forward_dft(weights);
  std::vector<double> out(spec.length);
  for (std::size_t t = 0; t < spec.length; ++t) out[t] = field[t].real();
  return out;
}

std::vector<double> gen_iid_gaussian(std::size_t length, double sigma,
                                     const SeedSpec& seed) {
  std::mt19937_64 engine(seed.base_seed);
  std::normal_distribution<double> normal(0.0, sigma);
  std::vector<double> out(length);
  for (auto& v : out) v = normal(engine);
  return out;
}

std::vector<double> gen_logistic_map(std::size_t length, double growth,
                                     std::size_t burn_in, const SeedSpec& seed) {
  std::mt19937_64 engine(seed.base_seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  // Fixed points and the 2-cycle of the growth-4 map.
  const double avoid[] = {0.0, 0.75, (5.0 - std::sqrt(5.0)) / 8.0,
                          (5.0 + std::sqrt(5.0)) / 8.0, 0.5, 1.0};
  double x = 0.0;
  bool ok = false;
  while (!ok) {
    x = uniform(engine);
    ok = std::none_of(std::begin(avoid), std::end(avoid),
                      [&](double a) { return std::abs(x - a) < 1e-6; });
  }
  std::vector<double> out(length);
  for (std::size_t t = 0; t < burn_in + length; ++t) {
    x = growth * x * (1.0 - x);
    if (!(x >= 0.0 && x <= 1.0)) {
      throw Error(ErrorCode::generation_failure,
                  fmt::format("logistic map left [0, 1] at step {}", t));
    }
    if (t >= burn_in) out[t - burn_in] = x;
  }
  return out;
}

PriceSeries prices_from_returns(std::string id, std::span<const double> returns,
                                double initial) {
  std::vector<double> prices(returns.size() + 1);
  double cumulative = 0.0;
  prices[0] = initial;
  for (std::size_t t = 0; t < returns.size(); ++t) {
    cumulative += returns[t];
    prices[t + 1] = initial * std::exp(cumulative);
  }
  return PriceSeries(std::move(id), std::move(prices));
}

}  // namespace effindex

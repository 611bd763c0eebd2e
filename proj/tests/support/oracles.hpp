#pragma once

// Independent reference implementations used only by tests. Each follows the
// textbook definition directly and shares no code with the library.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

/// Periodogram ordinate at Fourier index j by the defining sum.
inline double periodogram_ordinate(std::span<const double> x, std::size_t j) {
  const std::size_t n = x.size();
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(n);
  std::complex<double> sum = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>((j * t) % n) /
                         static_cast<double>(n);
    sum += (x[t] - mean) * std::complex<double>(std::cos(angle), -std::sin(angle));
  }
  return std::norm(sum) / (2.0 * std::numbers::pi * static_cast<double>(n));
}

/// Approximate entropy by the full double loop, one template at a time.
inline double apen(std::span<const double> x, std::size_t m, double r) {
  const std::size_t n = x.size();
  auto phi = [&](std::size_t len) {
    const std::size_t count = n - len + 1;
    double total = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      std::size_t matches = 0;
      for (std::size_t j = 0; j < count; ++j) {
        double dist = 0.0;
        for (std::size_t k = 0; k < len; ++k) {
          dist = std::max(dist, std::abs(x[i + k] - x[j + k]));
        }
        if (dist <= r) ++matches;
      }
      total += std::log(static_cast<double>(matches) / static_cast<double>(count));
    }
    return total / static_cast<double>(count);
  };
  return phi(m) - phi(m + 1);
}

/// Qn by enumerating every pair.
inline double qn(std::span<const double> x) {
  std::vector<double> dist;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) dist.push_back(std::abs(x[i] - x[j]));
  }
  const std::size_t h = x.size() / 2 + 1;
  const std::size_t k = h * (h - 1) / 2;
  std::nth_element(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k - 1),
                   dist.end());
  return 2.2191 * dist[k - 1];
}

inline double fgn_gamma(double hurst, std::size_t lag) {
  const double k = static_cast<double>(lag);
  return 0.5 * (std::pow(k + 1, 2 * hurst) - 2 * std::pow(k, 2 * hurst) +
                std::pow(std::abs(k - 1), 2 * hurst));
}

/// Unit-variance fGn by Cholesky factorisation of the Toeplitz covariance.
inline std::vector<double> fgn_cholesky(double hurst, std::size_t n, std::mt19937_64& rng) {
  Eigen::MatrixXd cov(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      cov(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          fgn_gamma(hurst, i > j ? i - j : j - i);
    }
  }
  const Eigen::MatrixXd lower = cov.llt().matrixL();
  std::normal_distribution<double> normal;
  Eigen::VectorXd z(n);
  for (std::size_t i = 0; i < n; ++i) z(static_cast<Eigen::Index>(i)) = normal(rng);
  const Eigen::VectorXd x = lower * z;
  return {x.data(), x.data() + x.size()};
}

inline double mean(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

inline double variance(std::span<const double> x) {
  const double m = mean(x);
  double s = 0.0;
  for (double v : x) s += (v - m) * (v - m);
  return s / static_cast<double>(x.size() - 1);
}

inline double autocorrelation(std::span<const double> x, std::size_t lag) {
  const double m = mean(x);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t t = 0; t < x.size(); ++t) {
    den += (x[t] - m) * (x[t] - m);
    if (t + lag < x.size()) num += (x[t] - m) * (x[t + lag] - m);
  }
  return num / den;
}

inline std::vector<double> cumulative(std::span<const double> x, double start = 0.0) {
  std::vector<double> out(x.size() + 1);
  out[0] = start;
  for (std::size_t t = 0; t < x.size(); ++t) out[t + 1] = out[t] + x[t];
  return out;
}

}  // namespace oracle

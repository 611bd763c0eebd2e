#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "effindex/series.hpp"

namespace effindex {

/// Fractional Gaussian noise with Hurst exponent `hurst` in (0, 1).
struct FgnSpec {
  double hurst = 0.5;
  std::size_t length = 0;
  double sigma = 1.0;
};

/// gamma(k) = sigma^2/2 (|k+1|^2H - 2|k|^2H + |k-1|^2H).
double fgn_autocovariance(double hurst, double sigma, std::size_t lag);

/// Exact-covariance sample by circulant embedding (Davies-Harte). The
/// embedding has size 2(n-1); if an eigenvalue falls below -1e-9 gamma(0)
/// the size is doubled once, after which embedding_failure is thrown.
std::vector<double> gen_fgn(const FgnSpec& spec, const SeedSpec& seed);

/// Smallest eigenvalue of the circulant embedding used by gen_fgn.
double fgn_min_embedding_eigenvalue(const FgnSpec& spec);

std::vector<double> gen_iid_gaussian(std::size_t length, double sigma,
                                     const SeedSpec& seed);

/// x_{t+1} = growth x_t (1 - x_t) after `burn_in` discarded steps, with x0
/// drawn from the seed away from the map's fixed points and 2-cycle.
/// Throws generation_failure if an iterate leaves [0, 1].
std::vector<double> gen_logistic_map(std::size_t length, double growth,
                                     std::size_t burn_in, const SeedSpec& seed);

/// Prices initial * exp(cumulative sum of returns), one longer than returns.
PriceSeries prices_from_returns(std::string id, std::span<const double> returns,
                                double initial = 100.0);

}  // namespace effindex

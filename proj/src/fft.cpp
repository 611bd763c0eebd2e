#include "fft.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

#include <fftw3.h>

namespace effindex::detail {
namespace {

// FFTW's planner is not thread-safe while fftw_execute_* is. Plans are made
// once per (size, kind) under a lock with FFTW_ESTIMATE, which picks the same
// algorithm on every run, and then executed on fresh fftw_malloc buffers
// (same alignment as at planning time).
enum class PlanKind { r2c, c2c };

class PlanCache {
 public:
  fftw_plan get(PlanKind kind, int n) {
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(kind, n);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    fftw_plan plan = nullptr;
    if (kind == PlanKind::r2c) {
      double* in = fftw_alloc_real(static_cast<std::size_t>(n));
      fftw_complex* out = fftw_alloc_complex(static_cast<std::size_t>(n / 2 + 1));
      plan = fftw_plan_dft_r2c_1d(n, in, out, FFTW_ESTIMATE);
      fftw_free(in);
      fftw_free(out);
    } else {
      fftw_complex* in = fftw_alloc_complex(static_cast<std::size_t>(n));
      fftw_complex* out = fftw_alloc_complex(static_cast<std::size_t>(n));
      plan = fftw_plan_dft_1d(n, in, out, FFTW_FORWARD, FFTW_ESTIMATE);
      fftw_free(in);
      fftw_free(out);
    }
    plans_.emplace(key, plan);
    return plan;
  }

  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<PlanKind, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

struct FftwFree {
  void operator()(void* p) const noexcept { fftw_free(p); }
};

}  // namespace

std::vector<std::complex<double>> forward_dft_real(std::span<const double> x) {
  const int n = static_cast<int>(x.size());
  const std::size_t bins = x.size() / 2 + 1;
  std::unique_ptr<double, FftwFree> in(fftw_alloc_real(x.size()));
  std::unique_ptr<fftw_complex, FftwFree> out(fftw_alloc_complex(bins));
  std::copy(x.begin(), x.end(), in.get());
  fftw_execute_dft_r2c(plan_cache().get(PlanKind::r2c, n), in.get(), out.get());
  std::vector<std::complex<double>> result(bins);
  for (std::size_t j = 0; j < bins; ++j) {
    result[j] = {out.get()[j][0], out.get()[j][1]};
  }
  return result;
}

std::vector<std::complex<double>> forward_dft(
    std::span<const std::complex<double>> x) {
  const int n = static_cast<int>(x.size());
  std::unique_ptr<fftw_complex, FftwFree> in(fftw_alloc_complex(x.size()));
  std::unique_ptr<fftw_complex, FftwFree> out(fftw_alloc_complex(x.size()));
  for (std::size_t t = 0; t < x.size(); ++t) {
    in.get()[t][0] = x[t].real();
    in.get()[t][1] = x[t].imag();
  }
  fftw_execute_dft(plan_cache().get(PlanKind::c2c, n), in.get(), out.get());
  std::vector<std::complex<double>> result(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    result[j] = {out.get()[j][0], out.get()[j][1]};
  }
  return result;
}

}  // namespace effindex::detail

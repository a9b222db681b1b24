#include "fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace dww::detail {
namespace {

// The FFTW planner is not thread-safe; plan execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct Plan {
  int n = 0;
  fftw_complex* in = nullptr;
  fftw_complex* out = nullptr;
  fftw_plan plan = nullptr;

  Plan(int n_, int sign) : n(n_) {
    std::lock_guard lock(planner_mutex());
    in = fftw_alloc_complex(static_cast<size_t>(n));
    out = fftw_alloc_complex(static_cast<size_t>(n));
    plan = fftw_plan_dft_1d(n, in, out, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
    if (!plan || !in || !out) throw std::runtime_error("fftw plan creation failed");
  }
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;
  ~Plan() {
    std::lock_guard lock(planner_mutex());
    if (plan) fftw_destroy_plan(plan);
    fftw_free(in);
    fftw_free(out);
  }
};

Plan& cached_plan(int n, int sign) {
  thread_local std::unordered_map<long long, std::unique_ptr<Plan>> cache;
  const long long key = 2LL * n + (sign > 0 ? 1 : 0);
  auto& slot = cache[key];
  if (!slot) slot = std::make_unique<Plan>(n, sign);
  return *slot;
}

}  // namespace

void dft(std::span<const std::complex<double>> in, std::span<std::complex<double>> out, int sign) {
  const int n = static_cast<int>(in.size());
  if (out.size() != in.size()) throw std::invalid_argument("dft: size mismatch");
  Plan& p = cached_plan(n, sign);
  // std::complex<double> is layout-compatible with fftw_complex (double[2]).
  static_assert(sizeof(fftw_complex) == sizeof(std::complex<double>));
  std::copy(in.begin(), in.end(), reinterpret_cast<std::complex<double>*>(p.in));
  fftw_execute(p.plan);
  const auto* res = reinterpret_cast<const std::complex<double>*>(p.out);
  std::copy(res, res + n, out.begin());
}

}  // namespace dww::detail

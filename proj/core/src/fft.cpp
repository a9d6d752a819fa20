#include "fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstring>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace dglab::detail {
namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class Plan {
 public:
  explicit Plan(int M) : M_(M) {
    real_ = fftw_alloc_real(static_cast<std::size_t>(M));
    spec_ = fftw_alloc_complex(static_cast<std::size_t>(M / 2 + 1));
    if (!real_ || !spec_) throw std::bad_alloc();
    std::lock_guard<std::mutex> lock(planner_mutex());
    // ESTIMATE keeps the chosen algorithm (and hence rounding) identical between runs.
    fwd_ = fftw_plan_dft_r2c_1d(M, real_, spec_, FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft_c2r_1d(M, spec_, real_, FFTW_ESTIMATE);
    if (!fwd_ || !bwd_) throw std::runtime_error("fftw planning failed");
  }
  ~Plan() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(bwd_);
    fftw_free(real_);
    fftw_free(spec_);
  }
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;

  int M_;
  double* real_;
  fftw_complex* spec_;
  fftw_plan fwd_;
  fftw_plan bwd_;
};

Plan& plan_for(int M) {
  thread_local std::unordered_map<int, std::unique_ptr<Plan>> cache;
  auto& slot = cache[M];
  if (!slot) slot = std::make_unique<Plan>(M);
  return *slot;
}

}  // namespace

void grid_forward(const double* x, std::complex<double>* spec, int M) {
  Plan& p = plan_for(M);
  std::memcpy(p.real_, x, sizeof(double) * static_cast<std::size_t>(M));
  fftw_execute(p.fwd_);
  const double inv = 1.0 / M;
  // theta_j = -pi + 2 pi j/M contributes the phase e^{ik pi} = (-1)^k.
  for (int k = 0; k <= M / 2; ++k) {
    const double s = (k % 2 == 0) ? inv : -inv;
    spec[k] = std::complex<double>(p.spec_[k][0] * s, p.spec_[k][1] * s);
  }
}

void grid_backward(const std::complex<double>* spec, int nspec, double* x, int M) {
  Plan& p = plan_for(M);
  const int half = M / 2;
  for (int k = 0; k <= half; ++k) {
    if (k < nspec) {
      const double s = (k % 2 == 0) ? 1.0 : -1.0;
      p.spec_[k][0] = spec[k].real() * s;
      p.spec_[k][1] = spec[k].imag() * s;
    } else {
      p.spec_[k][0] = 0.0;
      p.spec_[k][1] = 0.0;
    }
  }
  p.spec_[0][1] = 0.0;
  fftw_execute(p.bwd_);
  std::memcpy(x, p.real_, sizeof(double) * static_cast<std::size_t>(M));
}

int fft_friendly_size(int M) {
  for (int n = std::max(M, 1);; ++n) {
    int r = n;
    for (int f : {2, 3, 5, 7})
      while (r % f == 0) r /= f;
    if (r == 1) return n;
  }
}

}  // namespace dglab::detail

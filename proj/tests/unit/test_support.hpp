#pragma once

#include <random>

#include "dglab/field.hpp"

namespace dglab::testing {

// Random real field with coefficients ~ U(-1,1) / (1 + k)^decay.
inline RealCircleField random_field(int N, std::mt19937_64& rng, double decay = 1.0, bool zero_mean = false) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  RealCircleField f(N);
  for (int k = 0; k <= N; ++k) {
    const double s = std::pow(1.0 + k, -decay);
    f.set(k, k == 0 ? cplx(zero_mean ? 0.0 : s * u(rng)) : cplx(s * u(rng), s * u(rng)));
  }
  return f;
}

inline double max_coeff_diff(const RealCircleField& a, const RealCircleField& b) {
  const int n = std::max(a.max_mode(), b.max_mode());
  double d = 0.0;
  for (int k = 0; k <= n; ++k) d = std::max(d, std::abs(a[k] - b[k]));
  return d;
}

}  // namespace dglab::testing

#include "dglab/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dglab/errors.hpp"

namespace dglab {

RealCircleField::RealCircleField(int max_mode) {
  if (max_mode < 0) throw ParameterError("max_mode must be non-negative");
  c_.assign(static_cast<std::size_t>(max_mode) + 1, cplx{});
}

RealCircleField RealCircleField::from_nonnegative(std::vector<cplx> c) {
  if (c.empty()) c.push_back(0.0);
  RealCircleField f;
  f.c_ = std::move(c);
  f.c_[0] = f.c_[0].real();
  return f;
}

RealCircleField RealCircleField::from_symmetric(std::span<const cplx> c) {
  if (c.size() % 2 != 1) throw InputError("symmetric coefficient array must have odd length");
  const int n = static_cast<int>(c.size() / 2);
  double scale = 0.0;
  for (const auto& v : c) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw InputError("non-finite Fourier coefficient");
    scale = std::max(scale, std::abs(v));
  }
  const double tol = 1e-12 * (1.0 + scale);
  RealCircleField f(n);
  for (int k = 0; k <= n; ++k) {
    const cplx pos = c[static_cast<std::size_t>(n + k)];
    const cplx neg = c[static_cast<std::size_t>(n - k)];
    if (std::abs(neg - std::conj(pos)) > tol)
      throw InputError("coefficients are not Hermitian at k = " + std::to_string(k));
    f.c_[static_cast<std::size_t>(k)] = pos;
  }
  f.c_[0] = f.c_[0].real();
  return f;
}

RealCircleField RealCircleField::constant(double value) {
  RealCircleField f(0);
  f.c_[0] = value;
  return f;
}

RealCircleField RealCircleField::cos_mode(int m, double amplitude) {
  if (m < 0) throw ParameterError("mode index must be non-negative");
  RealCircleField f(m);
  f.c_[static_cast<std::size_t>(m)] = m == 0 ? amplitude : 0.5 * amplitude;
  return f;
}

RealCircleField RealCircleField::sin_mode(int m, double amplitude) {
  if (m < 0) throw ParameterError("mode index must be non-negative");
  RealCircleField f(m);
  if (m > 0) f.c_[static_cast<std::size_t>(m)] = cplx(0.0, -0.5 * amplitude);
  return f;
}

cplx RealCircleField::operator[](int k) const {
  const int n = max_mode();
  if (k > n || k < -n) return {};
  return k >= 0 ? c_[static_cast<std::size_t>(k)] : std::conj(c_[static_cast<std::size_t>(-k)]);
}

void RealCircleField::set(int k, cplx value) {
  const int a = std::abs(k);
  if (a > max_mode()) c_.resize(static_cast<std::size_t>(a) + 1);
  if (k == 0) {
    c_[0] = value.real();
  } else {
    c_[static_cast<std::size_t>(a)] = k > 0 ? value : std::conj(value);
  }
}

bool RealCircleField::is_finite() const {
  return std::all_of(c_.begin(), c_.end(), [](const cplx& v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  });
}

RealCircleField RealCircleField::resized(int n) const {
  RealCircleField f(n);
  const int m = std::min(n, max_mode());
  std::copy(c_.begin(), c_.begin() + m + 1, f.c_.begin());
  return f;
}

RealCircleField& RealCircleField::operator+=(const RealCircleField& other) {
  if (other.c_.size() > c_.size()) c_.resize(other.c_.size());
  for (std::size_t k = 0; k < other.c_.size(); ++k) c_[k] += other.c_[k];
  return *this;
}

RealCircleField& RealCircleField::operator-=(const RealCircleField& other) {
  if (other.c_.size() > c_.size()) c_.resize(other.c_.size());
  for (std::size_t k = 0; k < other.c_.size(); ++k) c_[k] -= other.c_[k];
  return *this;
}

RealCircleField& RealCircleField::operator*=(double s) {
  for (auto& v : c_) v *= s;
  return *this;
}

}  // namespace dglab

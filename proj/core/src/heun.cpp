#include "dglab/heun.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "dglab/errors.hpp"
#include "dglab/linear_ops.hpp"

namespace dglab {

EigenfunctionSeries eigen_recursion(cplx lambda, int K) {
  if (lambda == cplx{}) throw DegeneracyError("lambda = 0 is the kernel direction");
  if (K < 3) throw ParameterError("eigen_recursion needs K >= 3");
  EigenfunctionSeries s;
  s.lambda = lambda;
  s.eta.resize(static_cast<std::size_t>(K));
  s.eta[1] = 1.0;
  s.eta[0] = L_coeff_A(2) / lambda;
  s.eta[2] = lambda / L_coeff_A(3);
  for (int k = 3; k < K; ++k)
    s.eta[k] = (lambda * s.eta[k - 1] - L_coeff_B(k - 1) * s.eta[k - 2]) / L_coeff_A(k + 1);
  return s;
}

std::vector<cplx> heun_taylor(const EigenfunctionSeries& series) {
  std::vector<cplx> F(series.eta.size());
  for (std::size_t k = 0; k < F.size(); ++k) F[k] = -series.eta[k] / double(k + 1);
  return F;
}

double heun_residual_taylor(const std::vector<cplx>& F, cplx lambda, const std::vector<cplx>& z) {
  double worst = 0.0;
  for (const cplx& x : z) {
    if (std::abs(x) >= 1.0) throw DomainError("heun_residual samples must lie inside the unit disc");
    cplx f{}, f1{}, f2{};
    for (std::size_t k = F.size(); k-- > 0;) {
      f2 = f2 * x + 2.0 * f1;
      f1 = f1 * x + f;
      f = f * x + F[k];
    }
    const cplx r = x * (x * x - 1.0) * f2 + (x * x + 2.0 * lambda * x - 3.0) * f1 + 2.0 * lambda * f;
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

double heun_residual(const EigenfunctionSeries& series, const std::vector<cplx>& z) {
  return heun_residual_taylor(heun_taylor(series), series.lambda, z);
}

cplx evaluate_series(const EigenfunctionSeries& series, cplx z) {
  cplx v{};
  for (std::size_t k = series.eta.size(); k-- > 0;) v = (v + series.eta[k]) * z;
  return v;
}

SingularPoint singular_point(cplx z0) {
  const double tol = 1e-14;
  if (std::abs(z0 + 1.0) <= tol) return SingularPoint::MinusOne;
  if (std::abs(z0) <= tol) return SingularPoint::Zero;
  if (std::abs(z0 - 1.0) <= tol) return SingularPoint::One;
  throw DomainError("not a singular point of the equation");
}

IndicialData indicial_exponents(SingularPoint z0, cplx lambda) {
  IndicialData d;
  d.point = z0;
  if (z0 == SingularPoint::Infinity) {
    d.double_root = true;
    d.log_term = true;
    return d;
  }
  const double x = z0 == SingularPoint::MinusOne ? -1.0 : z0 == SingularPoint::One ? 1.0 : 0.0;
  const cplx alpha = (x * x + 2.0 * lambda * x - 3.0) / (3.0 * x * x - 1.0);
  d.r1 = 0.0;
  d.r2 = 1.0 - alpha;
  d.double_root = d.r2 == cplx{};
  return d;
}

ConnectionFit fit_connection(double s, int side, int K, double residual_threshold) {
  if (s == 0.0 || !std::isfinite(s)) throw ParameterError("fit_connection needs real s != 0");
  if (side != 1 && side != -1) throw ParameterError("side must be +1 or -1");
  constexpr int m_lo = 4, m_hi = 14;
  const double delta_min = std::ldexp(1.0, -m_hi);
  K = std::max(K, static_cast<int>(std::ceil(8.0 / delta_min)));
  const cplx lambda(0.0, s);
  const EigenfunctionSeries series = eigen_recursion(lambda, K);
  const cplx expo = 1.0 - double(side) * lambda;

  const int rows = m_hi - m_lo + 1;
  Eigen::MatrixXcd X(rows, 5);
  Eigen::VectorXcd y(rows);
  for (int m = m_lo; m <= m_hi; ++m) {
    const double d = std::ldexp(1.0, -m);
    const cplx sing = std::pow(cplx(d), expo);
    X.row(m - m_lo) << 1.0, d, d * d, sing, sing * d;
    y(m - m_lo) = evaluate_series(series, double(side) * (1.0 - d));
  }
  const Eigen::VectorXcd c = X.colPivHouseholderQr().solve(y);

  ConnectionFit fit;
  fit.side = side;
  fit.K = K;
  fit.c0 = c(0);
  fit.A = c(3);
  const Eigen::VectorXcd singular = X.col(3) * c(3) + X.col(4) * c(4);
  const double scale = singular.norm();
  fit.residual = scale > 0.0 ? (X * c - y).norm() / scale : INFINITY;
  fit.inconclusive = !(fit.residual < residual_threshold);
  fit.tail_exponent = coefficient_tail_exponent(series);
  return fit;
}

double coefficient_tail_exponent(const EigenfunctionSeries& series, int k_lo, int k_hi) {
  const int K = series.K();
  if (k_hi <= 0) k_hi = K - 1;
  if (k_lo <= 0) k_lo = K / 2;
  if (k_lo < 1 || k_hi > K - 1 || k_hi - k_lo < 2) throw ParameterError("bad tail window");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (int k = k_lo; k <= k_hi; ++k) {
    const double e = 0.5 * (std::norm(series(k)) + std::norm(series(k + 1)));
    if (!(e > 0.0)) continue;
    const double x = std::log(double(k)), y = std::log(e);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 3) throw DegeneracyError("tail window has vanishing coefficients");
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return 0.5 * slope;
}

double truncated_energy(const EigenfunctionSeries& series, int K) {
  if (K <= 0 || K > series.K()) K = series.K();
  double e = 0.0;
  for (int k = 1; k <= K; ++k) e += double(k) * k * k * std::norm(series(k));
  return e;
}

}  // namespace dglab

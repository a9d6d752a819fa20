#pragma once

#include <vector>

#include "dglab/field.hpp"

namespace dglab {

// Formal eigenvector of L: eta_1..eta_K (index k-1), normalized by eta_2 = 1.
struct EigenfunctionSeries {
  cplx lambda;
  std::vector<cplx> eta;

  int K() const { return static_cast<int>(eta.size()); }
  cplx operator()(int k) const { return (k >= 1 && k <= K()) ? eta[k - 1] : cplx{}; }
};

// eta_1 = A_2 / lambda, eta_3 = lambda / A_3,
// eta_{k+1} = (lambda eta_k - B_{k-1} eta_{k-1}) / A_{k+1}.
// lambda = 0 throws DegeneracyError. K >= 3.
EigenfunctionSeries eigen_recursion(cplx lambda, int K);

// Taylor coefficients F_0..F_{K-1} of F, F_k = -eta_{k+1}/(k+1).
std::vector<cplx> heun_taylor(const EigenfunctionSeries& series);

// max |z(z^2-1)F'' + (z^2 + 2 lambda z - 3)F' + 2 lambda F| over the samples, F summed from
// its truncated series. Any |z| >= 1 throws DomainError.
double heun_residual(const EigenfunctionSeries& series, const std::vector<cplx>& z);
double heun_residual_taylor(const std::vector<cplx>& F, cplx lambda, const std::vector<cplx>& z);

// sum_k eta_k z^k
cplx evaluate_series(const EigenfunctionSeries& series, cplx z);

enum class SingularPoint { MinusOne, Zero, One, Infinity };

// Classifies a finite point; anything other than -1, 0, 1 throws DomainError.
SingularPoint singular_point(cplx z0);

struct IndicialData {
  SingularPoint point = SingularPoint::Zero;
  cplx r1, r2;
  bool double_root = false;
  bool log_term = false;
};

// r (r + alpha - 1) = 0 with alpha = (z0^2 + 2 lambda z0 - 3) / (3 z0^2 - 1) at finite points;
// r^2 = 0 and a logarithmic second solution at infinity.
IndicialData indicial_exponents(SingularPoint z0, cplx lambda);

struct ConnectionFit {
  int side = 1;
  cplx A;                    // coefficient of delta^{1 - side lambda}
  cplx c0;                   // regular part at the endpoint
  double residual = 0.0;     // fit residual relative to the singular part
  bool inconclusive = false;
  double tail_exponent = 0.0;
  int K = 0;
};

// Fits Phi(side (1 - delta)) = c0 + c1 delta + c2 delta^2 + A delta^{1 - side lambda}
// + A2 delta^{2 - side lambda} over delta = 2^-m, m = 4..14, with lambda = i s.
ConnectionFit fit_connection(double s, int side, int K = 0, double residual_threshold = 1e-3);

// p in |eta_k| ~ C k^p, fitted over [k_lo, k_hi] on pair averages (|eta_k|^2 + |eta_{k+1}|^2)/2.
// Defaults to [K/2, K-1].
double coefficient_tail_exponent(const EigenfunctionSeries& series, int k_lo = 0, int k_hi = 0);

// sum_{k <= K} k^3 |eta_k|^2
double truncated_energy(const EigenfunctionSeries& series, int K = 0);

}  // namespace dglab

#pragma once

#include <optional>
#include <vector>

#include "dglab/field.hpp"

namespace dglab {

inline constexpr double kDegeneracyTol = 1e-8;

struct ZeroPoint {
  double theta = 0.0;  // in (-pi, pi]
  double deriv = 0.0;
};

struct OrbitInvariants {
  int count = 0;                // 2m
  std::vector<ZeroPoint> zeros;  // ordered by theta; derivatives form the cycle (a_1..a_2m)
  double pv = 0.0;              // p.v. integral of 1/f over the circle
};

struct EquilibriumFit {
  double A = 0.0;
  double theta0 = 0.0;
  double residual = 0.0;  // homogeneous H^s distance to A sin(theta - theta0)
};

struct Amplitudes {
  double plus = 0.0;   // -f'(x2) at the zero with negative slope
  double minus = 0.0;  // f'(x1) at the zero with positive slope
};

// Sign changes on a 4N-node scan, refined by safeguarded Newton on the exact series.
// Throws DegeneracyError for |f'| < tol at a zero (including tangential double zeros).
std::vector<ZeroPoint> find_zeros(const RealCircleField& f, double tol = kDegeneracyTol);

// p.v. integral of 1/f on an M-node trapezoid rule after cot subtraction.
double pv_integral(const RealCircleField& f, const std::vector<ZeroPoint>& zeros, int M);

OrbitInvariants orbit_invariants(const RealCircleField& f, double tol = kDegeneracyTol);

// Amplitudes of the limiting equilibria; RegimeError unless exactly two zeros.
Amplitudes predict_amplitudes(const RealCircleField& f0);

EquilibriumFit fit_equilibrium(const RealCircleField& f, double s = 1.0);

struct InvariantSample {
  double t = 0.0;
  std::optional<OrbitInvariants> invariants;  // empty when zeros were degenerate
  double mean = 0.0;
};

struct DriftRow {
  double t = 0.0;
  int zero_count = 0;
  double deriv_drift = 0.0;  // max_j |a_j(t) - a_j(0)| / |a_j(0)|
  double pv_drift = 0.0;
  double mean_drift = 0.0;
};

struct DriftReport {
  double max_deriv_drift = 0.0;
  double max_pv_drift = 0.0;
  double max_mean_drift = 0.0;
  bool topology_change = false;
  double topology_change_t = 0.0;
  std::vector<DriftRow> rows;
};

// Zeros are followed by nearest-location continuation (jumps above pi/4 break the match).
DriftReport drift_report(const std::vector<InvariantSample>& series);

}  // namespace dglab

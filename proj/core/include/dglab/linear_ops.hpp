#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "dglab/dynamics.hpp"
#include "dglab/field.hpp"

namespace dglab {

// Holomorphic-sector coefficients eta_1..eta_K (eta_k stored at index k-1). As a real field
// the vector stands for 2 Re sum eta_k e^{ik theta}.
struct ModeVector {
  std::vector<cplx> eta;

  ModeVector() = default;
  explicit ModeVector(int K) : eta(static_cast<std::size_t>(K)) {}
  static ModeVector unit(int k, int K);
  static ModeVector from_field(const RealCircleField& f, int K);

  int K() const { return static_cast<int>(eta.size()); }
  cplx operator()(int k) const { return (k >= 1 && k <= K()) ? eta[k - 1] : cplx{}; }
  cplx& at(int k) { return eta.at(static_cast<std::size_t>(k - 1)); }

  RealCircleField to_field() const;
};

enum class OperatorTag { L, M };

// A_k and B_k for k = 0..K+1.
struct TridiagonalCoeffs {
  OperatorTag tag = OperatorTag::L;
  std::vector<double> A, B;

  static TridiagonalCoeffs make(OperatorTag tag, int K);
};

// L coefficients for any integer k; A_0 = B_0 = 1/2 is the extension to constants.
double L_coeff_A(int k);
double L_coeff_B(int k);

// (T eta)_k = B_{k-1} eta_{k-1} + A_{k+1} eta_{k+1}, k = 1..K, eta_0 = eta_{K+1} = 0.
ModeVector apply_tridiagonal(const TridiagonalCoeffs& coeffs, const ModeVector& eta);

// L eta = cos(theta) (eta + v) - sin(theta) (eta + v)_theta, v = biot_savart(eta), computed with
// grid products. extended = true admits a nonzero mean (L 1 = cos theta).
RealCircleField apply_L_physical(const RealCircleField& eta, bool extended = false);
// M f = -sin(theta) f_theta
RealCircleField apply_M_physical(const RealCircleField& f);
// K eta = cos(theta) v
RealCircleField apply_K(const RealCircleField& eta);

double conserved_weight(int k);     // c_k = (k-1)^2 (k+1)
double hamiltonian_coupling(int k);  // a_k = 1/(k(k+1))
double conserved_energy(const ModeVector& eta);

// J D(Hamiltonian): (J x)_k = -a_{k-1} x_{k-1} + a_k x_{k+1}, (D Hamiltonian)_k = c_k eta_k / 2.
ModeVector hamiltonian_flow(const ModeVector& eta);

// Fraction of conserved energy carried by modes above 0.9 K.
double tail_energy_fraction(const ModeVector& eta);

// Optional damping -sigma_k eta_k with sigma_k = strength ((k - k0)/(K - k0))^power for k > k0,
// k0 = start_fraction * K. Off by default; meant for decay diagnostics only, since it absorbs
// the energy that hard truncation would reflect back into low modes.
struct AbsorbingLayer {
  double strength = 50.0;
  double start_fraction = 0.5;
  int power = 4;
};

struct LinearEvolveOptions {
  double t_final = 1.0;
  double dt = 1e-3;
  bool gauge_term = false;  // adds -cos(theta) v(0, t)
  double sample_every = 0.0;  // 0: initial and final only
  std::optional<AbsorbingLayer> absorb;
  double tail_threshold = 1e-10;
};

struct LinearSample {
  double t = 0.0;
  ModeVector eta;
};

struct LinearTrajectory {
  std::vector<LinearSample> samples;
  double max_tail_fraction = 0.0;
  bool truncation_warning = false;
};

LinearTrajectory evolve_linear(const ModeVector& eta0, const LinearEvolveOptions& options);

// e^{t L0} acting on xi (same map as exact_pushforward).
PushforwardResult exact_evolve_L0(const RealCircleField& xi0, double t, int N_out = -1);
// f o phi_{-t}: the flow of f_t = M f.
PushforwardResult exact_evolve_M(const RealCircleField& f0, double t, int N_out = -1);

struct DecayFit {
  double rate = 0.0;         // beta-hat, minus the slope of log(norm) against t
  double r_squared = 0.0;
  double power_law_r_squared = 0.0;  // log(norm) against log(t), for comparison
  bool exponential = false;  // r_squared >= 0.98 and no worse than the power-law fit
  std::size_t samples_used = 0;
};
// Least squares over the last half of the window. Needs >= 10 samples, all norms > 0.
DecayFit decay_rate_fit(const std::vector<double>& times, const std::vector<double>& norms);

// Dirichlet energy of f(z) = int phi(s) ((1-z)/(1+z))^{is} ds on the unit disc, integrated
// in the conformal strip coordinate w = log((1-z)/(1+z)).
double strip_dirichlet_energy(const std::function<double(double)>& phi, double s_lo, double s_hi);
// 2 pi int |phi(s)|^2 s sinh(pi s) ds
double strip_spectral_energy(const std::function<double(double)>& phi, double s_lo, double s_hi);
// f(z) for |z| < 1
cplx strip_synthesize(const std::function<double(double)>& phi, double s_lo, double s_hi, cplx z);
// Smooth bump exp(-1/(1-u^2)) on [lo, hi].
double smooth_bump(double s, double lo, double hi);

}  // namespace dglab

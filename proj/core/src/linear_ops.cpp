#include "dglab/linear_ops.hpp"

#include <algorithm>
#include <cmath>

#include "dglab/errors.hpp"
#include "dglab/spectral.hpp"

namespace dglab {

ModeVector ModeVector::unit(int k, int K) {
  ModeVector v(K);
  v.at(k) = 1.0;
  return v;
}

ModeVector ModeVector::from_field(const RealCircleField& f, int K) {
  ModeVector v(K);
  for (int k = 1; k <= K; ++k) v.eta[k - 1] = f[k];
  return v;
}

RealCircleField ModeVector::to_field() const {
  RealCircleField f(K());
  for (int k = 1; k <= K(); ++k) f.set(k, eta[k - 1]);
  return f;
}

double L_coeff_A(int k) {
  if (k == 0) return 0.5;
  // one rounding: (k+1)(|k|-1) / (2|k|)
  return (double(k) + 1.0) * (std::abs(double(k)) - 1.0) / (2.0 * std::abs(double(k)));
}

double L_coeff_B(int k) {
  if (k == 0) return 0.5;
  return (1.0 - double(k)) * (std::abs(double(k)) - 1.0) / (2.0 * std::abs(double(k)));
}

TridiagonalCoeffs TridiagonalCoeffs::make(OperatorTag tag, int K) {
  TridiagonalCoeffs c;
  c.tag = tag;
  c.A.resize(static_cast<std::size_t>(K) + 2);
  c.B.resize(static_cast<std::size_t>(K) + 2);
  for (int k = 0; k <= K + 1; ++k) {
    if (tag == OperatorTag::L) {
      c.A[k] = L_coeff_A(k);
      c.B[k] = L_coeff_B(k);
    } else {
      c.A[k] = 0.5 * k;
      c.B[k] = -0.5 * k;
    }
  }
  return c;
}

ModeVector apply_tridiagonal(const TridiagonalCoeffs& c, const ModeVector& eta) {
  const int K = eta.K();
  if (static_cast<int>(c.A.size()) < K + 2) throw ParameterError("coefficient table shorter than mode vector");
  ModeVector out(K);
  for (int k = 1; k <= K; ++k) {
    cplx v{};
    if (k >= 2) v += c.B[k - 1] * eta.eta[k - 2];
    if (k + 1 <= K) v += c.A[k + 1] * eta.eta[k];
    out.eta[k - 1] = v;
  }
  return out;
}

RealCircleField apply_L_physical(const RealCircleField& eta, bool extended) {
  if (!extended) {
    double scale = std::abs(eta.mean());
    for (int k = 1; k <= eta.max_mode(); ++k) scale += 2.0 * std::abs(eta[k]);
    if (std::abs(eta.mean()) > 1e-12 * std::max(1.0, scale))
      throw InputError("apply_L_physical expects a zero-mean field");
  }
  const int N = eta.max_mode() + 1;
  const RealCircleField w = eta + biot_savart(eta, MeanZero{});
  return multiply(RealCircleField::cos_mode(1), w, N) -
         multiply(RealCircleField::sin_mode(1), derivative(w), N);
}

RealCircleField apply_M_physical(const RealCircleField& f) {
  return -multiply(RealCircleField::sin_mode(1), derivative(f), f.max_mode() + 1);
}

RealCircleField apply_K(const RealCircleField& eta) {
  return multiply(RealCircleField::cos_mode(1), biot_savart(eta, MeanZero{}), eta.max_mode() + 1);
}

double conserved_weight(int k) { return (k - 1.0) * (k - 1.0) * (k + 1.0); }

double hamiltonian_coupling(int k) { return 1.0 / (double(k) * (k + 1.0)); }

double conserved_energy(const ModeVector& eta) {
  double e = 0.0;
  for (int k = 2; k <= eta.K(); ++k) e += conserved_weight(k) * std::norm(eta.eta[k - 1]);
  return e;
}

ModeVector hamiltonian_flow(const ModeVector& eta) {
  const int K = eta.K();
  ModeVector out(K);
  for (int k = 1; k <= K; ++k) {
    cplx v{};
    if (k >= 2) v -= hamiltonian_coupling(k - 1) * 0.5 * conserved_weight(k - 1) * eta(k - 1);
    if (k + 1 <= K) v += hamiltonian_coupling(k) * 0.5 * conserved_weight(k + 1) * eta(k + 1);
    out.eta[k - 1] = v;
  }
  return out;
}

double tail_energy_fraction(const ModeVector& eta) {
  const int K = eta.K();
  const int k0 = static_cast<int>(std::floor(0.9 * K));
  double total = 0.0, tail = 0.0;
  for (int k = 2; k <= K; ++k) {
    const double e = conserved_weight(k) * std::norm(eta.eta[k - 1]);
    total += e;
    if (k > k0) tail += e;
  }
  return total > 0.0 ? tail / total : 0.0;
}

LinearTrajectory evolve_linear(const ModeVector& eta0, const LinearEvolveOptions& opt) {
  if (!(opt.dt > 0.0)) throw ParameterError("dt must be positive");
  if (!(opt.t_final >= 0.0)) throw ParameterError("t_final must be non-negative");
  const int K = eta0.K();
  if (K < 2) throw ParameterError("K_max must be at least 2");
  const TridiagonalCoeffs L = TridiagonalCoeffs::make(OperatorTag::L, K);

  std::vector<double> sigma(static_cast<std::size_t>(K), 0.0);
  if (opt.absorb) {
    const double k0 = opt.absorb->start_fraction * K;
    for (int k = 1; k <= K; ++k)
      if (k > k0) sigma[k - 1] = opt.absorb->strength * std::pow((k - k0) / (K - k0), opt.absorb->power);
  }

  auto deriv = [&](const ModeVector& e) {
    ModeVector d = apply_tridiagonal(L, e);
    if (opt.gauge_term) {
      // v(0) of the real lift: v_k = -eta_k / k on both sectors
      double v0 = 0.0;
      for (int k = 1; k <= K; ++k) v0 -= 2.0 * e.eta[k - 1].real() / k;
      d.eta[0] -= 0.5 * v0;
    }
    if (opt.absorb)
      for (int k = 0; k < K; ++k) d.eta[k] -= sigma[k] * e.eta[k];
    return d;
  };
  auto axpy = [](const ModeVector& x, double a, const ModeVector& y) {
    ModeVector r = x;
    for (std::size_t i = 0; i < r.eta.size(); ++i) r.eta[i] += a * y.eta[i];
    return r;
  };

  long nsteps = static_cast<long>(std::llround(opt.t_final / opt.dt));
  if (std::abs(nsteps * opt.dt - opt.t_final) > 1e-9 * std::max(1.0, opt.t_final))
    nsteps = static_cast<long>(std::ceil(opt.t_final / opt.dt));
  const long every = opt.sample_every > 0.0 ? std::max(1L, static_cast<long>(std::llround(opt.sample_every / opt.dt))) : 0;

  LinearTrajectory traj;
  ModeVector eta = eta0;
  double t = 0.0;
  traj.samples.push_back({0.0, eta});
  for (long n = 0; n < nsteps; ++n) {
    const double h = (n == nsteps - 1) ? opt.t_final - n * opt.dt : opt.dt;
    const ModeVector k1 = deriv(eta);
    const ModeVector k2 = deriv(axpy(eta, 0.5 * h, k1));
    const ModeVector k3 = deriv(axpy(eta, 0.5 * h, k2));
    const ModeVector k4 = deriv(axpy(eta, h, k3));
    for (int i = 0; i < K; ++i)
      eta.eta[i] += h / 6.0 * (k1.eta[i] + 2.0 * k2.eta[i] + 2.0 * k3.eta[i] + k4.eta[i]);
    t = (n == nsteps - 1) ? opt.t_final : (n + 1) * opt.dt;
    const double tail = tail_energy_fraction(eta);
    traj.max_tail_fraction = std::max(traj.max_tail_fraction, tail);
    const bool last = n == nsteps - 1;
    if (last || (every > 0 && (n + 1) % every == 0)) traj.samples.push_back({t, eta});
  }
  traj.truncation_warning = traj.max_tail_fraction > opt.tail_threshold;
  return traj;
}

PushforwardResult exact_evolve_L0(const RealCircleField& xi0, double t, int N_out) {
  return exact_pushforward(xi0, t, N_out);
}

PushforwardResult exact_evolve_M(const RealCircleField& f0, double t, int N_out) {
  if (N_out < 0) N_out = f0.max_mode();
  const double stretch = std::exp(std::min(std::abs(t), 12.0));
  const int M = static_cast<int>(std::min(
      std::max(4.0 * (2 * N_out + 1), 4.0 * (2 * f0.max_mode() + 1) * stretch), double(1 << 22)));
  const RealCircleField full = project_function(
      [&](double th) { return evaluate(f0, mobius_flow(th, -t)).value; }, (M - 1) / 2, M);
  double total = 0.0, tail = 0.0;
  for (int k = 0; k <= full.max_mode(); ++k) {
    const double e = (k == 0 ? 1.0 : 2.0) * std::norm(full[k]);
    total += e;
    if (k > N_out) tail += e;
  }
  PushforwardResult r;
  r.field = full.resized(N_out);
  r.tail_fraction = total > 0.0 ? tail / total : 0.0;
  r.resolved = r.tail_fraction <= 1e-20;
  return r;
}

namespace {

double r_squared_of_fit(const std::vector<double>& x, const std::vector<double>& y, double* slope) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw ParameterError("degenerate abscissae in fit");
  *slope = sxy / sxx;
  if (syy == 0.0) return 1.0;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - my - *slope * (x[i] - mx);
    ss_res += r * r;
  }
  return 1.0 - ss_res / syy;
}

}  // namespace

DecayFit decay_rate_fit(const std::vector<double>& times, const std::vector<double>& norms) {
  if (times.size() != norms.size()) throw ParameterError("times and norms differ in length");
  if (times.size() < 10) throw ParameterError("decay_rate_fit needs at least 10 samples");
  for (double v : norms)
    if (!(v > 0.0) || !std::isfinite(v)) throw ParameterError("decay_rate_fit needs positive finite norms");
  const std::size_t start = times.size() / 2;
  std::vector<double> t, y, lt, ly;
  for (std::size_t i = start; i < times.size(); ++i) {
    t.push_back(times[i]);
    y.push_back(std::log(norms[i]));
    if (times[i] > 0.0) {
      lt.push_back(std::log(times[i]));
      ly.push_back(std::log(norms[i]));
    }
  }
  DecayFit fit;
  double slope = 0.0;
  fit.r_squared = r_squared_of_fit(t, y, &slope);
  fit.rate = -slope;
  fit.samples_used = t.size();
  if (lt.size() >= 3) {
    double ps = 0.0;
    fit.power_law_r_squared = r_squared_of_fit(lt, ly, &ps);
  }
  fit.exponential = fit.r_squared >= 0.98 && fit.r_squared >= fit.power_law_r_squared;
  return fit;
}

}  // namespace dglab

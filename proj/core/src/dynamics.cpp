#include "dglab/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dglab/errors.hpp"
#include "dglab/spectral.hpp"
#include "dglab/weighted_norm.hpp"
#include "fft.hpp"
#include "roots.hpp"

namespace dglab {

namespace {

double coefficient_scale(const RealCircleField& f) {
  double s = std::abs(f[0]);
  for (int k = 1; k <= f.max_mode(); ++k) s += 2.0 * std::abs(f[k]);
  return s;
}

int grid_for(int N, int extra, bool dealias) {
  // extra: max mode of a fixed coefficient field multiplying omega (Transport b)
  if (dealias) return detail::fft_friendly_size(2 * N + extra + 1 > 3 * N + 1 ? 2 * N + extra + 1 : 3 * N + 1);
  return 2 * std::max(N, extra) + 1;
}

double grid_max_abs(const GridSamples& g) {
  double m = 0.0;
  for (double v : g.values) {
    if (!std::isfinite(v)) return std::numeric_limits<double>::infinity();
    m = std::max(m, std::abs(v));
  }
  return m;
}

// [a, b] = a_theta b - a b_theta on the grid, returned with max |b| on the same grid.
RealCircleField bracket(const RealCircleField& a, const RealCircleField& b, int N, bool dealias,
                        double* sup_b) {
  const int M = grid_for(N, a.max_mode(), dealias);
  GridSamples A = to_grid(a, M), At = to_grid(derivative(a), M);
  const GridSamples B = to_grid(b, M), Bt = to_grid(derivative(b), M);
  if (sup_b) *sup_b = grid_max_abs(B);
  for (int j = 0; j < M; ++j) At.values[j] = At.values[j] * B.values[j] - A.values[j] * Bt.values[j];
  return from_grid(At, N);
}

void require_zero_mean(const RealCircleField& w) {
  if (std::abs(w.mean()) > 1e-10 * std::max(1.0, coefficient_scale(w)))
    throw InputError("De Gregorio dynamics requires a zero-mean field (mean = " +
                     std::to_string(w.mean()) + ")");
}

RealCircleField rhs_impl(const ModelSpec& model, const RealCircleField& w, bool dealias, double* sup) {
  const int N = w.max_mode();
  return std::visit(
      [&](const auto& m) -> RealCircleField {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, Clm>) {
          const int G = grid_for(N, 0, dealias);
          GridSamples W = to_grid(w, G);
          const GridSamples HW = to_grid(hilbert(w), G);
          if (sup) *sup = grid_max_abs(W);
          for (int j = 0; j < G; ++j) W.values[j] *= HW.values[j];
          return from_grid(W, N);
        } else if constexpr (std::is_same_v<M, DeGregorio>) {
          require_zero_mean(w);
          return bracket(biot_savart(w, m.gauge), w, N, dealias, sup);
        } else if constexpr (std::is_same_v<M, DeGregorioMean>) {
          require_zero_mean(w);
          RealCircleField r = bracket(biot_savart(w, m.gauge), w, N, dealias, sup);
          r += hilbert(w) * m.c;
          return r;
        } else {
          return bracket(m.b, w, N, dealias, sup);
        }
      },
      model);
}

double gauge_point(const ModelSpec& model) {
  if (const auto* d = std::get_if<DeGregorio>(&model))
    if (const auto* p = std::get_if<PointZero>(&d->gauge)) return p->theta0;
  if (const auto* d = std::get_if<DeGregorioMean>(&model))
    if (const auto* p = std::get_if<PointZero>(&d->gauge)) return p->theta0;
  return 0.0;
}

RealCircleField axpy(const RealCircleField& x, double a, const RealCircleField& y) {
  RealCircleField r = x;
  auto& rc = r.nonnegative();
  const auto& yc = y.nonnegative();
  for (std::size_t k = 0; k < rc.size() && k < yc.size(); ++k) rc[k] += a * yc[k];
  return r;
}

RealCircleField rk4_with_first_stage(const ModelSpec& model, const RealCircleField& w,
                                     const RealCircleField& k1, double dt, bool dealias) {
  const RealCircleField k2 = rhs_impl(model, axpy(w, 0.5 * dt, k1), dealias, nullptr);
  const RealCircleField k3 = rhs_impl(model, axpy(w, 0.5 * dt, k2), dealias, nullptr);
  const RealCircleField k4 = rhs_impl(model, axpy(w, dt, k3), dealias, nullptr);
  RealCircleField out = w;
  auto& o = out.nonnegative();
  const auto &a = k1.nonnegative(), &b = k2.nonnegative(), &c = k3.nonnegative(),
             &d = k4.nonnegative();
  for (std::size_t k = 0; k < o.size(); ++k) o[k] += dt / 6.0 * (a[k] + 2.0 * b[k] + 2.0 * c[k] + d[k]);
  o[0] = o[0].real();
  return out;
}

TimeSeriesRecord make_record(const SimConfig& cfg, const RealCircleField& w, double t, long step,
                             double sup, double bkm) {
  TimeSeriesRecord r;
  r.t = t;
  r.step = step;
  r.h_half = sobolev_norm(w, 0.5);
  r.h_one = sobolev_norm(w, 1.0);
  r.h_32 = sobolev_norm(w, 1.5);
  r.h_two = sobolev_norm(w, 2.0);
  r.y0 = quotient_y_norm(w, cfg.gamma).value;
  r.m_mult = norm(w, MMultiplier{}).value;
  r.sup = sup;
  r.bkm = bkm;
  r.mean = 2.0 * kPi * w.mean();
  r.b_gauge = evaluate(hilbert(w), gauge_point(cfg.model)).value;
  if (cfg.track_invariants) {
    try {
      r.invariants = orbit_invariants(w);
    } catch (const Error&) {
      r.invariants.reset();
    }
  }
  return r;
}

}  // namespace

std::string model_name(const ModelSpec& model) {
  return std::visit(
      [](const auto& m) -> std::string {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, Clm>) return "clm";
        else if constexpr (std::is_same_v<M, DeGregorio>) return "dg";
        else if constexpr (std::is_same_v<M, DeGregorioMean>) return "dg-mean";
        else return "transport";
      },
      model);
}

void SimConfig::validate() const {
  if (!(dt > 0.0)) throw ParameterError("dt must be positive");
  if (!(t_final >= 0.0)) throw ParameterError("t_final must be non-negative");
  if (N < 4) throw ParameterError("N must be at least 4");
  if (record_every < 1) throw ParameterError("record_every must be at least 1");
  if (snapshot_every < 0) throw ParameterError("snapshot_every must be non-negative");
  if (!(blowup_ceiling > 0.0)) throw ParameterError("blow-up ceiling must be positive");
  if (!(gamma > 1.5 && gamma < 2.0)) throw ParameterError("gamma must lie in (3/2, 2)");
}

RealCircleField rhs(const ModelSpec& model, const RealCircleField& w, bool dealias) {
  return rhs_impl(model, w, dealias, nullptr);
}

RealCircleField step_rk4(const ModelSpec& model, const RealCircleField& w, double dt, bool dealias,
                         long step) {
  if (dt < 0.0) throw ParameterError("dt must be non-negative");
  if (dt == 0.0) return w;
  const RealCircleField k1 = rhs_impl(model, w, dealias, nullptr);
  RealCircleField out = rk4_with_first_stage(model, w, k1, dt, dealias);
  if (!out.is_finite()) throw BlowUpError("non-finite state after RK4 step", step);
  return out;
}

double velocity_scale(const ModelSpec& model, const RealCircleField& w) {
  return std::visit(
      [&](const auto& m) -> double {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, Clm>) return sup_norm(hilbert(w));
        else if constexpr (std::is_same_v<M, Transport>) return sup_norm(m.b);
        else return sup_norm(biot_savart(w, m.gauge));
      },
      model);
}

SimulationResult simulate(const SimConfig& cfg, const RealCircleField& w0) {
  cfg.validate();
  if (w0.max_mode() > cfg.N) throw ParameterError("initial data exceeds the configured band limit N");
  RealCircleField w = w0.resized(cfg.N);
  const double vs = velocity_scale(cfg.model, w);
  const double dt_max = 2.0 / (std::max(1.0, vs) * cfg.N);
  if (cfg.dt > dt_max)
    throw ParameterError("stability guard: dt = " + std::to_string(cfg.dt) + " exceeds " +
                         std::to_string(dt_max) + " = 2/(max(1,|u|_inf) N)");

  long nsteps = std::llround(cfg.t_final / cfg.dt);
  if (std::abs(nsteps * cfg.dt - cfg.t_final) > 1e-9 * std::max(1.0, cfg.t_final))
    nsteps = static_cast<long>(std::ceil(cfg.t_final / cfg.dt));

  SimulationResult res;
  double t = 0.0, bkm = 0.0, sup_prev = 0.0, dt_prev = 0.0;
  long nrec = 0;
  auto record = [&](long step, double sup) {
    res.records.push_back(make_record(cfg, w, t, step, sup, bkm));
    const bool snap = nrec == 0 || (cfg.snapshot_every > 0 && nrec % cfg.snapshot_every == 0);
    if (snap) res.snapshots.push_back({t, step, w});
    ++nrec;
  };

  for (long n = 0;; ++n) {
    double sup = 0.0;
    const RealCircleField k1 = rhs_impl(cfg.model, w, cfg.dealias, &sup);
    if (n > 0) bkm += 0.5 * dt_prev * (sup_prev + sup);
    const bool last = n == nsteps;
    if (!std::isfinite(sup) || sup > cfg.blowup_ceiling) {
      if (std::isfinite(sup)) record(n, sup);
      res.blowup = BlowUp{n, t,
                          std::isfinite(sup) ? "sup norm exceeded ceiling " + std::to_string(cfg.blowup_ceiling)
                                             : "non-finite state"};
      break;
    }
    if (n % cfg.record_every == 0 || last) record(n, sup);
    if (last) break;
    const double h = (n == nsteps - 1) ? cfg.t_final - n * cfg.dt : cfg.dt;
    w = rk4_with_first_stage(cfg.model, w, k1, h, cfg.dealias);
    t = (n == nsteps - 1) ? cfg.t_final : (n + 1) * cfg.dt;
    sup_prev = sup;
    dt_prev = h;
    if (!w.is_finite()) {
      res.blowup = BlowUp{n + 1, t, "non-finite state"};
      break;
    }
  }
  if (res.snapshots.empty() || res.snapshots.back().t != t) {
    if (w.is_finite()) res.snapshots.push_back({t, res.records.empty() ? 0 : res.records.back().step, w});
  }
  res.final_state = w;
  return res;
}

// ---- CLM exact solution ----

double clm_blowup_time(const RealCircleField& w0) {
  const RealCircleField hw = hilbert(w0);
  const int M = std::max(1024, 16 * (2 * w0.max_mode() + 1));
  const GridSamples re = to_grid(w0, M);
  const double h = 2.0 * kPi / M;
  double tstar = std::numeric_limits<double>::infinity();
  auto consider = [&](double theta) {
    const double im = evaluate(hw, theta).value;
    if (im > 0.0) tstar = std::min(tstar, 2.0 / im);
  };
  auto fd = [&](double x) {
    const PointValue p = evaluate(w0, x);
    return std::pair<double, double>{p.value, p.derivative};
  };
  for (int j = 0; j < M; ++j) {
    const double a = GridSamples::node(j, M);
    const double va = re.values[j], vb = re.values[(j + 1) % M];
    if (va == 0.0) {
      consider(a);
    } else if ((va < 0.0) != (vb < 0.0) && vb != 0.0) {
      consider(detail::safeguarded_newton(fd, a, a + h, va, 1e-15 * std::max(1.0, sup_norm(w0, 64))));
    }
  }
  return tstar;
}

double clm_exact_value(const RealCircleField& w0, double t, double theta) {
  const cplx f0(evaluate(w0, theta).value, evaluate(hilbert(w0), theta).value);
  const cplx den = 1.0 + cplx(0.0, 0.5 * t) * f0;
  if (std::abs(den) == 0.0) throw DomainError("CLM solution is singular at this point");
  return (f0 / den).real();
}

RealCircleField clm_exact(const RealCircleField& w0, double t, int N_out) {
  if (t >= clm_blowup_time(w0)) throw DomainError("t is at or beyond the CLM blow-up time");
  const int M = detail::fft_friendly_size(std::max(8 * (2 * N_out + 1), 2 * w0.max_mode() + 1));
  const GridSamples re = to_grid(w0, M);
  const GridSamples im = to_grid(hilbert(w0), M);
  GridSamples out;
  out.values.resize(static_cast<std::size_t>(M));
  for (int j = 0; j < M; ++j) {
    const cplx f0(re.values[j], im.values[j]);
    out.values[j] = (f0 / (1.0 + cplx(0.0, 0.5 * t) * f0)).real();
  }
  return from_grid(out, N_out);
}

// ---- rotation and normalization ----

RealCircleField rotate(const RealCircleField& f, double shift) {
  RealCircleField g = f;
  auto& c = g.nonnegative();
  for (int k = 1; k <= f.max_mode(); ++k) c[k] *= std::polar(1.0, k * shift);
  return g;
}

std::pair<RealCircleField, Normalization> normalize_initial_data(const RealCircleField& w0) {
  std::vector<ZeroPoint> zeros;
  try {
    zeros = find_zeros(w0);
  } catch (const DegeneracyError& e) {
    throw RegimeError(std::string("not near the equilibrium manifold: ") + e.what());
  }
  if (zeros.size() != 2)
    throw RegimeError("not near the equilibrium manifold: " + std::to_string(zeros.size()) + " zeros");
  const ZeroPoint& x2 = zeros[0].deriv < 0.0 ? zeros[0] : zeros[1];
  Normalization n;
  n.A = -x2.deriv;
  n.theta_shift = x2.theta;
  n.time_scale = n.A;
  RealCircleField out = rotate(w0, x2.theta) * (1.0 / n.A);
  return {out, n};
}

}  // namespace dglab

#include "dglab/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dglab/errors.hpp"
#include "dglab/dynamics.hpp"
#include "dglab/spectral.hpp"
#include "dglab/weighted_norm.hpp"
#include "fft.hpp"
#include "roots.hpp"

namespace dglab {

namespace {

using detail::safeguarded_newton;
using detail::wrap_angle;

double circular_distance(double a, double b) { return std::abs(wrap_angle(a - b)); }

double coefficient_scale(const RealCircleField& f) {
  double s = std::abs(f[0]);
  for (int k = 1; k <= f.max_mode(); ++k) s += 2.0 * std::abs(f[k]);
  return s;
}

}  // namespace

std::vector<ZeroPoint> find_zeros(const RealCircleField& f, double tol) {
  const int N = f.max_mode();
  const double scale = coefficient_scale(f);
  if (scale == 0.0) throw DomainError("find_zeros: field is identically zero");
  const int M = std::max(4 * N, 64);
  const GridSamples v = to_grid(f, M);
  const GridSamples d = to_grid(derivative(f), M);
  const double h = 2.0 * kPi / M;
  const double ftol = 1e-12 * std::max(1.0, scale);
  auto fd = [&](double t) {
    const PointValue p = evaluate(f, t);
    return std::pair<double, double>{p.value, p.derivative};
  };
  auto dd = [&](double t) {
    return std::pair<double, double>{evaluate(f, t).derivative, evaluate_second_derivative(f, t)};
  };

  std::vector<ZeroPoint> zeros;
  for (int j = 0; j < M; ++j) {
    const int jn = (j + 1) % M;
    const double a = GridSamples::node(j, M), b = a + h;
    const double va = v.values[j], vb = v.values[jn];
    // Tangential contact: |f| has a local minimum of size round-off where f' changes sign.
    const double da = d.values[j], db = d.values[jn];
    if ((da < 0.0) != (db < 0.0) && std::min(std::abs(va), std::abs(vb)) <= 1e-3 * scale) {
      const double tc = safeguarded_newton(dd, a, b, da, 1e-14 * std::max(1.0, scale) * N);
      const double fc = evaluate(f, tc).value;
      if (std::abs(fc) <= 1e-13 * scale)
        throw DegeneracyError("double zero near theta = " + std::to_string(wrap_angle(tc)));
    }
    double t;
    if (va == 0.0) {
      t = a;
    } else if ((va < 0.0) != (vb < 0.0) && vb != 0.0) {
      t = safeguarded_newton(fd, a, b, va, ftol);
    } else {
      continue;
    }
    zeros.push_back({wrap_angle(t), evaluate(f, t).derivative});
  }
  std::sort(zeros.begin(), zeros.end(),
            [](const ZeroPoint& x, const ZeroPoint& y) { return x.theta < y.theta; });
  // a zero sitting on a node may be reported by two neighbouring cells
  std::vector<ZeroPoint> out;
  for (const auto& z : zeros) {
    if (!out.empty() && circular_distance(out.back().theta, z.theta) < 1e-10) continue;
    out.push_back(z);
  }
  if (out.size() > 1 && circular_distance(out.front().theta, out.back().theta) < 1e-10) out.pop_back();
  for (const auto& z : out) {
    if (std::abs(z.deriv) < tol)
      throw DegeneracyError("degenerate zero at theta = " + std::to_string(z.theta) +
                            " (|f'| = " + std::to_string(std::abs(z.deriv)) + ")");
  }
  return out;
}

namespace {

// 2 tan(u/2) - u
double two_tan_half_minus(double u) {
  if (std::abs(u) > 0.2) return 2.0 * std::tan(0.5 * u) - u;
  const double h = 0.5 * u, h2 = h * h;
  return 2.0 * h * h2 *
         (1.0 / 3 + h2 * (2.0 / 15 + h2 * (17.0 / 315 + h2 * (62.0 / 2835 + h2 * (1382.0 / 155925)))));
}

}  // namespace

double pv_integral(const RealCircleField& f, const std::vector<ZeroPoint>& zeros, int M) {
  const GridSamples v = to_grid(f, M);
  const std::size_t m = zeros.size();
  // bracket limits at each zero: -f''/(2a^2) minus the other cot terms
  std::vector<double> limit(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double a = zeros[i].deriv;
    double g = -evaluate_second_derivative(f, zeros[i].theta) / (2.0 * a * a);
    for (std::size_t l = 0; l < m; ++l) {
      if (l == i) continue;
      g -= 1.0 / std::tan(0.5 * (zeros[i].theta - zeros[l].theta)) / (2.0 * zeros[l].deriv);
    }
    limit[i] = g;
  }
  // Near a zero both 1/f and the cot term are large and cancel. There f(x+u) is rebuilt as
  // f(x) + a u + r(u) with r from the cancellation-free Taylor remainder.
  double window = 0.1;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t l = i + 1; l < m; ++l)
      window = std::min(window, 0.5 * circular_distance(zeros[i].theta, zeros[l].theta));
  std::vector<RealCircleField> local;
  local.reserve(m);
  for (const auto& z : zeros) local.push_back(rotate(f, z.theta));
  std::vector<TaylorSplit> split;
  split.reserve(m);
  for (const auto& g : local) split.emplace_back(g);

  double sum = 0.0;
  for (int j = 0; j < M; ++j) {
    const double t = GridSamples::node(j, M);
    std::size_t near = m;
    double u = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double d = wrap_angle(t - zeros[i].theta);
      if (std::abs(d) < window) {
        near = i;
        u = d;
        break;
      }
    }
    double g = 0.0;
    if (near == m) {
      g = 1.0 / v.values[j];
      for (std::size_t i = 0; i < m; ++i)
        g -= 1.0 / std::tan(0.5 * (t - zeros[i].theta)) / (2.0 * zeros[i].deriv);
    } else if (std::abs(u) < 1e-12) {
      g = limit[near];
    } else {
      const double a = zeros[near].deriv;
      const double c0 = split[near].c0();
      const double r = split[near].remainder(u);
      const double T = 2.0 * std::tan(0.5 * u);
      const double fv = c0 + a * u + r;
      g = (a * two_tan_half_minus(u) - c0 - r) / (fv * a * T);
      for (std::size_t i = 0; i < m; ++i)
        if (i != near) g -= 1.0 / std::tan(0.5 * (t - zeros[i].theta)) / (2.0 * zeros[i].deriv);
    }
    sum += g;
  }
  return sum * 2.0 * kPi / M;
}

OrbitInvariants orbit_invariants(const RealCircleField& f, double tol) {
  OrbitInvariants inv;
  inv.zeros = find_zeros(f, tol);
  inv.count = static_cast<int>(inv.zeros.size());
  int M = detail::fft_friendly_size(std::max(256, 8 * (2 * f.max_mode() + 1)));
  double prev = pv_integral(f, inv.zeros, M);
  for (int it = 0; it < 12; ++it) {
    M *= 2;
    const double cur = pv_integral(f, inv.zeros, M);
    if (std::abs(cur - prev) <= 1e-10 * std::max(1.0, std::abs(cur))) {
      inv.pv = cur;
      return inv;
    }
    prev = cur;
  }
  throw Error("p.v. quadrature did not converge");
}

Amplitudes predict_amplitudes(const RealCircleField& f0) {
  const auto zeros = find_zeros(f0);
  if (zeros.size() != 2)
    throw RegimeError("expected exactly two zeros, found " + std::to_string(zeros.size()));
  Amplitudes a;
  for (const auto& z : zeros) {
    if (z.deriv < 0.0) a.plus = -z.deriv;
    else a.minus = z.deriv;
  }
  return a;
}

EquilibriumFit fit_equilibrium(const RealCircleField& f, double s) {
  EquilibriumFit fit;
  const cplx c1 = f[1];
  // A sin(theta - theta0) has c_1 = A e^{-i theta0} / (2i)
  fit.A = 2.0 * std::abs(c1);
  fit.theta0 = fit.A > 0.0 ? wrap_angle(-std::arg(cplx(0.0, 2.0) * c1)) : 0.0;
  RealCircleField r = f;
  if (r.max_mode() >= 1) r.set(1, 0.0);
  fit.residual = sobolev_norm(r, s);
  return fit;
}

DriftReport drift_report(const std::vector<InvariantSample>& series) {
  if (series.size() < 2) throw ParameterError("drift_report needs at least two records");
  DriftReport rep;
  const InvariantSample& first = series.front();
  const bool have_ref = first.invariants.has_value();
  std::vector<ZeroPoint> ref, tracked;
  if (have_ref) ref = tracked = first.invariants->zeros;
  bool tracking = have_ref;
  if (!have_ref) {
    rep.topology_change = true;
    rep.topology_change_t = first.t;
  }
  for (const auto& rec : series) {
    DriftRow row;
    row.t = rec.t;
    row.mean_drift = std::abs(rec.mean - first.mean);
    row.zero_count = rec.invariants ? rec.invariants->count : -1;
    if (have_ref && rec.invariants) row.pv_drift = std::abs(rec.invariants->pv - first.invariants->pv);
    if (tracking) {
      bool ok = rec.invariants && rec.invariants->count == static_cast<int>(ref.size());
      std::vector<ZeroPoint> next(tracked.size());
      if (ok) {
        std::vector<bool> used(tracked.size(), false);
        for (std::size_t i = 0; i < tracked.size() && ok; ++i) {
          double best = 1e300;
          std::size_t bj = 0;
          for (std::size_t j = 0; j < rec.invariants->zeros.size(); ++j) {
            const double dist = circular_distance(tracked[i].theta, rec.invariants->zeros[j].theta);
            if (!used[j] && dist < best) {
              best = dist;
              bj = j;
            }
          }
          if (best > kPi / 4) {
            ok = false;
          } else {
            used[bj] = true;
            next[i] = rec.invariants->zeros[bj];
          }
        }
      }
      if (ok) {
        tracked = next;
        for (std::size_t i = 0; i < ref.size(); ++i)
          row.deriv_drift = std::max(row.deriv_drift,
                                     std::abs(tracked[i].deriv - ref[i].deriv) / std::abs(ref[i].deriv));
      } else {
        tracking = false;
        rep.topology_change = true;
        rep.topology_change_t = rec.t;
      }
    }
    rep.max_deriv_drift = std::max(rep.max_deriv_drift, row.deriv_drift);
    rep.max_pv_drift = std::max(rep.max_pv_drift, row.pv_drift);
    rep.max_mean_drift = std::max(rep.max_mean_drift, row.mean_drift);
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace dglab

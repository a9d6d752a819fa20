#include "dglab/weighted_norm.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "dglab/errors.hpp"

namespace dglab {

namespace {

constexpr int kGaussOrder = 20;
constexpr int kMaxShell = 150;
constexpr double kSnapTol = 1e-12;
constexpr double kStopTol = 1e-17;

struct GaussRule {
  std::array<double, kGaussOrder> x{}, w{};
  GaussRule() {
    using G = boost::math::quadrature::gauss<double, kGaussOrder>;
    const auto& a = G::abscissa();
    const auto& wt = G::weights();
    // boost stores the non-negative half
    int i = 0;
    for (std::size_t j = 0; j < a.size(); ++j) {
      x[i] = a[j];
      w[i++] = wt[j];
      x[i] = -a[j];
      w[i++] = wt[j];
    }
  }
};

const GaussRule& gauss_rule() {
  static const GaussRule r;
  return r;
}

void check_gamma(double gamma) {
  if (!(gamma > 1.5 && gamma < 2.0))
    throw ParameterError("weighted norm requires gamma in (3/2, 2)");
}

// Nodes of shell j = [pi 2^{-j-1}, pi 2^{-j}] mirrored to negative theta; weights include
// |sin(theta/2)|^{-2 gamma}.
void shell_nodes(int j, double gamma, double h, std::vector<double>& th, std::vector<double>& wt) {
  th.clear();
  wt.clear();
  const double hi = kPi * std::ldexp(1.0, -j), lo = 0.5 * hi;
  const int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) / h)));
  const double pw = (hi - lo) / panels;
  const GaussRule& g = gauss_rule();
  for (int p = 0; p < panels; ++p) {
    const double a = lo + p * pw, mid = a + 0.5 * pw;
    for (int i = 0; i < kGaussOrder; ++i) {
      const double t = mid + 0.5 * pw * g.x[i];
      const double w = 0.5 * pw * g.w[i] * std::pow(std::sin(0.5 * t), -2.0 * gamma);
      th.push_back(t);
      wt.push_back(w);
      th.push_back(-t);
      wt.push_back(w);
    }
  }
}

// Shell-by-shell integration of sum_i w_i F(theta_i), F >= 0. Divergence is declared when
// shell contributions keep growing below the resolution scale theta_res.
template <class ShellSum>
NormResult integrate_shells(double gamma, double h, ShellSum&& shell_sum) {
  std::vector<double> th, wt;
  const double theta_res = 0.25 * h;
  double total = 0.0, prev = -1.0;
  int growth = 0, quiet = 0;
  for (int j = 0; j < kMaxShell; ++j) {
    shell_nodes(j, gamma, h, th, wt);
    const double s = shell_sum(th, wt);
    if (!std::isfinite(s)) return {std::numeric_limits<double>::infinity(), true};
    total += s;
    const bool resolved = kPi * std::ldexp(1.0, -j) < theta_res;
    if (resolved) {
      growth = (prev >= 0.0 && s > prev && s > 0.0) ? growth + 1 : 0;
      if (growth >= 3) return {std::numeric_limits<double>::infinity(), true};
      quiet = (s <= kStopTol * total) ? quiet + 1 : 0;
      if (quiet >= 3 || total == 0.0) {
        if (prev > 0.0 && s < prev) total += s * (s / prev) / (1.0 - s / prev);
        return {std::sqrt(total), false};
      }
    }
    prev = s;
  }
  // no convergence under refinement
  return {std::numeric_limits<double>::infinity(), true};
}

double panel_width_for(int N) { return std::min(0.25, 4.0 / (N + 1.0)); }

}  // namespace

double sin_minus_x(double x) {
  if (std::abs(x) >= 0.5) return std::sin(x) - x;
  const double x2 = x * x;
  // -x^3/3! + x^5/5! - ... through x^15
  double term = -x * x2 / 6.0, sum = term;
  for (int n = 5; n <= 15; n += 2) {
    term *= -x2 / ((n - 1.0) * n);
    sum += term;
  }
  return sum;
}

TaylorSplit::TaylorSplit(const RealCircleField& f) : f_(&f) {
  const auto& c = f.nonnegative();
  c0_ = c[0].real();
  scale0_ = std::abs(c[0].real());
  for (int k = 1; k <= f.max_mode(); ++k) {
    c0_ += 2.0 * c[k].real();
    c1_ -= 2.0 * k * c[k].imag();
    scale0_ += 2.0 * std::abs(c[k]);
    scale1_ += 2.0 * k * std::abs(c[k]);
  }
}

double TaylorSplit::remainder(double theta) const {
  // C_k = cos(k t) - 1, S_k = sin(k t), T_k = sin(k t) - k t
  const double s1 = std::sin(theta);
  const double h = std::sin(0.5 * theta);
  const double c1m = -2.0 * h * h;
  const double smx = sin_minus_x(theta);
  double C = c1m, S = s1, T = smx, r = 0.0;
  const auto& c = f_->nonnegative();
  const int N = f_->max_mode();
  for (int k = 1; k <= N; ++k) {
    r += 2.0 * (c[k].real() * C - c[k].imag() * T);
    const double Cn = C + c1m * (1.0 + C) - S * s1;
    const double Sn = S * (1.0 + c1m) + (1.0 + C) * s1;
    T = T + S * c1m + C * s1 + smx;
    C = Cn;
    S = Sn;
  }
  return r;
}

NormResult y0_norm(const RealCircleField& f, double gamma) {
  check_gamma(gamma);
  TaylorSplit split(f);
  double c0 = split.c0(), c1 = split.c1();
  if (std::abs(c0) <= kSnapTol * split.scale0()) c0 = 0.0;
  if (std::abs(c1) <= kSnapTol * split.scale1()) c1 = 0.0;
  const double h = panel_width_for(f.max_mode());
  return integrate_shells(gamma, h, [&](const std::vector<double>& th, const std::vector<double>& wt) {
    double s = 0.0;
    for (std::size_t i = 0; i < th.size(); ++i) {
      const double v = c0 + c1 * th[i] + split.remainder(th[i]);
      s += wt[i] * v * v;
    }
    return s;
  });
}

NormResult y0_norm(const std::function<double(double)>& f, double gamma, double panel_width) {
  check_gamma(gamma);
  if (!(panel_width > 0.0)) throw ParameterError("panel width must be positive");
  return integrate_shells(gamma, std::min(panel_width, 0.25),
                          [&](const std::vector<double>& th, const std::vector<double>& wt) {
                            double s = 0.0;
                            for (std::size_t i = 0; i < th.size(); ++i) {
                              const double v = f(th[i]);
                              s += wt[i] * v * v;
                            }
                            return s;
                          });
}

QuotientFit quotient_y_fit(const RealCircleField& f, double gamma) {
  check_gamma(gamma);
  TaylorSplit split(f);
  const double c1 = split.c1();
  const double h = panel_width_for(f.max_mode());
  // p = P0 f = r + c1 (theta - sin theta), q = cos theta - 1
  std::vector<double> P, Q, W;
  double pp = 0.0, pq = 0.0, qq = 0.0;
  const NormResult conv =
      integrate_shells(gamma, h, [&](const std::vector<double>& th, const std::vector<double>& wt) {
        double s = 0.0;
        for (std::size_t i = 0; i < th.size(); ++i) {
          const double t = th[i];
          const double p = split.remainder(t) - c1 * sin_minus_x(t);
          const double hs = std::sin(0.5 * t);
          const double q = -2.0 * hs * hs;
          P.push_back(p);
          Q.push_back(q);
          W.push_back(wt[i]);
          pp += wt[i] * p * p;
          pq += wt[i] * p * q;
          qq += wt[i] * q * q;
          s += wt[i] * (p * p + q * q);
        }
        return s;
      });
  QuotientFit fit;
  if (conv.divergent) {
    fit.norm = std::numeric_limits<double>::infinity();
    return fit;
  }
  const double b = qq > 0.0 ? pq / qq : 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < P.size(); ++i) {
    const double g = P[i] - b * Q[i];
    acc += W[i] * g * g;
  }
  fit.norm = std::sqrt(acc);
  fit.b = b;
  fit.c = c1;
  fit.a = split.c0() - b;
  return fit;
}

NormResult quotient_y_norm(const RealCircleField& f, double gamma) {
  const QuotientFit fit = quotient_y_fit(f, gamma);
  return {fit.norm, !std::isfinite(fit.norm)};
}

}  // namespace dglab

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <vector>

#include "dglab/errors.hpp"
#include "dglab/linear_ops.hpp"

namespace dglab {

namespace {

using GL = boost::math::quadrature::gauss<double, 20>;

struct Node {
  double x, w;
};

// Composite 20-point Gauss-Legendre nodes on [a, b].
std::vector<Node> gl_nodes(double a, double b, int panels) {
  std::vector<Node> out;
  const auto& x = GL::abscissa();
  const auto& w = GL::weights();
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h, half = 0.5 * h;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == 0.0) {
        out.push_back({mid, w[i] * half});
        continue;
      }
      out.push_back({mid - half * x[i], w[i] * half});
      out.push_back({mid + half * x[i], w[i] * half});
    }
  }
  return out;
}

void check_range(double s_lo, double s_hi) {
  if (!(s_hi > s_lo) || !std::isfinite(s_lo) || !std::isfinite(s_hi))
    throw ParameterError("need finite s_lo < s_hi");
}

}  // namespace

double smooth_bump(double s, double lo, double hi) {
  const double u = (2.0 * s - lo - hi) / (hi - lo);
  if (std::abs(u) >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - u * u));
}

double strip_spectral_energy(const std::function<double(double)>& phi, double s_lo, double s_hi) {
  check_range(s_lo, s_hi);
  double sum = 0.0;
  for (const Node& n : gl_nodes(s_lo, s_hi, 32)) {
    const double p = phi(n.x);
    sum += n.w * p * p * n.x * std::sinh(kPi * n.x);
  }
  return 2.0 * kPi * sum;
}

cplx strip_synthesize(const std::function<double(double)>& phi, double s_lo, double s_hi, cplx z) {
  check_range(s_lo, s_hi);
  if (std::abs(z) >= 1.0) throw DomainError("strip_synthesize needs |z| < 1");
  const cplx w = std::log((1.0 - z) / (1.0 + z));
  cplx sum{};
  for (const Node& n : gl_nodes(s_lo, s_hi, 32)) sum += n.w * phi(n.x) * std::exp(cplx(0.0, n.x) * w);
  return sum;
}

double strip_dirichlet_energy(const std::function<double(double)>& phi, double s_lo, double s_hi) {
  check_range(s_lo, s_hi);
  // F'(w) = int i s phi(s) e^{isw} ds, integrated over |Im w| < pi/2.
  const std::vector<Node> sn = gl_nodes(s_lo, s_hi, 32);
  std::vector<cplx> g(sn.size());
  for (std::size_t j = 0; j < sn.size(); ++j) g[j] = cplx(0.0, sn[j].x * phi(sn[j].x) * sn[j].w);
  const std::vector<Node> yn = gl_nodes(-0.5 * kPi, 0.5 * kPi, 2);
  std::vector<double> decay(sn.size() * yn.size());
  for (std::size_t i = 0; i < yn.size(); ++i)
    for (std::size_t j = 0; j < sn.size(); ++j) decay[i * sn.size() + j] = std::exp(-sn[j].x * yn[i].x);

  const double panel = 0.25 * 2.0 * kPi / std::max(std::abs(s_lo), std::abs(s_hi));
  std::vector<cplx> a(sn.size());
  auto band = [&](double x0, double x1) {
    const int panels = std::max(1, static_cast<int>(std::ceil((x1 - x0) / panel)));
    double sum = 0.0;
    for (const Node& xn : gl_nodes(x0, x1, panels)) {
      for (std::size_t j = 0; j < sn.size(); ++j) a[j] = g[j] * std::exp(cplx(0.0, sn[j].x * xn.x));
      double inner = 0.0;
      for (std::size_t i = 0; i < yn.size(); ++i) {
        cplx f{};
        const double* d = &decay[i * sn.size()];
        for (std::size_t j = 0; j < sn.size(); ++j) f += a[j] * d[j];
        inner += yn[i].w * std::norm(f);
      }
      sum += xn.w * inner;
    }
    return sum;
  };

  double W = 8.0;
  double total = band(-W, W);
  for (int it = 0; it < 12; ++it) {
    const double add = band(W, 2.0 * W) + band(-2.0 * W, -W);
    total += add;
    W *= 2.0;
    if (add <= 1e-13 * total) return total;
  }
  throw DomainError("strip energy did not converge in the horizontal direction");
}

}  // namespace dglab

#include "dglab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dglab/errors.hpp"
#include "dglab/weighted_norm.hpp"
#include "fft.hpp"

namespace dglab {

namespace {

void require_grid(int M, int N) {
  if (M < 2 * N + 1)
    throw AliasingError("grid of " + std::to_string(M) + " nodes cannot carry max mode " +
                        std::to_string(N) + " (need M >= 2N+1)");
}

template <class Fn>
RealCircleField map_modes(const RealCircleField& f, Fn&& fn) {
  RealCircleField g(f.max_mode());
  auto& out = g.nonnegative();
  const auto& in = f.nonnegative();
  for (int k = 0; k <= f.max_mode(); ++k) out[k] = fn(k, in[k]);
  out[0] = out[0].real();
  return g;
}

}  // namespace

GridSamples to_grid(const RealCircleField& f, int M) {
  require_grid(M, f.max_mode());
  GridSamples s;
  s.values.resize(static_cast<std::size_t>(M));
  detail::grid_backward(f.nonnegative().data(), f.max_mode() + 1, s.values.data(), M);
  return s;
}

RealCircleField from_grid(const GridSamples& samples, int N) {
  const int M = samples.size();
  require_grid(M, N);
  std::vector<cplx> spec(static_cast<std::size_t>(M / 2 + 1));
  detail::grid_forward(samples.values.data(), spec.data(), M);
  spec.resize(static_cast<std::size_t>(N) + 1);
  return RealCircleField::from_nonnegative(std::move(spec));
}

RealCircleField project_function(const std::function<double(double)>& f, int N, int M) {
  GridSamples s;
  s.values.resize(static_cast<std::size_t>(M));
  for (int j = 0; j < M; ++j) s.values[j] = f(GridSamples::node(j, M));
  return from_grid(s, N);
}

RealCircleField hilbert(const RealCircleField& f) {
  return map_modes(f, [](int k, cplx c) { return k == 0 ? cplx{} : cplx(0.0, -1.0) * c; });
}

RealCircleField derivative(const RealCircleField& f) {
  return map_modes(f, [](int k, cplx c) { return cplx(0.0, k) * c; });
}

RealCircleField lambda_op(const RealCircleField& f) {
  return map_modes(f, [](int k, cplx c) { return -static_cast<double>(k) * c; });
}

RealCircleField biot_savart(const RealCircleField& f, const Gauge& gauge) {
  // (Hf)_k / (ik) = -c_k / |k|
  RealCircleField u =
      map_modes(f, [](int k, cplx c) { return k == 0 ? cplx{} : -c / static_cast<double>(k); });
  if (const auto* pz = std::get_if<PointZero>(&gauge)) {
    u.set(0, -evaluate(u, pz->theta0).value);
  }
  return u;
}

int product_grid_size(int N) { return detail::fft_friendly_size(3 * N + 1); }

RealCircleField multiply(const RealCircleField& a, const RealCircleField& b, int out_mode,
                         bool exact) {
  const int na = a.max_mode(), nb = b.max_mode();
  int M;
  if (exact) {
    // aliases of modes up to na+nb must land beyond out_mode
    M = detail::fft_friendly_size(std::max(na + nb + out_mode + 1, 2 * std::max(na, nb) + 1));
  } else {
    M = 2 * std::max({out_mode, na, nb}) + 1;
  }
  GridSamples ga = to_grid(a, M);
  const GridSamples gb = to_grid(b, M);
  for (int j = 0; j < M; ++j) ga.values[j] *= gb.values[j];
  return from_grid(ga, out_mode);
}

PointValue evaluate(const RealCircleField& f, double theta) {
  const auto& c = f.nonnegative();
  double v = c[0].real(), d = 0.0;
  for (int k = 1; k <= f.max_mode(); ++k) {
    const double ck = std::cos(k * theta), sk = std::sin(k * theta);
    const double re = c[k].real(), im = c[k].imag();
    v += 2.0 * (re * ck - im * sk);
    d += 2.0 * k * (-re * sk - im * ck);
  }
  return {v, d};
}

double evaluate_second_derivative(const RealCircleField& f, double theta) {
  const auto& c = f.nonnegative();
  double d2 = 0.0;
  for (int k = 1; k <= f.max_mode(); ++k) {
    const double ck = std::cos(k * theta), sk = std::sin(k * theta);
    d2 -= 2.0 * k * k * (c[k].real() * ck - c[k].imag() * sk);
  }
  return d2;
}

RealCircleField project_P0(const RealCircleField& f) {
  const PointValue p = evaluate(f, 0.0);
  RealCircleField g = f.resized(std::max(f.max_mode(), 1));
  g.set(0, g[0] - p.value);
  g.set(1, g[1] - p.derivative * cplx(0.0, -0.5));
  return g;
}

double sobolev_norm(const RealCircleField& f, double s) {
  double acc = 0.0;
  const auto& c = f.nonnegative();
  for (int k = 1; k <= f.max_mode(); ++k) acc += 2.0 * std::pow(k, 2.0 * s) * std::norm(c[k]);
  return std::sqrt(acc);
}

double l2_mean_square(const RealCircleField& f) {
  const auto& c = f.nonnegative();
  double acc = std::norm(c[0]);
  for (int k = 1; k <= f.max_mode(); ++k) acc += 2.0 * std::norm(c[k]);
  return acc;
}

double sup_norm(const RealCircleField& f, int M) {
  if (M <= 0) M = 4 * (2 * f.max_mode() + 1);
  const GridSamples g = to_grid(f, M);
  double m = 0.0;
  for (double v : g.values) m = std::max(m, std::abs(v));
  return m;
}

NormResult norm(const RealCircleField& f, const NormKind& kind) {
  return std::visit(
      [&](const auto& k) -> NormResult {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Sobolev>) {
          return {sobolev_norm(f, k.s), false};
        } else if constexpr (std::is_same_v<K, MMultiplier>) {
          double acc = 0.0;
          const auto& c = f.nonnegative();
          for (int j = 1; j <= f.max_mode(); ++j)
            acc += 2.0 * (double(j) * j - 1.0) * (j + 1.0) * std::norm(c[j]);
          return {std::sqrt(acc), false};
        } else if constexpr (std::is_same_v<K, Y0>) {
          return y0_norm(f, k.gamma);
        } else {
          return quotient_y_norm(f, k.gamma);
        }
      },
      kind);
}

}  // namespace dglab

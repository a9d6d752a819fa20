#include <algorithm>
#include <cmath>

#include "dglab/dynamics.hpp"
#include "dglab/errors.hpp"
#include "dglab/spectral.hpp"
#include "fft.hpp"

namespace dglab {

double mobius_flow(double theta, double t) {
  const double tau = std::tanh(0.5 * t);
  const cplx z = std::polar(1.0, theta);
  return std::arg((z - tau) / (1.0 - tau * z));
}

double mobius_flow_derivative(double theta, double t) {
  const double tau = std::tanh(0.5 * t);
  const cplx z = std::polar(1.0, theta);
  return (1.0 - tau * tau) / std::norm(1.0 - tau * z);
}

double pushforward_value(const std::function<double(double)>& xi0, double t, double theta) {
  const double w = mobius_flow(theta, -t);
  return mobius_flow_derivative(w, t) * xi0(w);
}

double pushforward_value(const RealCircleField& xi0, double t, double theta) {
  return pushforward_value([&](double x) { return evaluate(xi0, x).value; }, t, theta);
}

PushforwardResult exact_pushforward(const RealCircleField& xi0, double t, int N_out) {
  if (N_out < 0) N_out = xi0.max_mode();
  // features near the attracting point shrink like e^{-|t|}
  const double stretch = std::exp(std::min(std::abs(t), 12.0));
  const double want = std::max(4.0 * (2 * N_out + 1), 4.0 * (2 * xi0.max_mode() + 1) * stretch);
  const int M = detail::fft_friendly_size(static_cast<int>(std::min(want, double(1 << 22))));
  GridSamples s;
  s.values.resize(static_cast<std::size_t>(M));
  for (int j = 0; j < M; ++j) s.values[j] = pushforward_value(xi0, t, GridSamples::node(j, M));
  const int Nmax = (M - 1) / 2;
  const RealCircleField full = from_grid(s, Nmax);
  double total = 0.0, tail = 0.0;
  for (int k = 0; k <= Nmax; ++k) {
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

}  // namespace dglab

#pragma once

#include <algorithm>
#include <cmath>

namespace dglab::detail {

// Newton iteration kept inside a sign-change bracket [a, b]; bisects whenever the Newton
// step leaves the bracket. fd(x) returns {f(x), f'(x)}; fa is f(a).
template <class Fn>
double safeguarded_newton(Fn&& fd, double a, double b, double fa, double ftol) {
  double x = 0.5 * (a + b);
  for (int it = 0; it < 200; ++it) {
    const auto [v, d] = fd(x);
    if (std::abs(v) <= ftol) {
      // polish to round-off: a loose zero leaves a pole offset that p.v. quadratures amplify
      double fx = std::abs(v), dx = d, vx = v;
      for (int p = 0; p < 4 && fx > 0.0 && dx != 0.0; ++p) {
        const double xp = x - vx / dx;
        const auto [vp, dp] = fd(xp);
        if (!(std::abs(vp) < fx)) break;
        x = xp;
        fx = std::abs(vp);
        vx = vp;
        dx = dp;
      }
      return x;
    }
    if ((v < 0.0) == (fa < 0.0)) {
      a = x;
      fa = v;
    } else {
      b = x;
    }
    double xn = (d != 0.0) ? x - v / d : 0.5 * (a + b);
    if (!(xn > std::min(a, b) && xn < std::max(a, b))) xn = 0.5 * (a + b);
    if (std::abs(b - a) <= 4e-16 * (1.0 + std::abs(x))) return xn;
    x = xn;
  }
  return x;
}

inline double wrap_angle(double t) {
  constexpr double pi = 3.14159265358979323846;
  while (t > pi) t -= 2.0 * pi;
  while (t <= -pi) t += 2.0 * pi;
  return t;
}

}  // namespace dglab::detail

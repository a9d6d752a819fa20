#pragma once

#include <functional>

#include "dglab/field.hpp"

namespace dglab {

// Splits f(theta) = c0 + c1*theta + r(theta) with r = O(theta^2), evaluating r through
// cancellation-free recurrences so that r keeps full relative accuracy near theta = 0.
class TaylorSplit {
 public:
  explicit TaylorSplit(const RealCircleField& f);

  double c0() const { return c0_; }
  double c1() const { return c1_; }
  // Sums used to decide when c0/c1 are round-off.
  double scale0() const { return scale0_; }
  double scale1() const { return scale1_; }

  double remainder(double theta) const;
  double value(double theta) const { return c0_ + c1_ * theta + remainder(theta); }

 private:
  const RealCircleField* f_;
  double c0_ = 0.0, c1_ = 0.0, scale0_ = 0.0, scale1_ = 0.0;
};

// sin(x) - x without cancellation.
double sin_minus_x(double x);

// Weighted L^2 norm with weight |sin(theta/2)|^{-2 gamma}, gamma in (3/2, 2).
NormResult y0_norm(const RealCircleField& f, double gamma);

// min over a, b, c of the Y0 norm of f - a - b cos - c sin.
struct QuotientFit {
  double norm = 0.0;
  double a = 0.0, b = 0.0, c = 0.0;
};
QuotientFit quotient_y_fit(const RealCircleField& f, double gamma);
NormResult quotient_y_norm(const RealCircleField& f, double gamma);

// Y0 norm of a pointwise-defined function. f must be accurate to relative precision near 0;
// panel_width is the largest Gauss panel (about 4 / effective bandwidth).
NormResult y0_norm(const std::function<double(double)>& f, double gamma, double panel_width);

}  // namespace dglab

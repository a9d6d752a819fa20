#pragma once

#include <functional>

#include "dglab/field.hpp"

namespace dglab {

// Field -> samples on M nodes. Requires M >= 2N+1 (AliasingError otherwise).
GridSamples to_grid(const RealCircleField& f, int M);
// Samples -> field of max mode N. Requires M >= 2N+1.
RealCircleField from_grid(const GridSamples& samples, int N);

// Samples an arbitrary function on M nodes and keeps modes |k| <= N.
RealCircleField project_function(const std::function<double(double)>& f, int N, int M);

// Multiplier -i sign(k).
RealCircleField hilbert(const RealCircleField& f);
RealCircleField derivative(const RealCircleField& f);
// Lambda = -H d/dtheta, multiplier -|k| under the convention above.
RealCircleField lambda_op(const RealCircleField& f);

// u with u_theta = H f; the constant is fixed by the gauge.
RealCircleField biot_savart(const RealCircleField& f, const Gauge& gauge = MeanZero{});

// Exact product a*b truncated to |k| <= out_mode. With exact == false the product is
// collocated on 2*out_mode+1 nodes and aliases.
RealCircleField multiply(const RealCircleField& a, const RealCircleField& b, int out_mode,
                         bool exact = true);

struct PointValue {
  double value = 0.0;
  double derivative = 0.0;
};
// Direct series summation.
PointValue evaluate(const RealCircleField& f, double theta);
double evaluate_second_derivative(const RealCircleField& f, double theta);

// f - f(0) - f'(0) sin(theta)
RealCircleField project_P0(const RealCircleField& f);

NormResult norm(const RealCircleField& f, const NormKind& kind);
double sobolev_norm(const RealCircleField& f, double s);
double l2_mean_square(const RealCircleField& f);  // (1/2pi) int f^2 = sum |c_k|^2
// Max |f| over an M-node grid (M defaults to 4(2N+1)).
double sup_norm(const RealCircleField& f, int M = 0);

// Node count for exact quadratic products of max-mode-N fields.
int product_grid_size(int N);

}  // namespace dglab

#pragma once

#include <complex>
#include <span>
#include <variant>
#include <vector>

namespace dglab {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Band-limited real function on the circle, stored as its Fourier coefficients
//   c_k = (1/2pi) \int f(theta) e^{-ik theta} dtheta,  |k| <= N.
// Only k >= 0 is stored; c_{-k} = conj(c_k) holds by construction.
class RealCircleField {
 public:
  RealCircleField() : RealCircleField(0) {}
  explicit RealCircleField(int max_mode);

  // c[k] for k = 0..N; Im c[0] is discarded.
  static RealCircleField from_nonnegative(std::vector<cplx> c);
  // c[j] holds k = j - N for j = 0..2N. Throws InputError unless Hermitian.
  static RealCircleField from_symmetric(std::span<const cplx> c);

  static RealCircleField constant(double value);
  static RealCircleField cos_mode(int m, double amplitude = 1.0);
  static RealCircleField sin_mode(int m, double amplitude = 1.0);

  int max_mode() const { return static_cast<int>(c_.size()) - 1; }

  // Coefficient for any integer k (zero outside the band).
  cplx operator[](int k) const;
  // Sets c_k (and implicitly c_{-k}); k < 0 sets the conjugate of c_{-k}.
  void set(int k, cplx value);

  const std::vector<cplx>& nonnegative() const { return c_; }
  std::vector<cplx>& nonnegative() { return c_; }

  double mean() const { return c_[0].real(); }
  bool is_finite() const;

  // Truncated or zero-padded copy with max mode n.
  RealCircleField resized(int n) const;

  RealCircleField& operator+=(const RealCircleField& other);
  RealCircleField& operator-=(const RealCircleField& other);
  RealCircleField& operator*=(double s);

  friend RealCircleField operator+(RealCircleField a, const RealCircleField& b) { return a += b; }
  friend RealCircleField operator-(RealCircleField a, const RealCircleField& b) { return a -= b; }
  friend RealCircleField operator*(RealCircleField a, double s) { return a *= s; }
  friend RealCircleField operator*(double s, RealCircleField a) { return a *= s; }
  friend RealCircleField operator-(RealCircleField a) { return a *= -1.0; }

 private:
  std::vector<cplx> c_;
};

// Equispaced samples at theta_j = -pi + 2 pi j / M.
struct GridSamples {
  std::vector<double> values;

  int size() const { return static_cast<int>(values.size()); }
  static double node(int j, int M) { return -kPi + 2.0 * kPi * j / M; }
};

struct MeanZero {};
struct PointZero {
  double theta0 = 0.0;
};
using Gauge = std::variant<MeanZero, PointZero>;

struct Sobolev {
  double s = 1.0;
};
struct Y0 {
  double gamma = 1.75;
};
struct MMultiplier {};
struct QuotientY {
  double gamma = 1.75;
};
using NormKind = std::variant<Sobolev, Y0, MMultiplier, QuotientY>;

struct NormResult {
  double value = 0.0;
  bool divergent = false;
};

}  // namespace dglab

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "dglab/errors.hpp"
#include "dglab/io.hpp"
#include "dglab/spectral.hpp"
#include "dglab/weighted_norm.hpp"
#include "test_support.hpp"

using namespace dglab;
using dglab::testing::max_coeff_diff;
using dglab::testing::random_field;

TEST(Grid, CosineSamples) {
  const GridSamples s = to_grid(RealCircleField::cos_mode(1), 8);
  ASSERT_EQ(s.size(), 8);
  for (int j = 0; j < 8; ++j) EXPECT_NEAR(s.values[j], std::cos(GridSamples::node(j, 8)), 1e-15);
}

TEST(Grid, RoundTrip) {
  std::mt19937_64 rng(7);
  const RealCircleField f = random_field(16, rng);
  EXPECT_LT(max_coeff_diff(from_grid(to_grid(f, 64), 16), f), 1e-15);
}

TEST(Grid, OddSizedRoundTrip) {
  std::mt19937_64 rng(8);
  const RealCircleField f = random_field(10, rng);
  EXPECT_LT(max_coeff_diff(from_grid(to_grid(f, 21), 10), f), 1e-15);
}

TEST(Grid, AliasingRejected) {
  EXPECT_THROW(to_grid(RealCircleField::sin_mode(3), 4), AliasingError);
  EXPECT_THROW(from_grid(to_grid(RealCircleField::sin_mode(3), 8), 4), AliasingError);
}

TEST(Field, RejectsNonHermitian) {
  std::vector<cplx> c = {cplx(1, 1), cplx(0.5, 0), cplx(1, 1)};
  EXPECT_THROW(RealCircleField::from_symmetric(c), InputError);
  c = {cplx(1, 1), cplx(0.5, 0), cplx(1, -1)};
  const RealCircleField f = RealCircleField::from_symmetric(c);
  EXPECT_EQ(f[1], cplx(1, -1));
  EXPECT_EQ(f[-1], cplx(1, 1));
}

TEST(Hilbert, MinusSineGivesCosine) {
  EXPECT_LT(max_coeff_diff(hilbert(RealCircleField::sin_mode(1, -1.0)), RealCircleField::cos_mode(1)), 1e-16);
}

TEST(Hilbert, KillsConstants) {
  EXPECT_EQ(hilbert(RealCircleField::constant(1.0))[0], cplx{});
}

TEST(Hilbert, SquaresToMinusOne) {
  std::mt19937_64 rng(3);
  const RealCircleField f = random_field(40, rng, 1.0, true);
  EXPECT_LT(max_coeff_diff(hilbert(hilbert(f)), -f), 1e-16);
}

TEST(Lambda, IsMinusHilbertDerivative) {
  std::mt19937_64 rng(4);
  const RealCircleField f = random_field(30, rng);
  EXPECT_LT(max_coeff_diff(lambda_op(f), -hilbert(derivative(f))), 1e-14);
}

TEST(BiotSavart, Examples) {
  EXPECT_LT(max_coeff_diff(biot_savart(RealCircleField::sin_mode(1, -1.0)), RealCircleField::sin_mode(1)), 1e-16);
  EXPECT_LT(max_coeff_diff(biot_savart(RealCircleField::cos_mode(2)), RealCircleField::cos_mode(2, -0.5)), 1e-16);
  const RealCircleField expect = RealCircleField::cos_mode(2, -0.5) + RealCircleField::constant(0.5);
  EXPECT_LT(max_coeff_diff(biot_savart(RealCircleField::cos_mode(2), PointZero{0.0}), expect), 1e-16);
}

TEST(BiotSavart, DerivativeIsHilbert) {
  std::mt19937_64 rng(5);
  const RealCircleField f = random_field(25, rng, 1.0, true);
  EXPECT_LT(max_coeff_diff(derivative(biot_savart(f, PointZero{0.7})), hilbert(f)), 1e-15);
  EXPECT_NEAR(evaluate(biot_savart(f, PointZero{0.7}), 0.7).value, 0.0, 1e-15);
}

TEST(Multiply, ExactMatchesPointwise) {
  std::mt19937_64 rng(9);
  const RealCircleField a = random_field(12, rng), b = random_field(9, rng);
  const RealCircleField p = multiply(a, b, 21);
  for (double th : {-3.0, -1.1, 0.0, 0.4, 2.9})
    EXPECT_NEAR(evaluate(p, th).value, evaluate(a, th).value * evaluate(b, th).value, 1e-13);
}

TEST(Evaluate, Examples) {
  const RealCircleField ms = RealCircleField::sin_mode(1, -1.0);
  EXPECT_NEAR(evaluate(ms, kPi / 2).value, -1.0, 1e-16);
  EXPECT_NEAR(evaluate(ms, kPi / 2).derivative, 0.0, 1e-16);
  EXPECT_NEAR(evaluate(ms, 0.0).value, 0.0, 1e-16);
  EXPECT_NEAR(evaluate(ms, 0.0).derivative, -1.0, 1e-16);
  const PointValue c3 = evaluate(RealCircleField::cos_mode(3), kPi);
  EXPECT_NEAR(c3.value, -1.0, 1e-15);
  EXPECT_NEAR(c3.derivative, 0.0, 1e-14);
}

TEST(ProjectP0, Examples) {
  const RealCircleField c = project_P0(RealCircleField::cos_mode(1));
  EXPECT_LT(max_coeff_diff(c, RealCircleField::cos_mode(1) - RealCircleField::constant(1.0)), 1e-16);
  EXPECT_LT(max_coeff_diff(project_P0(RealCircleField::sin_mode(1)), RealCircleField(1)), 1e-16);
  const RealCircleField s2 = RealCircleField::sin_mode(2) - RealCircleField::sin_mode(1, 2.0);
  EXPECT_LT(max_coeff_diff(project_P0(RealCircleField::sin_mode(2)), s2), 1e-16);
}

TEST(ProjectP0, VanishesToSecondOrder) {
  std::mt19937_64 rng(11);
  const RealCircleField p = project_P0(random_field(20, rng));
  EXPECT_NEAR(evaluate(p, 0.0).value, 0.0, 1e-14);
  EXPECT_NEAR(evaluate(p, 0.0).derivative, 0.0, 1e-13);
}

TEST(Norm, SobolevOfSine) {
  EXPECT_NEAR(norm(RealCircleField::sin_mode(1), Sobolev{1.5}).value, std::sqrt(0.5), 1e-15);
}

TEST(Norm, MultiplierVanishesOnFirstMode) {
  EXPECT_NEAR(norm(RealCircleField::sin_mode(1), MMultiplier{}).value, 0.0, 1e-16);
  EXPECT_GT(norm(RealCircleField::sin_mode(2), MMultiplier{}).value, 0.0);
}

TEST(Norm, Y0DivergesForSine) {
  EXPECT_TRUE(norm(RealCircleField::sin_mode(1), Y0{1.75}).divergent);
}

TEST(Norm, Y0OfOneMinusCosine) {
  const RealCircleField f = RealCircleField::constant(1.0) - RealCircleField::cos_mode(1);
  const NormResult r = norm(f, Y0{1.75});
  ASSERT_FALSE(r.divergent);
  EXPECT_NEAR(r.value, 4.37838369215963932735811897886, 1e-10);
}

TEST(Norm, Y0RejectsGammaOutsideRange) {
  const RealCircleField f = RealCircleField::constant(1.0) - RealCircleField::cos_mode(1);
  EXPECT_THROW(norm(f, Y0{1.5}), ParameterError);
  EXPECT_THROW(norm(f, Y0{2.0}), ParameterError);
}

TEST(Norm, Y0PointwiseMatchesSpectral) {
  std::mt19937_64 rng(12);
  const RealCircleField f = project_P0(random_field(16, rng, 2.0));
  const TaylorSplit split(f);
  const NormResult a = y0_norm(f, 1.75);
  const NormResult b = y0_norm([&](double th) { return split.remainder(th); }, 1.75, 0.1);
  ASSERT_FALSE(a.divergent);
  ASSERT_FALSE(b.divergent);
  EXPECT_NEAR(a.value, b.value, 1e-10 * a.value);
}

TEST(Norm, QuotientIgnoresFirstModes) {
  std::mt19937_64 rng(13);
  const RealCircleField f = project_P0(random_field(16, rng, 2.0));
  const RealCircleField g = f + RealCircleField::constant(0.3) + RealCircleField::cos_mode(1, -0.7) +
                            RealCircleField::sin_mode(1, 1.9);
  const double a = quotient_y_norm(f, 1.75).value;
  EXPECT_NEAR(quotient_y_norm(g, 1.75).value, a, 1e-9 * a);
  EXPECT_LE(a, y0_norm(f, 1.75).value * (1 + 1e-12));
}

TEST(TaylorSplitTest, RemainderKeepsRelativeAccuracy) {
  const RealCircleField f = RealCircleField::constant(1.0) - RealCircleField::cos_mode(1);
  const TaylorSplit s(f);
  for (double th : {1e-8, 1e-4, 0.3}) {
    const double exact = 2.0 * std::sin(th / 2) * std::sin(th / 2);
    EXPECT_NEAR(s.remainder(th), exact, 1e-14 * exact);
  }
  const double x = 1e-3;
  EXPECT_NEAR(sin_minus_x(x), -x * x * x / 6 + std::pow(x, 5) / 120 - std::pow(x, 7) / 5040, 1e-25);
}

TEST(SupNorm, Basic) {
  EXPECT_NEAR(sup_norm(RealCircleField::cos_mode(3, 2.0)), 2.0, 1e-14);
}

TEST(Dgf1, RoundTrip) {
  std::mt19937_64 rng(21);
  const RealCircleField f = random_field(33, rng);
  std::stringstream ss;
  write_dgf1(ss, f);
  EXPECT_EQ(ss.str().size(), 8u + 16u * 67u);
  const RealCircleField g = read_dgf1(ss);
  EXPECT_EQ(max_coeff_diff(f, g), 0.0);
}

TEST(Dgf1, RejectsCorruptInput) {
  std::stringstream bad_magic("XXXX\x01\x00\x00\x00");
  EXPECT_THROW(read_dgf1(bad_magic), InputError);
  std::stringstream ss;
  write_dgf1(ss, RealCircleField::cos_mode(2));
  std::string s = ss.str();
  std::stringstream truncated(s.substr(0, s.size() - 3));
  EXPECT_THROW(read_dgf1(truncated), InputError);
  std::stringstream trailing(s + "x");
  EXPECT_THROW(read_dgf1(trailing), InputError);
}

TEST(Eig1, RoundTrip) {
  std::vector<cplx> eta = {cplx(1, 2), cplx(-3, 0.5)};
  std::stringstream ss;
  write_eig1(ss, eta, cplx(0, 1.5));
  std::vector<cplx> back;
  cplx lam;
  read_eig1(ss, back, lam);
  EXPECT_EQ(back, eta);
  EXPECT_EQ(lam, cplx(0, 1.5));
}

TEST(Format, RoundTripsDoubles) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23})
    EXPECT_EQ(std::stod(format_double(v)), v);
}

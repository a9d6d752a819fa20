#include <gtest/gtest.h>

#include <cmath>

#include "dglab/errors.hpp"
#include "dglab/heun.hpp"
#include "dglab/linear_ops.hpp"

using namespace dglab;

namespace {

std::vector<cplx> circle(double r, int n) {
  std::vector<cplx> z;
  for (int j = 0; j < n; ++j) z.push_back(std::polar(r, 2.0 * kPi * j / n));
  return z;
}

}  // namespace

TEST(Recursion, HandValuesAtI) {
  const EigenfunctionSeries s = eigen_recursion(cplx(0, 1), 10);
  EXPECT_EQ(s(1), cplx(0, -0.75));
  EXPECT_EQ(s(2), cplx(1, 0));
  EXPECT_EQ(s(3), cplx(0, 0.75));
  EXPECT_EQ(s(4), cplx(-4.0 / 15.0, 0));
}

TEST(Recursion, ZeroIsDegenerate) { EXPECT_THROW(eigen_recursion(cplx{}, 10), DegeneracyError); }

TEST(Recursion, IsEigenvectorAwayFromCutoff) {
  const cplx lam(0.3, 1.7);
  const EigenfunctionSeries s = eigen_recursion(lam, 50);
  ModeVector v(50);
  v.eta = s.eta;
  const ModeVector Lv = apply_tridiagonal(TridiagonalCoeffs::make(OperatorTag::L, 50), v);
  for (int k = 1; k <= 49; ++k) EXPECT_NEAR(std::abs(Lv(k) - lam * v(k)), 0.0, 1e-12 * (1 + std::abs(v(k)))) << k;
}

TEST(Recursion, ReflectionAndConjugation) {
  const cplx lam(0.4, 1.3);
  const auto a = eigen_recursion(lam, 60), b = eigen_recursion(-lam, 60), c = eigen_recursion(std::conj(lam), 60);
  for (int k = 1; k <= 60; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    EXPECT_EQ(b(k) * sign, a(k)) << k;
    EXPECT_EQ(c(k), std::conj(a(k))) << k;
  }
}

TEST(HeunResidual, SmallInsideDisc) {
  const EigenfunctionSeries s = eigen_recursion(cplx(0, 1), 200);
  EXPECT_LE(heun_residual(s, circle(0.5, 32)), 1e-10);
}

TEST(HeunResidual, ConstantSolvesAtZero) {
  EXPECT_EQ(heun_residual_taylor({cplx(1.0)}, cplx{}, circle(0.7, 8)), 0.0);
}

TEST(HeunResidual, DetectsPerturbation) {
  EigenfunctionSeries s = eigen_recursion(cplx(0, 1), 200);
  s.eta[4] += 1e-3;
  EXPECT_GE(heun_residual(s, circle(0.5, 32)), 1e-5);
}

TEST(HeunResidual, DecreasesWithK) {
  const auto z = circle(0.9, 16);
  const double a = heun_residual(eigen_recursion(cplx(0, 1), 50), z);
  const double b = heun_residual(eigen_recursion(cplx(0, 1), 200), z);
  EXPECT_LT(b, a);
}

TEST(HeunResidual, RejectsOutsideDisc) {
  EXPECT_THROW(heun_residual(eigen_recursion(cplx(0, 1), 20), {cplx(1.0, 0.0)}), DomainError);
}

TEST(Indicial, Examples) {
  const IndicialData one = indicial_exponents(SingularPoint::One, cplx(0, 1));
  EXPECT_EQ(one.r1, cplx{});
  EXPECT_NEAR(std::abs(one.r2 - cplx(2, -1)), 0.0, 1e-15);
  const IndicialData m1 = indicial_exponents(SingularPoint::MinusOne, cplx(0, 1));
  EXPECT_NEAR(std::abs(m1.r2 - cplx(2, 1)), 0.0, 1e-15);
  const IndicialData zero = indicial_exponents(SingularPoint::Zero, cplx(0.3, 2));
  EXPECT_NEAR(std::abs(zero.r2 - cplx(-2, 0)), 0.0, 1e-15);
  const IndicialData inf = indicial_exponents(SingularPoint::Infinity, cplx(0.3, 2));
  EXPECT_TRUE(inf.double_root);
  EXPECT_TRUE(inf.log_term);
}

TEST(Indicial, ClassifiesPoints) {
  EXPECT_EQ(singular_point(cplx(1, 0)), SingularPoint::One);
  EXPECT_EQ(singular_point(cplx(-1, 0)), SingularPoint::MinusOne);
  EXPECT_EQ(singular_point(cplx(0, 0)), SingularPoint::Zero);
  EXPECT_THROW(singular_point(cplx(0.5, 0)), DomainError);
}

TEST(Tail, ExponentNearMinusTwo) {
  const EigenfunctionSeries s = eigen_recursion(cplx(0, 1), 4000);
  EXPECT_NEAR(coefficient_tail_exponent(s), -2.0, 0.1);
}

TEST(Tail, EnergyGrowsWithK) {
  const EigenfunctionSeries s = eigen_recursion(cplx(0, 1), 8000);
  EXPECT_GT(truncated_energy(s, 8000), truncated_energy(s, 1000));
}

TEST(Connection, FitAtSOne) {
  const ConnectionFit f = fit_connection(1.0, 1);
  EXPECT_FALSE(f.inconclusive);
  EXPECT_LT(f.residual, 1e-3);
  EXPECT_GT(std::abs(f.A), 0.0);
  const ConnectionFit g = fit_connection(1.0, -1);
  EXPECT_FALSE(g.inconclusive);
  // reflection z -> -z, lambda -> -lambda with conjugation maps the two sides onto each other
  EXPECT_NEAR(std::abs(g.A), std::abs(f.A), 1e-6 * std::abs(f.A));
}

TEST(Connection, RejectsBadInput) {
  EXPECT_THROW(fit_connection(0.0, 1), ParameterError);
  EXPECT_THROW(fit_connection(1.0, 2), ParameterError);
}

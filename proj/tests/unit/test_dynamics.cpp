#include <gtest/gtest.h>

#include <cmath>

#include "dglab/dynamics.hpp"
#include "dglab/errors.hpp"
#include "dglab/spectral.hpp"
#include "test_support.hpp"

using namespace dglab;
using dglab::testing::max_coeff_diff;
using dglab::testing::random_field;

TEST(Rhs, ClmOnCosine) {
  const RealCircleField r = rhs(Clm{}, RealCircleField::cos_mode(1).resized(4));
  EXPECT_LT(max_coeff_diff(r, RealCircleField::sin_mode(2, 0.5)), 1e-16);
}

TEST(Rhs, DeGregorioEquilibria) {
  EXPECT_LT(max_coeff_diff(rhs(DeGregorio{}, RealCircleField::sin_mode(1, -1.0)), RealCircleField(1)), 1e-16);
  EXPECT_LT(max_coeff_diff(rhs(DeGregorio{}, RealCircleField::sin_mode(2)), RealCircleField(2)), 1e-16);
  // a rotated multiple stays an equilibrium
  const RealCircleField w = rotate(RealCircleField::sin_mode(3, 1.7), 0.4);
  EXPECT_LT(max_coeff_diff(rhs(DeGregorio{}, w), RealCircleField(3)), 1e-15);
}

TEST(Rhs, TransportAlongItself) {
  const Transport t{RealCircleField::sin_mode(1)};
  EXPECT_LT(max_coeff_diff(rhs(t, RealCircleField::sin_mode(1)), RealCircleField(1)), 1e-16);
}

TEST(Rhs, DeGregorioRejectsNonzeroMean) {
  const RealCircleField w = RealCircleField::sin_mode(1) + RealCircleField::constant(0.1);
  EXPECT_THROW(rhs(DeGregorio{}, w), InputError);
  EXPECT_NO_THROW(rhs(Clm{}, w));
}

TEST(Rhs, GaugeShiftIsRotation) {
  // u differs by a constant c between gauges, which adds -c w_theta
  std::mt19937_64 rng(2);
  const RealCircleField w = random_field(20, rng, 1.5, true);
  const double c = biot_savart(w, PointZero{0.3}).mean();
  const RealCircleField diff = rhs(DeGregorio{PointZero{0.3}}, w) - rhs(DeGregorio{}, w);
  EXPECT_LT(max_coeff_diff(diff, derivative(w) * -c), 1e-13);
}

TEST(Rhs, MeanModelAddsHilbert) {
  std::mt19937_64 rng(6);
  const RealCircleField w = random_field(20, rng, 1.5, true);
  const RealCircleField diff = rhs(DeGregorioMean{0.7}, w) - rhs(DeGregorio{}, w);
  EXPECT_LT(max_coeff_diff(diff, hilbert(w) * 0.7), 1e-13);
}

TEST(Rk4, ZeroStepIsIdentity) {
  std::mt19937_64 rng(1);
  const RealCircleField w = random_field(16, rng, 1.0, true);
  EXPECT_EQ(max_coeff_diff(step_rk4(DeGregorio{}, w, 0.0), w), 0.0);
}

TEST(Rk4, EquilibriumIsFixed) {
  RealCircleField w = RealCircleField::sin_mode(1, -1.0).resized(32);
  for (int n = 0; n < 100; ++n) w = step_rk4(DeGregorio{}, w, 1e-2);
  EXPECT_LT(max_coeff_diff(w, RealCircleField::sin_mode(1, -1.0)), 1e-14);
}

TEST(Rk4, FourthOrderOnClm) {
  const RealCircleField w0 = RealCircleField::cos_mode(1).resized(64);
  const RealCircleField exact = clm_exact(RealCircleField::cos_mode(1), 0.25, 64);
  double err[2];
  int i = 0;
  for (double dt : {0.025, 0.0125}) {
    RealCircleField w = w0;
    const int n = static_cast<int>(std::lround(0.25 / dt));
    for (int s = 0; s < n; ++s) w = step_rk4(Clm{}, w, dt);
    err[i++] = sup_norm(w - exact);
  }
  EXPECT_GT(err[0] / err[1], 13.0);
  EXPECT_LT(err[0] / err[1], 19.0);
}

TEST(Clm, ExactAtOrigin) {
  const RealCircleField c = RealCircleField::cos_mode(1);
  for (double t : {0.0, 0.5, 1.5})
    EXPECT_NEAR(clm_exact_value(c, t, 0.0), 1.0 / (1.0 + t * t / 4.0), 1e-15);
  EXPECT_LT(max_coeff_diff(clm_exact(c, 0.0, 8), c), 1e-15);
}

TEST(Clm, BlowUpTimeOfCosine) {
  EXPECT_NEAR(clm_blowup_time(RealCircleField::cos_mode(1)), 2.0, 1e-10);
  EXPECT_NEAR(clm_blowup_time(RealCircleField::cos_mode(1, 2.0)), 1.0, 1e-10);
  EXPECT_THROW(clm_exact(RealCircleField::cos_mode(1), 2.5, 16), DomainError);
}

TEST(Clm, ExactSolvesEquation) {
  // finite-difference check of w_t = w Hw on the series route
  const RealCircleField c = RealCircleField::cos_mode(1) + RealCircleField::sin_mode(2, 0.3);
  const double t = 0.4, h = 1e-4;
  const RealCircleField w = clm_exact(c, t, 128);
  const RealCircleField dw = (clm_exact(c, t + h, 128) - clm_exact(c, t - h, 128)) * (0.5 / h);
  EXPECT_LT(sup_norm(dw - rhs(Clm{}, w)), 1e-6);
}

TEST(Simulate, StabilityGuard) {
  SimConfig cfg;
  cfg.N = 64;
  cfg.dt = 0.1;
  EXPECT_THROW(simulate(cfg, RealCircleField::sin_mode(1, -1.0)), ParameterError);
}

TEST(Simulate, MeanConservedShortRun) {
  SimConfig cfg;
  cfg.N = 64;
  cfg.dt = 2e-3;
  cfg.t_final = 1.0;
  cfg.record_every = 50;
  const RealCircleField w0 = RealCircleField::sin_mode(1, -1.0) + RealCircleField::sin_mode(2, 0.1);
  const SimulationResult r = simulate(cfg, w0);
  ASSERT_FALSE(r.blowup);
  ASSERT_GE(r.records.size(), 2u);
  for (const auto& rec : r.records) EXPECT_NEAR(rec.mean, 0.0, 1e-12);
  EXPECT_NEAR(r.records.back().t, 1.0, 1e-12);
  ASSERT_TRUE(r.records.front().invariants);
  EXPECT_EQ(r.records.front().invariants->count, 2);
}

TEST(Simulate, ClmStopsOnBlowUp) {
  SimConfig cfg;
  cfg.model = Clm{};
  cfg.N = 128;
  cfg.dt = 1e-3;
  cfg.t_final = 3.0;
  cfg.blowup_ceiling = 1e3;
  cfg.track_invariants = false;
  const SimulationResult r = simulate(cfg, RealCircleField::cos_mode(1));
  ASSERT_TRUE(r.blowup);
  EXPECT_LT(r.blowup->t, 3.0);
}

TEST(Mobius, OwnFieldIsInvariant) {
  const PushforwardResult p = exact_pushforward(RealCircleField::sin_mode(1), 0.8, 16);
  EXPECT_TRUE(p.resolved);
  EXPECT_LT(max_coeff_diff(p.field, RealCircleField::sin_mode(1)), 1e-14);
}

TEST(Mobius, ZeroTimeIsIdentity) {
  std::mt19937_64 rng(3);
  const RealCircleField f = random_field(10, rng);
  EXPECT_LT(max_coeff_diff(exact_pushforward(f, 0.0, 10).field, f), 1e-14);
}

TEST(Mobius, PushforwardOfSinTwo) {
  const double v = pushforward_value(RealCircleField::sin_mode(2), 1.0, kPi / 2);
  EXPECT_NEAR(v, 1.52318831191152977623891656521, 1e-14);
  const PushforwardResult p = exact_pushforward(RealCircleField::sin_mode(2), 1.0, 200);
  EXPECT_NEAR(evaluate(p.field, kPi / 2).value, v, 1e-12);
}

TEST(Mobius, FlowGroupProperty) {
  for (double th : {-2.0, 0.3, 1.7})
    EXPECT_NEAR(mobius_flow(mobius_flow(th, 0.4), 0.7), mobius_flow(th, 1.1), 1e-14);
  // theta' = sin(theta)
  const double h = 1e-6;
  EXPECT_NEAR((mobius_flow(1.0, h) - mobius_flow(1.0, -h)) / (2 * h), std::sin(1.0), 1e-9);
}

TEST(Normalize, Examples) {
  auto [f, n] = normalize_initial_data(rotate(RealCircleField::sin_mode(1, -1.3), -0.2));
  EXPECT_NEAR(n.A, 1.3, 1e-14);
  EXPECT_NEAR(n.theta_shift, 0.2, 1e-12);
  EXPECT_LT(max_coeff_diff(f, RealCircleField::sin_mode(1, -1.0)), 1e-12);

  auto [g, m] = normalize_initial_data(RealCircleField::sin_mode(1, -1.0));
  EXPECT_NEAR(m.A, 1.0, 1e-15);
  EXPECT_NEAR(m.theta_shift, 0.0, 1e-15);

  const RealCircleField w = RealCircleField::sin_mode(1, -1.0) + RealCircleField::sin_mode(2, 0.1);
  EXPECT_NEAR(normalize_initial_data(w).second.A, 0.8, 1e-14);
}

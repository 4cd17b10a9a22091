// SPDX-License-Identifier: Apache-2.0
//
// irsdm - secrecy-rate optimization for IRS-aided directional modulation links
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "irsdm/power_allocation.hpp"
#include "test_util.hpp"

using namespace irsdm;

namespace {

/// Dense grid search over alpha in {0, 1/points, ..., 1}.
double grid_max_objective(const PaCoefficients& co, int points) {
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= points; ++i) {
    const double a = static_cast<double>(i) / points;
    best = std::max(best, pa_objective(co, a));
  }
  return best;
}

/// Synthetic coefficient instance; wider parameter coverage than the
/// physical model, used for the structural invariants.
PaCoefficients random_instance(Rng& rng) {
  const double hbv = std::norm(rng.cnormal()) + std::norm(rng.cnormal());
  const double hbw = std::norm(rng.cnormal());
  const double hev = std::norm(rng.cnormal());
  const double hew = std::norm(rng.cnormal());
  const double sb2 = std::pow(10.0, -3.0 * rng.uniform());
  const double se2 = std::pow(10.0, -3.0 * rng.uniform());
  return pa_coefficients_from_projections(1.0, hbv, hbw, hev, hew, sb2, se2);
}

/// Instance drawn from the physical channel model (random geometry and
/// beams at the default power levels); the grid criterion is calibrated to
/// this regime.
PaCoefficients random_physical_instance(Rng& rng, int trial) {
  SystemConfig cfg;
  cfg.n_alice = (trial % 3 == 0) ? 2 : ((trial % 3 == 1) ? 4 : 8);
  cfg.m_irs = 1 + trial % 8;
  cfg.theta_ai = 0.3 + 0.6 * rng.uniform();
  cfg.theta_ab = 1.2 + 0.8 * rng.uniform();
  cfg.theta_ae = 1.6 + 0.9 * rng.uniform();
  cfg.d_ai = 80.0 + 80.0 * rng.uniform();
  cfg.d_ab = 120.0 + 60.0 * rng.uniform();
  cfg.d_ae = 120.0 + 60.0 * rng.uniform();
  const ChannelSet ch = build_channels(cfg);
  const CVector v = rng.random_unit_vector(cfg.n_alice);
  const CVector w = rng.random_unit_vector(cfg.n_alice);
  const CVector theta = rng.random_phases(cfg.m_irs);
  return pa_coefficients(cfg, ch, v, w, theta);
}

}  // namespace

// ---------------------------------------------------------------------------
// pa_coefficients
// ---------------------------------------------------------------------------

TEST(PaCoefficients, IdenticalBeamsZeroOutAandF) {
  const SystemConfig cfg = test::small_config(4, 4);
  const ChannelSet ch = build_channels(cfg);
  Rng rng(3);
  const CVector v = rng.random_unit_vector(4);
  const CVector theta = rng.random_phases(4);
  const PaCoefficients co = pa_coefficients(cfg, ch, v, v, theta);
  EXPECT_NEAR(co.a, 0.0, 1e-18);
  EXPECT_NEAR(co.f, 0.0, 1e-18);
}

TEST(PaCoefficients, AnNulledAtBob) {
  const PaCoefficients co =
      pa_coefficients_from_projections(2.0, 0.7, 0.0, 0.3, 0.4, 1e-3, 1e-4);
  EXPECT_NEAR(co.c, 0.0, 1e-18);
  EXPECT_NEAR(co.b, 1e-3, 1e-18);
}

TEST(PaCoefficients, MatchesIndependentRecomputation) {
  const SystemConfig cfg = test::small_config(3, 5, 11);
  const ChannelSet ch = build_channels(cfg);
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const CVector v = rng.random_unit_vector(3);
    const CVector w = rng.random_unit_vector(3);
    const CVector theta = rng.random_phases(5);
    const PaCoefficients co = pa_coefficients(cfg, ch, v, w, theta);

    // independent recomputation straight from the definitions
    const CVector h_b = effective_channel(ch, theta, Receiver::Bob);
    const CVector h_e = effective_channel(ch, theta, Receiver::Eve);
    const double p = cfg.p_watt();
    const double a = p * std::norm(inner(h_b, v)) - p * std::norm(inner(h_b, w));
    const double b = p * std::norm(inner(h_b, w)) + cfg.sigma_b2_watt();
    const double c = p * std::norm(inner(h_b, w));
    const double d = p * std::norm(inner(h_e, w));
    const double e = d + cfg.sigma_e2_watt();
    const double f = p * std::norm(inner(h_e, v)) - d;
    EXPECT_NEAR(co.a, a, 1e-15);
    EXPECT_NEAR(co.b, b, 1e-15);
    EXPECT_NEAR(co.c, c, 1e-15);
    EXPECT_NEAR(co.d, d, 1e-15);
    EXPECT_NEAR(co.e, e, 1e-15);
    EXPECT_NEAR(co.f, f, 1e-15);
    EXPECT_NEAR(co.a_quad, a * d * (c * e - b * f) - c * f * (b * d - a * e),
                1e-18);
    EXPECT_NEAR(co.b_quad, 2.0 * (b * e * c * f - a * d * b * e), 1e-18);
    EXPECT_NEAR(co.c_quad, (c * e - b * f) * b * e - (b * d - a * e) * b * e,
                1e-18);
  }
}

// ---------------------------------------------------------------------------
// optimal_alpha
// ---------------------------------------------------------------------------

TEST(OptimalAlpha, AllPowerToCmWhenEveHearsNoCmAndBobNoAn) {
  // h_e^H v = 0 and h_b^H w = 0: f(alpha) = (a alpha + b)/b, increasing
  const PaCoefficients co =
      pa_coefficients_from_projections(1.0, 0.9, 0.0, 0.0, 0.5, 1e-2, 1e-2);
  EXPECT_NEAR(optimal_alpha(co), 1.0, 1e-12);
}

TEST(OptimalAlpha, ConstantObjectiveTieBreaksToZero) {
  // h_b = h_e and sigma_b = sigma_e: f identically 1
  const PaCoefficients co =
      pa_coefficients_from_projections(1.0, 0.6, 0.2, 0.6, 0.2, 1e-3, 1e-3);
  EXPECT_NEAR(optimal_alpha(co), 0.0, 1e-15);
}

TEST(OptimalAlpha, MatchesDenseGridOracle) {
  Rng rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const PaCoefficients co = random_physical_instance(rng, trial);
    const double alpha = optimal_alpha(co);
    ASSERT_GE(alpha, 0.0);
    ASSERT_LE(alpha, 1.0);
    const double f_star = pa_objective(co, alpha);
    const double f_grid = grid_max_objective(co, 10000);
    EXPECT_LE(std::abs(f_star - f_grid), 1e-8 * std::max(1.0, std::abs(f_grid)))
        << "trial " << trial;
  }
}

TEST(OptimalAlpha, NeverWorseThanGridOnAdversarialInstances) {
  // synthetic coefficients can make f too peaky for the grid to certify a
  // two-sided 1e-8 agreement, but the closed form must never fall below it
  Rng rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const PaCoefficients co = random_instance(rng);
    const double f_star = pa_objective(co, optimal_alpha(co));
    const double f_grid = grid_max_objective(co, 10000);
    EXPECT_GE(f_star, f_grid - 1e-9 * std::max(1.0, std::abs(f_grid)));
  }
}

TEST(OptimalAlpha, BeatsEndpoints) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const PaCoefficients co = random_instance(rng);
    const double f_star = pa_objective(co, optimal_alpha(co));
    EXPECT_GE(f_star, pa_objective(co, 0.0) - 1e-12);
    EXPECT_GE(f_star, pa_objective(co, 1.0) - 1e-12);
  }
}

TEST(OptimalAlpha, DenominatorsStayPositive) {
  Rng rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const PaCoefficients co = random_instance(rng);
    const double floor = std::min(co.b - co.c, co.e - co.d);
    EXPECT_GT(floor, 0.0);
    for (int i = 0; i <= 50; ++i) {
      const double a = i / 50.0;
      EXPECT_GE(-co.c * a + co.b, floor - 1e-15);
      EXPECT_GE(co.f * a + co.e, floor - 1e-15);
    }
  }
}

TEST(OptimalAlpha, ExpOfSecrecyRateEqualsObjective) {
  const SystemConfig cfg = test::small_config(4, 6, 17);
  const ChannelSet ch = build_channels(cfg);
  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    BeamState st = test::random_state(rng, cfg);
    const PaCoefficients co = pa_coefficients(cfg, ch, st.v, st.w, st.theta);
    st.alpha = optimal_alpha(co);
    const double rs = secrecy_rate(cfg, ch, st);
    EXPECT_NEAR(std::exp2(rs), pa_objective(co, st.alpha),
                1e-9 * std::max(1.0, pa_objective(co, st.alpha)));
  }
}

TEST(OptimalAlpha, RejectsNanCoefficients) {
  PaCoefficients co =
      pa_coefficients_from_projections(1.0, 0.5, 0.1, 0.2, 0.3, 1e-3, 1e-3);
  co.a_quad = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(optimal_alpha(co), std::invalid_argument);
}

// SPDX-License-Identifier: Apache-2.0
//
// irsdm - secrecy-rate optimization for IRS-aided directional modulation links
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef IRSDM_SELFCHECK_HPP
#define IRSDM_SELFCHECK_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "irsdm/orchestrator.hpp"
#include "irsdm/power_allocation.hpp"
#include "irsdm/rng.hpp"
#include "irsdm/scheme_hp.hpp"
#include "irsdm/scheme_lc.hpp"
#include "irsdm/system_model.hpp"

// Oracle-style consistency checks runnable from the CLI. Each check pits a
// solver against an independent reference (dense grid, random sampling,
// exhaustive enumeration) rather than against the solver's own math.

namespace irsdm::selfcheck {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

namespace detail {

inline std::string fmt(const char* format, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), format, a, b);
  return buf;
}

inline SystemConfig random_small_config(Rng& rng, std::size_t n,
                                        std::size_t m) {
  SystemConfig cfg;
  cfg.n_alice = n;
  cfg.m_irs = m;
  cfg.theta_ai = 0.3 + 0.6 * rng.uniform();
  cfg.theta_ab = 1.2 + 0.8 * rng.uniform();
  cfg.theta_ae = 1.6 + 0.9 * rng.uniform();
  cfg.d_ai = 80.0 + 80.0 * rng.uniform();
  cfg.d_ab = 120.0 + 60.0 * rng.uniform();
  cfg.d_ae = 120.0 + 60.0 * rng.uniform();
  return cfg;
}

inline BeamState random_state(Rng& rng, const SystemConfig& cfg) {
  BeamState s;
  s.alpha = 0.2 + 0.6 * rng.uniform();
  s.v = rng.random_unit_vector(cfg.n_alice);
  s.w = rng.random_unit_vector(cfg.n_alice);
  s.theta = rng.random_phases(cfg.m_irs);
  return s;
}

}  // namespace detail

/// Closed-form PA factor vs a dense alpha grid on physical-model instances.
inline CheckResult check_pa_grid(int instances, int grid_points,
                                 std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int t = 0; t < instances; ++t) {
    const std::size_t n = (t % 3 == 0) ? 2 : ((t % 3 == 1) ? 4 : 8);
    const SystemConfig cfg = detail::random_small_config(rng, n, 1 + t % 8);
    const ChannelSet ch = build_channels(cfg);
    const BeamState st = detail::random_state(rng, cfg);
    const PaCoefficients co =
        pa_coefficients(cfg, ch, st.v, st.w, st.theta);
    const double f_star = pa_objective(co, optimal_alpha(co));
    double f_grid = -1e300;
    for (int i = 0; i <= grid_points; ++i)
      f_grid = std::max(f_grid,
                        pa_objective(co, static_cast<double>(i) / grid_points));
    worst = std::max(worst,
                     std::abs(f_star - f_grid) / std::max(1.0, std::abs(f_grid)));
  }
  CheckResult r;
  r.name = "pa-closed-form-vs-grid";
  r.pass = worst <= 1e-8;
  r.detail = detail::fmt("worst relative gap %.3e (tol %.0e)", worst, 1e-8);
  return r;
}

/// Rayleigh-Ritz solvers (HP v, LC v, LC w) vs random unit-vector sampling.
inline CheckResult check_rayleigh_sampling(int instances, int samples,
                                           std::uint64_t seed) {
  Rng rng(seed);
  double worst_deficit = 0.0;
  for (int t = 0; t < instances; ++t) {
    const std::size_t n = (t % 3 == 0) ? 2 : ((t % 3 == 1) ? 4 : 8);
    SystemConfig cfg = detail::random_small_config(rng, n, 4);
    const ChannelSet ch = build_channels(cfg);
    const BeamState st = detail::random_state(rng, cfg);

    const auto run_case = [&](const CMatrix& num, const CMatrix& den,
                              const CVector& got) {
      const double ratio = real_quad_form(num, got) / real_quad_form(den, got);
      Rng sampler(split_seed(seed, 1000 + t));
      double best = -1e300;
      for (int i = 0; i < samples; ++i) {
        const CVector u = sampler.random_unit_vector(n);
        best = std::max(best, real_quad_form(num, u) / real_quad_form(den, u));
      }
      worst_deficit = std::max(worst_deficit, best - ratio);
    };

    const auto [a, b] = cm_subproblem_matrices(cfg, ch, st.alpha, st.w, st.theta);
    run_case(a, b, optimize_v_hp(a, b));
    const auto [f1, f2] = slnr_matrices(cfg, ch, st.alpha, st.theta);
    run_case(f1, f2, optimize_v_slnr(f1, f2));
    const auto [g1, g2] = anlnr_matrices(cfg, ch, st.alpha, st.theta);
    run_case(g1, g2, optimize_w_anlnr(g1, g2, ch.h_ae));
  }
  CheckResult r;
  r.name = "rayleigh-ritz-vs-sampling";
  r.pass = worst_deficit <= 1e-9;
  r.detail = detail::fmt("worst sampling excess %.3e (tol %.0e)",
                         worst_deficit, 1e-9);
  return r;
}

/// GPI monotonicity plus sampling floor at N = 2.
inline CheckResult check_gpi(int instances, int samples, std::uint64_t seed) {
  Rng rng(seed);
  bool monotone = true;
  double worst_deficit = 0.0;
  for (int t = 0; t < instances; ++t) {
    const std::size_t n = 2 + t % 3;
    SystemConfig cfg = detail::random_small_config(rng, n, 4);
    const ChannelSet ch = build_channels(cfg);
    const BeamState st = detail::random_state(rng, cfg);
    const AnMatrices qs =
        an_subproblem_matrices(cfg, ch, st.alpha, st.v, st.theta);
    const GpiResult gr = optimize_w_gpi(qs, st.w, 1e-12, 2000);
    for (std::size_t i = 1; i < gr.objective_trace.size(); ++i)
      if (gr.objective_trace[i] < gr.objective_trace[i - 1]) monotone = false;
    if (n == 2) {
      Rng sampler(split_seed(seed, 2000 + t));
      double best = -1e300;
      for (int i = 0; i < samples; ++i)
        best = std::max(best, gpi_objective(qs, sampler.random_unit_vector(2)));
      worst_deficit =
          std::max(worst_deficit, best - gpi_objective(qs, gr.w));
    }
  }
  CheckResult r;
  r.name = "gpi-monotone-and-sampling";
  r.pass = monotone && worst_deficit <= 1e-6;
  r.detail = std::string(monotone ? "monotone ok" : "monotone VIOLATED") +
             detail::fmt("; worst sampling excess %.3e (tol %.0e)",
                         worst_deficit, 1e-6);
  return r;
}

/// Both theta solvers vs the exhaustive phase grid at M = 2. Instances with
/// a nonpositive grid optimum are resampled (the multiplicative criterion
/// needs a positive reference).
inline CheckResult check_theta_tiny_m(int instances, int grid_points,
                                      std::uint64_t seed) {
  Rng rng(seed);
  double worst_sdr = 1.0;
  double worst_sca = 1.0;
  int accepted = 0;
  int attempts = 0;
  while (accepted < instances && attempts < instances * 20) {
    ++attempts;
    SystemConfig cfg = detail::random_small_config(rng, 3, 2);
    const ChannelSet ch = build_channels(cfg);
    BeamState st = detail::random_state(rng, cfg);

    double rs_grid = -1e300;
    BeamState probe = st;
    for (int i = 0; i < grid_points; ++i) {
      for (int j = 0; j < grid_points; ++j) {
        const double p1 = 2.0 * std::numbers::pi * i / grid_points;
        const double p2 = 2.0 * std::numbers::pi * j / grid_points;
        probe.theta[0] = cd{std::cos(p1), std::sin(p1)};
        probe.theta[1] = cd{std::cos(p2), std::sin(p2)};
        rs_grid = std::max(rs_grid, secrecy_rate(cfg, ch, probe));
      }
    }
    if (rs_grid <= 0.05) continue;
    ++accepted;

    const LiftedChannels lc = lift_channels(cfg, ch, st.alpha, st.v, st.w);
    const SdrMatrices sm = build_sdr_matrices(lc, cfg.sigma_b2_watt(),
                                              cfg.sigma_e2_watt(), cfg.m_irs);
    ThetaOptions sdr_opts;
    sdr_opts.max_outer = 10;
    sdr_opts.outer_tol = 1e-5;
    sdr_opts.j_randomizations = 30;
    sdr_opts.seed = split_seed(seed, 3000 + accepted);
    const ThetaResult sdr = sdr_optimize_theta(sm, st.theta, sdr_opts);
    BeamState got = st;
    got.theta = sdr.theta;
    worst_sdr = std::min(worst_sdr, secrecy_rate(cfg, ch, got) / rs_grid);

    ThetaOptions sca_opts;
    sca_opts.max_outer = 15;
    sca_opts.outer_tol = 1e-6;
    sca_opts.pga_grad_tol = 1e-10;
    sca_opts.pga_max_iter = 500;
    sca_opts.seed = split_seed(seed, 4000 + accepted);
    const ThetaResult sca =
        sca_optimize_theta(sm.b1, sm.b2, sm.e1, sm.e2, st.theta, sca_opts);
    got.theta = sca.theta;
    worst_sca = std::min(worst_sca, secrecy_rate(cfg, ch, got) / rs_grid);
  }
  CheckResult r;
  r.name = "theta-step-vs-exhaustive-grid";
  r.pass = accepted == instances && worst_sdr >= 0.98 && worst_sca >= 0.95;
  r.detail = detail::fmt("worst sdr ratio %.4f (>=0.98), worst sca %.4f", worst_sdr,
                         worst_sca) +
             " (>=0.95), instances " + std::to_string(accepted);
  return r;
}

/// Direct (Eqs.-style) vs lifted secrecy-rate evaluation.
inline CheckResult check_lifted_consistency(int states, std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int t = 0; t < states; ++t) {
    SystemConfig cfg =
        detail::random_small_config(rng, 2 + t % 4, 1 + t % 6);
    const ChannelSet ch = build_channels(cfg);
    const BeamState st = detail::random_state(rng, cfg);
    const LiftedChannels lc = lift_channels(cfg, ch, st.alpha, st.v, st.w);
    const SdrMatrices sm = build_sdr_matrices(lc, cfg.sigma_b2_watt(),
                                              cfg.sigma_e2_watt(), cfg.m_irs);
    worst = std::max(worst, std::abs(secrecy_rate(cfg, ch, st) -
                                     secrecy_rate_lifted(sm, st.theta)));
  }
  CheckResult r;
  r.name = "lifted-form-consistency";
  r.pass = worst <= 1e-9;
  r.detail = detail::fmt("worst |direct - lifted| %.3e (tol %.0e)", worst, 1e-9);
  return r;
}

/// Surrogate bounds: the fractional lower bound and the lmax quadratic
/// upper bound, random sampled points plus anchor equality.
inline CheckResult check_surrogate_bounds(int samples, std::uint64_t seed) {
  Rng rng(seed);
  double worst29 = 0.0, worst30 = 0.0, worst_eq = 0.0;
  const int families = std::max(1, samples / 50);
  for (int f = 0; f < families; ++f) {
    const std::size_t n = 2 + f % 7;
    CMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) g(i, j) = rng.cnormal();
    const CMatrix x = hermitian_part(matmul(g, adjoint(g)));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) g(i, j) = rng.cnormal();
    const CMatrix y =
        hermitian_part(add_scaled_identity(matmul(g, adjoint(g)), 0.2));
    const CVector anchor = rng.random_unit_vector(n);
    const double q1 = real_quad_form(x, anchor);
    const double q2 = real_quad_form(y, anchor);
    const double lam = max_eigenvalue(y);

    for (int s = 0; s < 50; ++s) {
      const CVector u = anchor + cd{0.4, 0.0} * rng.cnormal_vector(n);
      // fractional bound
      const double lhs = real_quad_form(x, u) / real_quad_form(y, u);
      const double rhs = 2.0 * std::real(inner(anchor, matvec(x, u))) / q2 -
                         q1 / (q2 * q2) * real_quad_form(y, u);
      worst29 = std::max(worst29, rhs - lhs);
      // lmax quadratic bound
      const CVector ya = matvec(y, anchor);
      cd cross{0.0, 0.0};
      for (std::size_t i = 0; i < n; ++i)
        cross += std::conj(u[i]) * (ya[i] - lam * anchor[i]);
      const double rhs30 = lam * squared_norm(u) + 2.0 * std::real(cross) +
                           lam * squared_norm(anchor) - q2;
      worst30 = std::max(worst30, real_quad_form(y, u) - rhs30);
    }
    // equality at the anchor for both bounds
    const double rhs_eq = 2.0 * std::real(inner(anchor, matvec(x, anchor))) / q2 -
                          q1 / (q2 * q2) * q2;
    worst_eq = std::max(worst_eq, std::abs(q1 / q2 - rhs_eq));
  }
  CheckResult r;
  r.name = "sca-surrogate-bounds";
  r.pass = worst29 <= 1e-10 && worst30 <= 1e-10 && worst_eq <= 1e-10;
  r.detail = detail::fmt("bound29 violation %.3e, bound30 violation %.3e",
                         worst29, worst30) +
             detail::fmt(", anchor equality gap %.3e (tol %.0e)", worst_eq, 1e-10);
  return r;
}

/// Elliptope projection feasibility residuals.
inline CheckResult check_elliptope(int instances, std::uint64_t seed) {
  Rng rng(seed);
  double worst_diag = 0.0, worst_eig = 0.0;
  for (int t = 0; t < instances; ++t) {
    const std::size_t n = 3 + t % 4;
    CMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) g(i, j) = 2.0 * rng.cnormal();
    const ElliptopeResult p = project_elliptope(hermitian_part(g), 500, 1e-10);
    for (std::size_t i = 0; i < n; ++i)
      worst_diag = std::max(worst_diag,
                            std::abs(std::real(p.matrix(i, i)) - 1.0));
    worst_eig =
        std::max(worst_eig, -hermitian_eig(p.matrix).values.back());
  }
  CheckResult r;
  r.name = "elliptope-projection-feasibility";
  r.pass = worst_diag <= 1e-8 && worst_eig <= 1e-8;
  r.detail = detail::fmt("diag residual %.3e, psd residual %.3e (tol 1e-8)",
                         worst_diag, worst_eig);
  return r;
}

/// Full or quick oracle suite, as the CLI selftest runs it.
inline std::vector<CheckResult> run_selftest(bool quick,
                                             std::uint64_t seed = 20240501) {
  std::vector<CheckResult> out;
  if (quick) {
    out.push_back(check_pa_grid(100, 10000, split_seed(seed, 1)));
    out.push_back(check_rayleigh_sampling(6, 20000, split_seed(seed, 2)));
    out.push_back(check_gpi(20, 2000, split_seed(seed, 3)));
    out.push_back(check_theta_tiny_m(3, 32, split_seed(seed, 4)));
    out.push_back(check_lifted_consistency(200, split_seed(seed, 5)));
    out.push_back(check_surrogate_bounds(2000, split_seed(seed, 6)));
    out.push_back(check_elliptope(8, split_seed(seed, 7)));
  } else {
    out.push_back(check_pa_grid(500, 10000, split_seed(seed, 1)));
    out.push_back(check_rayleigh_sampling(25, 100000, split_seed(seed, 2)));
    out.push_back(check_gpi(100, 10000, split_seed(seed, 3)));
    out.push_back(check_theta_tiny_m(10, 64, split_seed(seed, 4)));
    out.push_back(check_lifted_consistency(1000, split_seed(seed, 5)));
    out.push_back(check_surrogate_bounds(10000, split_seed(seed, 6)));
    out.push_back(check_elliptope(20, split_seed(seed, 7)));
  }
  return out;
}

}  // namespace irsdm::selfcheck

#endif  // IRSDM_SELFCHECK_HPP

// SPDX-License-Identifier: Apache-2.0
//
// irsdm - secrecy-rate optimization for IRS-aided directional modulation links
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef IRSDM_ORCHESTRATOR_HPP
#define IRSDM_ORCHESTRATOR_HPP

#include <chrono>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "irsdm/power_allocation.hpp"
#include "irsdm/rng.hpp"
#include "irsdm/scheme_hp.hpp"
#include "irsdm/scheme_lc.hpp"
#include "irsdm/system_model.hpp"

namespace irsdm {

enum class Scheme { MaxSrHp, MaxSrLc, EqualPa, NoIrs, RandomIrs };

inline const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::MaxSrHp: return "hp";
    case Scheme::MaxSrLc: return "lc";
    case Scheme::EqualPa: return "equal_pa";
    case Scheme::NoIrs: return "no_irs";
    case Scheme::RandomIrs: return "random_irs";
  }
  return "?";
}

inline std::optional<Scheme> parse_scheme(const std::string& name) {
  if (name == "hp") return Scheme::MaxSrHp;
  if (name == "lc") return Scheme::MaxSrLc;
  if (name == "equal_pa") return Scheme::EqualPa;
  if (name == "no_irs") return Scheme::NoIrs;
  if (name == "random_irs") return Scheme::RandomIrs;
  return std::nullopt;
}

struct InnerIterationCounts {
  std::vector<int> gpi;          ///< GPI iterations per outer iteration
  std::vector<int> theta_outer;  ///< MM or SCA outer iterations per theta step
  std::vector<int> theta_inner;  ///< projected-gradient steps per theta step
};

struct SchemeResult {
  Scheme scheme = Scheme::MaxSrHp;
  std::vector<double> sr_trace;     ///< R_s after each outer iteration, bits
  std::vector<double> alpha_trace;  ///< alpha after each outer iteration
  BeamState final_state;
  int iterations = 0;
  bool converged = false;
  double wall_time_s = 0.0;
  InnerIterationCounts inner;

  double final_secrecy_rate() const { return sr_trace.back(); }
};

// ---------------------------------------------------------------------------
// Alternating optimization driver
// ---------------------------------------------------------------------------

/// Runs one scheme to convergence. Updates go alpha -> v -> w -> theta, each
/// passed through an accept-if-not-worse guard on the exact secrecy rate, so
/// the recorded trace is non-decreasing. Baselines: EqualPa freezes
/// alpha = 0.5 in the HP pipeline; NoIrs zeroes the cascaded gains and skips
/// the theta step; RandomIrs fixes theta at a seeded uniform draw.
inline SchemeResult run_scheme(const SystemConfig& cfg, Scheme scheme,
                               const std::optional<BeamState>& init = std::nullopt) {
  validate(cfg);
  ChannelSet ch = build_channels(cfg);
  if (scheme == Scheme::NoIrs) {
    ch.g_ib = 0.0;
    ch.g_ie = 0.0;
  }

  BeamState state;
  if (init.has_value()) {
    state = *init;
    if (state.v.size() != cfg.n_alice || state.w.size() != cfg.n_alice ||
        state.theta.size() != cfg.m_irs)
      throw std::invalid_argument("run_scheme: init state dimensions mismatch");
  } else {
    state.alpha = 0.5;
    state.v = ch.h_ab;  // matched filter; steering vectors are unit norm
    state.w = ch.h_ab;
    state.theta = CVector(cfg.m_irs);
    for (std::size_t m = 0; m < cfg.m_irs; ++m) state.theta[m] = cd{1.0, 0.0};
    if (scheme == Scheme::RandomIrs)
      state.theta = Rng(split_seed(cfg.seed, 0x52414E44ULL)).random_phases(cfg.m_irs);
  }

  SchemeResult res;
  res.scheme = scheme;

  double rs_cur = secrecy_rate(cfg, ch, state);
  const auto accept_if_not_worse = [&](const BeamState& cand) {
    const double rs_cand = secrecy_rate(cfg, ch, cand);
    if (std::isfinite(rs_cand) && rs_cand >= rs_cur) {
      state = cand;
      rs_cur = rs_cand;
    }
  };

  const bool optimizes_theta =
      scheme == Scheme::MaxSrHp || scheme == Scheme::MaxSrLc ||
      scheme == Scheme::EqualPa;
  const bool lc_solvers = scheme == Scheme::MaxSrLc;

  const auto start_time = std::chrono::steady_clock::now();
  double rs_ref = rs_cur;
  for (int t = 1; t <= cfg.max_outer; ++t) {
    try {
      if (scheme != Scheme::EqualPa) {
        BeamState cand = state;
        cand.alpha = optimal_alpha(
            pa_coefficients(cfg, ch, state.v, state.w, state.theta));
        accept_if_not_worse(cand);
      }

      {
        BeamState cand = state;
        if (lc_solvers) {
          const auto [f1, f2] = slnr_matrices(cfg, ch, state.alpha, state.theta);
          cand.v = optimize_v_slnr(f1, f2);
        } else {
          const auto [a, b] =
              cm_subproblem_matrices(cfg, ch, state.alpha, state.w, state.theta);
          cand.v = optimize_v_hp(a, b);
        }
        accept_if_not_worse(cand);
      }

      {
        BeamState cand = state;
        if (lc_solvers) {
          const auto [g1, g2] =
              anlnr_matrices(cfg, ch, state.alpha, state.theta);
          cand.w = optimize_w_anlnr(g1, g2, ch.h_ae);
        } else {
          const AnMatrices qs =
              an_subproblem_matrices(cfg, ch, state.alpha, state.v, state.theta);
          const GpiResult gr =
              optimize_w_gpi(qs, state.w, cfg.gpi_tol, cfg.gpi_max_iter);
          cand.w = gr.w;
          res.inner.gpi.push_back(gr.iterations);
        }
        accept_if_not_worse(cand);
      }

      if (optimizes_theta) {
        const LiftedChannels lc =
            lift_channels(cfg, ch, state.alpha, state.v, state.w);
        const SdrMatrices sm = build_sdr_matrices(
            lc, cfg.sigma_b2_watt(), cfg.sigma_e2_watt(), cfg.m_irs);
        const std::uint64_t theta_seed =
            split_seed(cfg.seed, 0x7E7A0000ULL + static_cast<std::uint64_t>(t));
        ThetaResult tr;
        if (lc_solvers) {
          tr = sca_optimize_theta(sm.b1, sm.b2, sm.e1, sm.e2, state.theta,
                                  ThetaOptions::sca_from_config(cfg, theta_seed));
        } else {
          tr = sdr_optimize_theta(sm, state.theta,
                                  ThetaOptions::sdr_from_config(cfg, theta_seed));
        }
        res.inner.theta_outer.push_back(tr.outer_iterations);
        res.inner.theta_inner.push_back(tr.inner_steps);
        BeamState cand = state;
        cand.theta = tr.theta;
        accept_if_not_worse(cand);
      }
    } catch (const std::exception& ex) {
      throw std::runtime_error(
          std::string("run_scheme(") + scheme_name(scheme) + "): iteration " +
          std::to_string(t) + " failed after " +
          std::to_string(res.sr_trace.size()) +
          " recorded iterations (last R_s = " +
          std::to_string(res.sr_trace.empty() ? rs_ref : res.sr_trace.back()) +
          "): " + ex.what());
    }

    res.sr_trace.push_back(rs_cur);
    res.alpha_trace.push_back(state.alpha);
    res.iterations = t;
    if (std::abs(rs_cur - rs_ref) <= cfg.tol_outer) {
      res.converged = true;
      break;
    }
    rs_ref = rs_cur;
  }

  const auto end_time = std::chrono::steady_clock::now();
  res.wall_time_s =
      std::chrono::duration<double>(end_time - start_time).count();
  res.final_state = state;
  return res;
}

// ---------------------------------------------------------------------------
// Experiment sweeps and multi-start
// ---------------------------------------------------------------------------

enum class SweepAxis { PowerDbm, IrsElements };

inline const char* sweep_axis_name(SweepAxis a) {
  return a == SweepAxis::PowerDbm ? "P_dbm" : "M";
}

struct SweepCell {
  Scheme scheme = Scheme::MaxSrHp;
  double axis_value = 0.0;
  SchemeResult result;
  bool failed = false;
  std::string error;
};

/// One run per (scheme, axis value), all sharing the base seed. Failed cells
/// are marked and the sweep continues.
inline std::vector<SweepCell> sweep(const SystemConfig& cfg,
                                    const std::vector<Scheme>& schemes,
                                    SweepAxis axis,
                                    const std::vector<double>& values) {
  std::vector<SweepCell> cells;
  cells.reserve(schemes.size() * values.size());
  for (const Scheme s : schemes)
    for (const double v : values)
      cells.push_back(SweepCell{s, v, {}, false, {}});

  const auto run_cell = [&cfg, axis](SweepCell& cell) {
    SystemConfig c = cfg;
    if (axis == SweepAxis::PowerDbm) {
      c.p_dbm = cell.axis_value;
    } else {
      const double rounded = std::round(cell.axis_value);
      if (!(rounded >= 1.0))
        throw std::invalid_argument("sweep: M values must be >= 1");
      c.m_irs = static_cast<std::size_t>(rounded);
      cell.axis_value = rounded;
    }
    cell.result = run_scheme(c, cell.scheme);
  };

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::size_t i = 0; i < cells.size(); ++i) {
    try {
      run_cell(cells[i]);
    } catch (const std::exception& ex) {
      cells[i].failed = true;
      cells[i].error = ex.what();
    }
  }
  return cells;
}

/// Best-of-k restarts. The first start is the deterministic initialization
/// of run_scheme; later starts draw random unit beamformers and random
/// phases from seeds split per restart index.
inline SchemeResult multi_start(const SystemConfig& cfg, Scheme scheme,
                                int restarts) {
  if (restarts < 1)
    throw std::invalid_argument("multi_start: restarts must be >= 1");
  SchemeResult best;
  bool have_best = false;
  for (int r = 0; r < restarts; ++r) {
    SchemeResult run;
    if (r == 0) {
      run = run_scheme(cfg, scheme);
    } else {
      Rng rng(split_seed(cfg.seed, 0xA110000ULL + static_cast<std::uint64_t>(r)));
      BeamState init;
      init.alpha = 0.5;
      init.v = rng.random_unit_vector(cfg.n_alice);
      init.w = rng.random_unit_vector(cfg.n_alice);
      init.theta = rng.random_phases(cfg.m_irs);
      run = run_scheme(cfg, scheme, init);
    }
    if (!have_best ||
        run.final_secrecy_rate() > best.final_secrecy_rate()) {
      best = run;
      have_best = true;
    }
  }
  return best;
}

}  // namespace irsdm

#endif  // IRSDM_ORCHESTRATOR_HPP

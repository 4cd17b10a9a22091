// SPDX-License-Identifier: Apache-2.0
//
// irsdm - secrecy-rate optimization for IRS-aided directional modulation links
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef IRSDM_SCHEME_HP_HPP
#define IRSDM_SCHEME_HP_HPP

#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "irsdm/linalg.hpp"
#include "irsdm/rng.hpp"
#include "irsdm/system_model.hpp"

namespace irsdm {

// ---------------------------------------------------------------------------
// CM beamforming subproblem (generalized Rayleigh-Ritz)
// ---------------------------------------------------------------------------

/// A = alpha P h_b h_b^H + ((1-alpha) P |h_b^H w|^2 + sigma_b^2) I and the
/// Eve analogue B; v maximizes (v^H A v)/(v^H B v).
inline std::pair<CMatrix, CMatrix> cm_subproblem_matrices(
    const SystemConfig& cfg, const ChannelSet& ch, double alpha,
    const CVector& w, const CVector& theta) {
  const CVector h_b = effective_channel(ch, theta, Receiver::Bob);
  const CVector h_e = effective_channel(ch, theta, Receiver::Eve);
  const double p = cfg.p_watt();
  CMatrix a = cd{alpha * p, 0.0} * outer(h_b, h_b);
  a = add_scaled_identity(
      a, (1.0 - alpha) * p * std::norm(inner(h_b, w)) + cfg.sigma_b2_watt());
  CMatrix b = cd{alpha * p, 0.0} * outer(h_e, h_e);
  b = add_scaled_identity(
      b, (1.0 - alpha) * p * std::norm(inner(h_e, w)) + cfg.sigma_e2_watt());
  return {hermitian_part(a), hermitian_part(b)};
}

inline CVector optimize_v_hp(const CMatrix& a, const CMatrix& b) {
  return generalized_rayleigh_max(a, b, "cm-beamforming subproblem (v)");
}

// ---------------------------------------------------------------------------
// AN beamforming subproblem (generalized power iteration)
// ---------------------------------------------------------------------------

struct AnMatrices {
  CMatrix q1, q2, q3, q4;
};

inline AnMatrices an_subproblem_matrices(const SystemConfig& cfg,
                                         const ChannelSet& ch, double alpha,
                                         const CVector& v,
                                         const CVector& theta) {
  const CVector h_b = effective_channel(ch, theta, Receiver::Bob);
  const CVector h_e = effective_channel(ch, theta, Receiver::Eve);
  const double p = cfg.p_watt();
  const double sb2 = cfg.sigma_b2_watt();
  const double se2 = cfg.sigma_e2_watt();
  const double cm_b = alpha * p * std::norm(inner(h_b, v));
  const double cm_e = alpha * p * std::norm(inner(h_e, v));
  const CMatrix bb = cd{(1.0 - alpha) * p, 0.0} * outer(h_b, h_b);
  const CMatrix ee = cd{(1.0 - alpha) * p, 0.0} * outer(h_e, h_e);
  AnMatrices m;
  m.q1 = hermitian_part(add_scaled_identity(bb, cm_b + sb2));
  m.q2 = hermitian_part(add_scaled_identity(bb, sb2));
  m.q3 = hermitian_part(add_scaled_identity(ee, se2));
  m.q4 = hermitian_part(add_scaled_identity(ee, cm_e + se2));
  return m;
}

/// Product of the two Rayleigh-quotient ratios maximized by the AN step.
inline double gpi_objective(const AnMatrices& m, const CVector& w) {
  return (real_quad_form(m.q1, w) / real_quad_form(m.q2, w)) *
         (real_quad_form(m.q3, w) / real_quad_form(m.q4, w));
}

struct GpiResult {
  CVector w;
  std::vector<double> objective_trace;  // non-decreasing
  bool converged = false;
  int iterations = 0;
};

/// Fixed-point iteration w <- normalize(B(w)^{-1} A(w) w) with
/// A(w) = Q1/(w^H Q1 w) + Q3/(w^H Q3 w) and B(w) = Q2/(w^H Q2 w) + Q4/(w^H Q4 w).
/// Only improving steps are accepted, so the objective trace is
/// non-decreasing; a non-improving step terminates the iteration.
inline GpiResult optimize_w_gpi(const AnMatrices& m, const CVector& w0,
                                double tol, int max_iter) {
  GpiResult res;
  res.w = normalized(w0);
  double j_cur = gpi_objective(m, res.w);
  if (!std::isfinite(j_cur))
    throw std::runtime_error("optimize_w_gpi: non-finite objective at start");
  res.objective_trace.push_back(j_cur);

  for (int it = 0; it < max_iter; ++it) {
    const double r1 = real_quad_form(m.q1, res.w);
    const double r2 = real_quad_form(m.q2, res.w);
    const double r3 = real_quad_form(m.q3, res.w);
    const double r4 = real_quad_form(m.q4, res.w);
    const CMatrix num =
        cd{1.0 / r1, 0.0} * m.q1 + cd{1.0 / r3, 0.0} * m.q3;
    const CMatrix den =
        cd{1.0 / r2, 0.0} * m.q2 + cd{1.0 / r4, 0.0} * m.q4;
    const CMatrix l = cholesky_lower(den, "an-beamforming GPI step");
    const CVector rhs = matvec(num, res.w);
    const CVector w_new =
        canonical_phase(normalized(solve_lower_adjoint(l, solve_lower(l, rhs))));
    const double j_new = gpi_objective(m, w_new);
    if (!std::isfinite(j_new))
      throw std::runtime_error("optimize_w_gpi: non-finite objective");
    res.iterations = it + 1;
    if (j_new < j_cur) {
      // fixed point reached up to numerical precision
      res.converged = true;
      break;
    }
    res.w = w_new;
    res.objective_trace.push_back(j_new);
    if (j_new - j_cur <= tol * std::max(1.0, std::abs(j_cur))) {
      res.converged = true;
      j_cur = j_new;
      break;
    }
    j_cur = j_new;
  }
  return res;
}

// ---------------------------------------------------------------------------
// Lifted channels and SDR matrices for the theta subproblem
// ---------------------------------------------------------------------------

/// The four (M+1)-dimensional lifted channel vectors; the first M entries
/// carry the cascaded path, the last entry the direct path.
struct LiftedChannels {
  CVector h_b1, h_b2, h_e1, h_e2;
};

inline LiftedChannels lift_channels(const SystemConfig& cfg,
                                    const ChannelSet& ch, double alpha,
                                    const CVector& v, const CVector& w) {
  const std::size_t m = ch.h_ib.size();
  const double p = cfg.p_watt();
  const CVector hai_v = matvec(ch.H_ai, v);
  const CVector hai_w = matvec(ch.H_ai, w);

  const auto build = [&](const CVector& cascade_steer, double g_reflect,
                         const CVector& direct_steer, double g_direct,
                         const CVector& beam, const CVector& hai_beam,
                         double power_share) {
    CVector out(m + 1);
    const double c_casc = std::sqrt(power_share * p * ch.g_ai * g_reflect);
    for (std::size_t i = 0; i < m; ++i)
      out[i] = c_casc * std::conj(cascade_steer[i]) * hai_beam[i];
    out[m] = std::sqrt(power_share * p * g_direct) * inner(direct_steer, beam);
    return out;
  };

  LiftedChannels lc;
  lc.h_b1 = build(ch.h_ib, ch.g_ib, ch.h_ab, ch.g_ab, v, hai_v, alpha);
  lc.h_b2 = build(ch.h_ib, ch.g_ib, ch.h_ab, ch.g_ab, w, hai_w, 1.0 - alpha);
  lc.h_e1 = build(ch.h_ie, ch.g_ie, ch.h_ae, ch.g_ae, v, hai_v, alpha);
  lc.h_e2 = build(ch.h_ie, ch.g_ie, ch.h_ae, ch.g_ae, w, hai_w, 1.0 - alpha);
  return lc;
}

/// Numerator/denominator matrices of the lifted secrecy-rate ratio:
///   B1 = h_b1 h_b1^H + h_b2 h_b2^H + sigma_b^2/(M+1) I,  B2 drops h_b1,
///   E1 = h_e2 h_e2^H + sigma_e^2/(M+1) I,                E2 adds h_e1.
struct SdrMatrices {
  CMatrix b1, b2, e1, e2;
};

inline SdrMatrices build_sdr_matrices(const LiftedChannels& lc,
                                      double sigma_b2, double sigma_e2,
                                      std::size_t m_elems) {
  const double load_b = sigma_b2 / static_cast<double>(m_elems + 1);
  const double load_e = sigma_e2 / static_cast<double>(m_elems + 1);
  SdrMatrices s;
  s.b2 = hermitian_part(add_scaled_identity(outer(lc.h_b2, lc.h_b2), load_b));
  s.b1 = hermitian_part(s.b2 + outer(lc.h_b1, lc.h_b1));
  s.e1 = hermitian_part(add_scaled_identity(outer(lc.h_e2, lc.h_e2), load_e));
  s.e2 = hermitian_part(s.e1 + outer(lc.h_e1, lc.h_e1));
  return s;
}

/// Secrecy rate evaluated through the lifted quadratic forms; agrees with
/// the direct evaluation for unit-modulus theta.
inline double secrecy_rate_lifted(const SdrMatrices& s, const CVector& theta) {
  const CVector t = lift_theta(theta);
  const double qb1 = real_quad_form(s.b1, t);
  const double qb2 = real_quad_form(s.b2, t);
  const double qe1 = real_quad_form(s.e1, t);
  const double qe2 = real_quad_form(s.e2, t);
  return std::log2(qb1 / qb2) + std::log2(qe1 / qe2);
}

/// Tangent bound value ln(tr(X Yhat)) + tr(X (Y - Yhat)) / ln(tr(X Yhat)),
/// evaluated exactly as printed in the source majorization step. Note the
/// log in the correction denominator; the optimizer itself linearizes with a
/// trace denominator (see sdr_optimize_theta) and records both values.
inline double mm_surrogate_value(const CMatrix& x, const CMatrix& y,
                                 const CMatrix& y_hat) {
  const double t_hat = real_trace_product(x, y_hat);
  if (!(t_hat > 0.0))
    throw std::domain_error("mm_surrogate_value: nonpositive trace");
  const double t_diff = real_trace_product(x, y) - t_hat;
  return std::log(t_hat) + t_diff / std::log(t_hat);
}

// ---------------------------------------------------------------------------
// Theta subproblem: MM outer loop + projected-gradient inner solve + rounding
// ---------------------------------------------------------------------------

struct ThetaOptions {
  double outer_tol = 1e-4;  ///< stop on objective change, bits/s/Hz
  int max_outer = 8;
  double pga_grad_tol = 1e-6;
  int pga_max_iter = 2000;
  double dykstra_tol = 1e-9;
  int dykstra_max_iter = 200;
  int j_randomizations = 50;
  std::uint64_t seed = 1;

  static ThetaOptions sdr_from_config(const SystemConfig& cfg,
                                      std::uint64_t seed) {
    ThetaOptions o;
    o.outer_tol = cfg.mm_outer_tol;
    o.max_outer = cfg.mm_max_outer;
    o.pga_grad_tol = cfg.pga_grad_tol;
    o.pga_max_iter = cfg.pga_max_iter;
    o.dykstra_tol = cfg.dykstra_tol;
    o.dykstra_max_iter = cfg.dykstra_max_iter;
    o.j_randomizations = cfg.j_randomizations;
    o.seed = seed;
    return o;
  }

  static ThetaOptions sca_from_config(const SystemConfig& cfg,
                                      std::uint64_t seed) {
    ThetaOptions o;
    o.outer_tol = cfg.sca_outer_tol;
    o.max_outer = cfg.sca_max_outer;
    o.pga_grad_tol = cfg.sca_pga_tol;
    o.pga_max_iter = cfg.sca_pga_max_iter;
    o.seed = seed;
    return o;
  }
};

/// Per-outer-iteration record of the two bound flavors on
/// ln tr(B2 T) + ln tr(E2 T): the printed log-denominator form and the
/// trace-denominator linearization that drives the loop.
struct MmBoundLog {
  double printed = 0.0;
  double linearized = 0.0;
};

struct ThetaResult {
  CVector theta;
  std::vector<double> objective_trace;  ///< relaxed objective per outer iter, bits
  std::vector<MmBoundLog> bound_log;
  bool converged = false;
  bool improved = false;  ///< final theta beats the incoming theta
  int outer_iterations = 0;
  int inner_steps = 0;
};

namespace detail {

inline double sdr_relaxed_objective_bits(const SdrMatrices& s,
                                         const CMatrix& t) {
  const double tb1 = real_trace_product(s.b1, t);
  const double tb2 = real_trace_product(s.b2, t);
  const double te1 = real_trace_product(s.e1, t);
  const double te2 = real_trace_product(s.e2, t);
  return (std::log(tb1) - std::log(tb2) + std::log(te1) - std::log(te2)) /
         std::numbers::ln2;
}

/// Exact elliptope retraction: clip negative eigenvalues, then rescale by
/// the diagonal congruence D^{-1/2} X D^{-1/2} so the result is psd with a
/// unit diagonal at machine precision. Used after the (budgeted) Dykstra
/// projection so every iterate of the inner solver is feasible.
inline CMatrix elliptope_repair(const CMatrix& x) {
  CMatrix p = project_psd(x);
  const std::size_t n = p.rows();
  std::vector<double> scale(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = std::real(p(i, i));
    if (d < 1e-12) {
      // degenerate row: decouple it and pin the diagonal
      for (std::size_t j = 0; j < n; ++j) {
        p(i, j) = cd{0.0, 0.0};
        p(j, i) = cd{0.0, 0.0};
      }
      p(i, i) = cd{1.0, 0.0};
      scale[i] = 1.0;
    } else {
      scale[i] = 1.0 / std::sqrt(d);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) p(i, j) *= scale[i] * scale[j];
    p(i, i) = cd{1.0, 0.0};
  }
  return p;
}

}  // namespace detail

/// Majorization-minimization over the elliptope followed by rank-one
/// recovery. Each outer iteration maximizes
///   ln tr(B1 T) + ln tr(E1 T) - tr((B2/tr(B2 That) + E2/tr(E2 That)) T)
/// over {T psd, T(m,m) = 1}. The inner ascent combines conditional-gradient
/// chords toward exactly feasible rank-one phase vertices with projected
/// gradient steps (Dykstra projection plus feasibility repair, backtracking
/// step halving until ascent); every iterate is elliptope-feasible and the
/// surrogate value is non-decreasing. Rounding keeps the
/// principal-eigenvector phase candidate alongside the Gaussian
/// randomization samples, and the result is returned only if it improves
/// the secrecy rate of `theta0`.
inline ThetaResult sdr_optimize_theta(const SdrMatrices& s,
                                      const CVector& theta0,
                                      const ThetaOptions& opts) {
  detail::require_unit_modulus(theta0);
  const std::size_t n = theta0.size() + 1;

  const CVector t0 = lift_theta(theta0);
  CMatrix t_mat = outer(t0, t0);

  // The surrogate depends on T only through four traces; cache them.
  struct Traces {
    double b1, b2, e1, e2;
  };
  const auto traces_of = [&s](const CMatrix& t) {
    return Traces{real_trace_product(s.b1, t), real_trace_product(s.b2, t),
                  real_trace_product(s.e1, t), real_trace_product(s.e2, t)};
  };

  ThetaResult res;
  double phi_cur = detail::sdr_relaxed_objective_bits(s, t_mat);
  res.objective_trace.push_back(phi_cur);

  for (int outer_it = 0; outer_it < opts.max_outer; ++outer_it) {
    const CMatrix anchor = t_mat;
    const double tb2_hat = real_trace_product(s.b2, anchor);
    const double te2_hat = real_trace_product(s.e2, anchor);
    const CMatrix penalty =
        cd{1.0 / tb2_hat, 0.0} * s.b2 + cd{1.0 / te2_hat, 0.0} * s.e2;

    const auto surrogate_at = [&](const Traces& u) {
      return std::log(u.b1) + std::log(u.e1) - u.b2 / tb2_hat -
             u.e2 / te2_hat;
    };

    Traces u_cur = traces_of(t_mat);
    double s_cur = surrogate_at(u_cur);
    double eta = 0.0;  // set from the first gradient
    // inner precision beyond the outer MM tolerance is wasted work
    const double gain_floor =
        std::max(1e-9, 0.02 * opts.outer_tol * std::numbers::ln2);

    // Exact line search on the feasible chord T + g (cand - T): the traces
    // are affine in g, so the 1-D concave profile costs only scalars.
    // Returns the chord maximizer; gamma = 0 recovers the incumbent.
    struct ChordPoint {
      double gamma = 0.0;
      Traces u{};
      double value = 0.0;
    };
    const auto chord_max = [&](const Traces& u_from, const Traces& u_to) {
      const auto at_gamma = [&](double g) {
        return Traces{u_from.b1 + g * (u_to.b1 - u_from.b1),
                      u_from.b2 + g * (u_to.b2 - u_from.b2),
                      u_from.e1 + g * (u_to.e1 - u_from.e1),
                      u_from.e2 + g * (u_to.e2 - u_from.e2)};
      };
      double lo = 0.0, hi = 1.0;
      for (int it = 0; it < 60; ++it) {
        const double g1 = lo + (hi - lo) / 3.0;
        const double g2 = hi - (hi - lo) / 3.0;
        if (surrogate_at(at_gamma(g1)) < surrogate_at(at_gamma(g2)))
          lo = g1;
        else
          hi = g2;
      }
      ChordPoint p;
      p.gamma = 0.5 * (lo + hi);
      p.u = at_gamma(p.gamma);
      p.value = surrogate_at(p.u);
      return p;
    };

    for (int step = 0; step < opts.pga_max_iter; ++step) {
      const CMatrix grad = hermitian_part(
          cd{1.0 / u_cur.b1, 0.0} * s.b1 + cd{1.0 / u_cur.e1, 0.0} * s.e1 -
          penalty);
      ++res.inner_steps;
      bool moved = false;

      // Conditional-gradient pull toward the rank-one vertex built from the
      // entrywise phases of the gradient's top eigenvector. The vertex is
      // exactly feasible, so the chord stays inside the elliptope and no
      // projection is needed; this takes the long moves cheaply.
      {
        const CVector u_top = hermitian_eig(grad).eigenvector(0);
        CVector phases(n);
        for (std::size_t i = 0; i < n; ++i) {
          const double a = std::abs(u_top[i]);
          phases[i] = (a < 1e-12) ? cd{1.0, 0.0} : u_top[i] / a;
        }
        const CMatrix vertex = outer(phases, phases);
        const ChordPoint p = chord_max(u_cur, traces_of(vertex));
        if (std::isfinite(p.value) && p.value - s_cur > gain_floor) {
          t_mat = t_mat + cd{p.gamma, 0.0} * (vertex - t_mat);
          u_cur = p.u;
          s_cur = p.value;
          moved = true;
        }
      }

      // Projected-gradient step with the Dykstra elliptope projection and a
      // feasibility repair; engaged when the vertex pull stalls, and the
      // only mechanism that can leave the rank-one vertex hull.
      if (!moved) {
        const double grad_norm = std::max(frobenius_norm(grad), 1e-300);
        const double t_norm = std::max(frobenius_norm(t_mat), 1.0);
        // relative step clamp keeps the pre-projection point near the
        // elliptope, where the budgeted Dykstra pass lands close
        const double eta_cap = t_norm / grad_norm;
        if (eta <= 0.0) eta = 0.5 * eta_cap;
        eta = std::min(eta, eta_cap);

        double eta_try = eta;
        CMatrix best_mat;
        Traces u_best{};
        double s_best = s_cur;
        bool have_gain = false;
        for (int bt = 0; bt < 6; ++bt) {
          const CMatrix cand = detail::elliptope_repair(
              project_elliptope(t_mat + cd{eta_try, 0.0} * grad,
                                opts.dykstra_max_iter, opts.dykstra_tol)
                  .matrix);
          const ChordPoint p = chord_max(u_cur, traces_of(cand));
          if (std::isfinite(p.value) && p.value > s_best) {
            s_best = p.value;
            u_best = p.u;
            best_mat = t_mat + cd{p.gamma, 0.0} * (cand - t_mat);
            have_gain = true;
            if (p.value - s_cur > gain_floor) {
              eta = eta_try * (p.gamma > 0.9 ? 2.0 : 1.0);
              break;
            }
          }
          eta_try *= 0.5;
        }
        if (have_gain) {
          const double gained = s_best - s_cur;
          t_mat = best_mat;
          u_cur = u_best;
          s_cur = s_best;
          moved = gained > gain_floor;
        }
      }

      if (!moved) break;  // plateau at the inner tolerance
    }

    res.outer_iterations = outer_it + 1;

    MmBoundLog log;
    log.printed = mm_surrogate_value(s.b2, t_mat, anchor) +
                  mm_surrogate_value(s.e2, t_mat, anchor);
    log.linearized =
        std::log(tb2_hat) + (real_trace_product(s.b2, t_mat) - tb2_hat) / tb2_hat +
        std::log(te2_hat) + (real_trace_product(s.e2, t_mat) - te2_hat) / te2_hat;
    res.bound_log.push_back(log);

    const double phi_new = detail::sdr_relaxed_objective_bits(s, t_mat);
    res.objective_trace.push_back(phi_new);
    const double delta = phi_new - phi_cur;
    phi_cur = phi_new;
    if (std::abs(delta) <= opts.outer_tol) {
      res.converged = true;
      break;
    }
  }

  // Rank-one recovery: principal-eigenvector phases plus Gaussian samples.
  const EigResult eig = hermitian_eig(t_mat);
  const auto phase_candidate = [&n](const CVector& z) {
    CVector lifted(n);
    const cd ref = z[n - 1];
    const cd ref_phase =
        (std::abs(ref) < 1e-12) ? cd{1.0, 0.0} : ref / std::abs(ref);
    for (std::size_t i = 0; i < n; ++i) {
      const cd zi = z[i] * std::conj(ref_phase);
      lifted[i] = (std::abs(zi) < 1e-9) ? cd{1.0, 0.0} : zi / std::abs(zi);
    }
    return lifted;
  };

  std::vector<CVector> candidates;
  candidates.push_back(phase_candidate(eig.eigenvector(0)));

  // factor S with S S^H = T for CN(0, T) sampling
  CMatrix sqrt_factor(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double lam = std::max(eig.values[k], 0.0);
    const double sq = std::sqrt(lam);
    for (std::size_t i = 0; i < n; ++i)
      sqrt_factor(i, k) = sq * eig.vectors(i, k);
  }
  for (int j = 0; j < opts.j_randomizations; ++j) {
    Rng rng(split_seed(opts.seed, 0x6A75ULL + static_cast<std::uint64_t>(j)));
    const CVector xi = matvec(sqrt_factor, rng.cnormal_vector(n));
    candidates.push_back(phase_candidate(xi));
  }

  const double rs_incumbent = secrecy_rate_lifted(s, theta0);
  double rs_best = rs_incumbent;
  CVector theta_best = theta0;
  for (const CVector& cand : candidates) {
    const CVector theta_cand = unlift_theta(cand);
    const double rs = secrecy_rate_lifted(s, theta_cand);
    if (rs > rs_best) {
      rs_best = rs;
      theta_best = theta_cand;
    }
  }
  res.improved = rs_best > rs_incumbent;
  res.theta = theta_best;
  return res;
}

}  // namespace irsdm

#endif  // IRSDM_SCHEME_HP_HPP

// SPDX-License-Identifier: Apache-2.0
//
// irsdm - secrecy-rate optimization for IRS-aided directional modulation links
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef IRSDM_SCHEME_LC_HPP
#define IRSDM_SCHEME_LC_HPP

#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "irsdm/linalg.hpp"
#include "irsdm/scheme_hp.hpp"
#include "irsdm/system_model.hpp"

namespace irsdm {

namespace detail {

/// u = H_ai^H diag(theta)^H h_reflect, the cascaded column seen from Alice.
inline CVector irs_cascade_vector(const ChannelSet& ch, const CVector& theta,
                                  Receiver target) {
  const CVector& h_reflect = (target == Receiver::Bob) ? ch.h_ib : ch.h_ie;
  const std::size_t n = ch.H_ai.cols();
  CVector u(n);
  for (std::size_t j = 0; j < n; ++j) {
    cd s{0.0, 0.0};
    for (std::size_t m = 0; m < theta.size(); ++m)
      s += std::conj(ch.H_ai(m, j)) * std::conj(theta[m]) * h_reflect[m];
    u[j] = s;
  }
  return u;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Leakage-based closed forms for v and w
// ---------------------------------------------------------------------------

/// F1 = alpha P (g_aib u_b u_b^H + g_ab h_ab h_ab^H),
/// F2 = alpha P g_ae h_ae h_ae^H + sigma_b^2 I, with u_b the Bob-side
/// cascade column.
inline std::pair<CMatrix, CMatrix> slnr_matrices(const SystemConfig& cfg,
                                                 const ChannelSet& ch,
                                                 double alpha,
                                                 const CVector& theta) {
  detail::require_unit_modulus(theta);
  const double p = cfg.p_watt();
  const CVector u_b = detail::irs_cascade_vector(ch, theta, Receiver::Bob);
  const double g_aib = ch.g_ai * ch.g_ib;
  const CMatrix f1 = cd{alpha * p * g_aib, 0.0} * outer(u_b, u_b) +
                     cd{alpha * p * ch.g_ab, 0.0} * outer(ch.h_ab, ch.h_ab);
  CMatrix f2 = cd{alpha * p * ch.g_ae, 0.0} * outer(ch.h_ae, ch.h_ae);
  f2 = add_scaled_identity(f2, cfg.sigma_b2_watt());
  return {hermitian_part(f1), hermitian_part(f2)};
}

inline CVector optimize_v_slnr(const CMatrix& f1, const CMatrix& f2) {
  return generalized_rayleigh_max(f1, f2, "max-SLNR subproblem (v)");
}

/// G1 = (1-alpha) P g_ae h_ae h_ae^H,
/// G2 = (1-alpha) P (g_aib u_b u_b^H + g_ab h_ab h_ab^H) + sigma_e^2 I.
inline std::pair<CMatrix, CMatrix> anlnr_matrices(const SystemConfig& cfg,
                                                  const ChannelSet& ch,
                                                  double alpha,
                                                  const CVector& theta) {
  detail::require_unit_modulus(theta);
  const double p = cfg.p_watt();
  const CVector u_b = detail::irs_cascade_vector(ch, theta, Receiver::Bob);
  const double g_aib = ch.g_ai * ch.g_ib;
  const CMatrix g1 =
      cd{(1.0 - alpha) * p * ch.g_ae, 0.0} * outer(ch.h_ae, ch.h_ae);
  CMatrix g2 = cd{(1.0 - alpha) * p * g_aib, 0.0} * outer(u_b, u_b) +
               cd{(1.0 - alpha) * p * ch.g_ab, 0.0} * outer(ch.h_ab, ch.h_ab);
  g2 = add_scaled_identity(g2, cfg.sigma_e2_watt());
  return {hermitian_part(g1), hermitian_part(g2)};
}

/// With alpha = 1 the numerator matrix vanishes and any unit vector attains
/// the (zero) ratio; the convention is to steer by the Eve direction alone,
/// which `fallback_direction` supplies.
inline CVector optimize_w_anlnr(
    const CMatrix& g1, const CMatrix& g2,
    const std::optional<CVector>& fallback_direction = std::nullopt) {
  const double scale = frobenius_norm(g2);
  if (frobenius_norm(g1) <= 1e-18 * std::max(1.0, scale) &&
      fallback_direction.has_value()) {
    const CMatrix dir = outer(*fallback_direction, *fallback_direction);
    return generalized_rayleigh_max(hermitian_part(dir), g2,
                                    "max-ANLNR subproblem (w, degenerate)");
  }
  return generalized_rayleigh_max(g1, g2, "max-ANLNR subproblem (w)");
}

// ---------------------------------------------------------------------------
// SCA surrogate for the theta subproblem
// ---------------------------------------------------------------------------

/// Linear surrogate of the lifted log-ratio objective around `anchor`:
///   f_K = (K1/(a^H K2 a) - (K2 - lmax(K2) I) (a^H K1 a)/(a^H K2 a)^2) a,
///   xi_K = a^H K1 a / a^H K2 a - lmax(K2) 2(M+1) a^H K1 a / (a^H K2 a)^2.
struct ScaSurrogate {
  CVector f_b, f_e;
  double xi_b = 0.0, xi_e = 0.0;
  CVector anchor;
};

inline ScaSurrogate sca_surrogate(const CMatrix& b1, const CMatrix& b2,
                                  const CMatrix& e1, const CMatrix& e2,
                                  const CVector& anchor) {
  const double m_plus_1 = static_cast<double>(anchor.size());
  const auto one_side = [&](const CMatrix& k1, const CMatrix& k2, CVector& f,
                            double& xi) {
    const double q2 = real_quad_form(k2, anchor);
    if (!(q2 > 0.0))
      throw std::domain_error("sca_surrogate: nonpositive anchor quadratic form");
    const double q1 = real_quad_form(k1, anchor);
    const double lam = max_eigenvalue(k2);
    const CVector k1a = matvec(k1, anchor);
    const CVector k2a = matvec(k2, anchor);
    f = CVector(anchor.size());
    for (std::size_t i = 0; i < anchor.size(); ++i)
      f[i] = k1a[i] / q2 - (q1 / (q2 * q2)) * (k2a[i] - lam * anchor[i]);
    xi = q1 / q2 - lam * 2.0 * m_plus_1 * q1 / (q2 * q2);
  };

  ScaSurrogate s;
  s.anchor = anchor;
  one_side(b1, b2, s.f_b, s.xi_b);
  one_side(e1, e2, s.f_e, s.xi_e);
  return s;
}

// ---------------------------------------------------------------------------
// SCA optimization of theta
// ---------------------------------------------------------------------------

namespace detail {

inline double sca_relaxed_objective_bits(const CMatrix& b1, const CMatrix& b2,
                                         const CMatrix& e1, const CMatrix& e2,
                                         const CVector& t) {
  return std::log2(real_quad_form(b1, t) / real_quad_form(b2, t)) +
         std::log2(real_quad_form(e1, t) / real_quad_form(e2, t));
}

inline CVector project_lifted_box(CVector t) {
  const std::size_t m = t.size() - 1;
  for (std::size_t i = 0; i < m; ++i) {
    const double a = std::abs(t[i]);
    if (a > 1.0) t[i] = t[i] / a;
  }
  t[m] = cd{1.0, 0.0};
  return t;
}

inline CVector phase_normalized_lifted(const CVector& t) {
  CVector out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double a = std::abs(t[i]);
    out[i] = (a < 1e-9) ? cd{1.0, 0.0} : t[i] / a;
  }
  out[t.size() - 1] = cd{1.0, 0.0};
  return out;
}

}  // namespace detail

/// Successive convex approximation: each outer iteration maximizes
///   log2(2 Re{f_B^H t} + xi_B) + log2(2 Re{f_E^H t} + xi_E)
/// over the per-entry disks |t_m| <= 1 with the last coordinate pinned to 1,
/// by projected gradient ascent whose backtracking keeps both log arguments
/// >= 1e-12. The finalized phase-only theta is returned only when it
/// improves the secrecy rate of `theta0`.
inline ThetaResult sca_optimize_theta(const CMatrix& b1, const CMatrix& b2,
                                      const CMatrix& e1, const CMatrix& e2,
                                      const CVector& theta0,
                                      const ThetaOptions& opts) {
  detail::require_unit_modulus(theta0);

  CVector t = lift_theta(theta0);
  CVector anchor = t;

  ThetaResult res;
  double phi_cur = detail::sca_relaxed_objective_bits(b1, b2, e1, e2, t);
  res.objective_trace.push_back(phi_cur);

  double prev_surrogate_bits = 0.0;
  bool have_prev = false;

  for (int outer = 0; outer < opts.max_outer; ++outer) {
    ScaSurrogate sur = sca_surrogate(b1, b2, e1, e2, anchor);
    const auto args_of = [&sur](const CVector& x) {
      double arg_b = sur.xi_b, arg_e = sur.xi_e;
      for (std::size_t i = 0; i < x.size(); ++i) {
        arg_b += 2.0 * std::real(std::conj(sur.f_b[i]) * x[i]);
        arg_e += 2.0 * std::real(std::conj(sur.f_e[i]) * x[i]);
      }
      return std::pair<double, double>{arg_b, arg_e};
    };

    // A relaxed anchor can push a log argument nonpositive; re-anchoring at
    // its entrywise phases restores exactness of the bound at the anchor.
    {
      const auto [ab, ae] = args_of(anchor);
      if (!(ab > 1e-12) || !(ae > 1e-12)) {
        anchor = detail::phase_normalized_lifted(anchor);
        t = anchor;
        sur = sca_surrogate(b1, b2, e1, e2, anchor);
      }
    }

    const auto surrogate_nats = [&](const CVector& x) {
      const auto [ab, ae] = args_of(x);
      if (!(ab > 0.0) || !(ae > 0.0))
        return -std::numeric_limits<double>::infinity();
      return std::log(ab) + std::log(ae);
    };

    double g_cur = surrogate_nats(t);
    double eta = 1.0;
    for (int step = 0; step < opts.pga_max_iter; ++step) {
      const auto [ab, ae] = args_of(t);
      CVector grad(t.size());
      for (std::size_t i = 0; i < t.size(); ++i)
        grad[i] = sur.f_b[i] / ab + sur.f_e[i] / ae;
      const double gn = norm(grad);
      if (gn <= opts.pga_grad_tol) break;

      bool accepted = false;
      CVector cand;
      double g_cand = 0.0;
      double eta_try = eta;
      for (int bt = 0; bt < 40; ++bt) {
        cand = detail::project_lifted_box(t + cd{eta_try, 0.0} * grad);
        const auto [cb, ce] = args_of(cand);
        if (cb >= 1e-12 && ce >= 1e-12) {
          g_cand = surrogate_nats(cand);
          if (g_cand >= g_cur) {
            accepted = true;
            break;
          }
        }
        eta_try *= 0.5;
      }
      ++res.inner_steps;
      if (!accepted) break;
      const double moved = norm(cand - t);
      const double gained = g_cand - g_cur;
      t = cand;
      g_cur = g_cand;
      eta = std::min(eta_try * 2.0, 1e9);
      if (moved <= 1e-12 * std::sqrt(static_cast<double>(t.size()))) break;
      if (gained <= opts.pga_grad_tol * 1e-3 * std::max(1.0, std::abs(g_cur)))
        break;
    }

    res.outer_iterations = outer + 1;

    // With a relaxed anchor the surrogate equality at the anchor is lost, so
    // a surrogate ascent step no longer certifies a true ascent; keep the
    // trace monotone by rejecting steps that lower the relaxed objective.
    const double phi_new = detail::sca_relaxed_objective_bits(b1, b2, e1, e2, t);
    if (phi_new < phi_cur) {
      t = anchor;
      res.objective_trace.push_back(phi_cur);
      res.converged = true;
      break;
    }
    phi_cur = phi_new;
    res.objective_trace.push_back(phi_new);

    const double surrogate_bits = g_cur / std::numbers::ln2;
    if (have_prev && std::abs(surrogate_bits - prev_surrogate_bits) <=
                         opts.outer_tol) {
      res.converged = true;
      break;
    }
    prev_surrogate_bits = surrogate_bits;
    have_prev = true;
    anchor = t;
  }

  const CVector finalized = detail::phase_normalized_lifted(t);
  const CVector theta_cand = unlift_theta(finalized);

  const SdrMatrices quad{b1, b2, e1, e2};
  const double rs_incumbent = secrecy_rate_lifted(quad, theta0);
  const double rs_cand = secrecy_rate_lifted(quad, theta_cand);
  if (rs_cand > rs_incumbent) {
    res.theta = theta_cand;
    res.improved = true;
  } else {
    res.theta = theta0;
    res.improved = false;
  }
  return res;
}

}  // namespace irsdm

#endif  // IRSDM_SCHEME_LC_HPP

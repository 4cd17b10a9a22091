// SPDX-License-Identifier: Apache-2.0
//
// irsdm - secrecy-rate optimization for IRS-aided directional modulation links
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef IRSDM_POWER_ALLOCATION_HPP
#define IRSDM_POWER_ALLOCATION_HPP

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "irsdm/system_model.hpp"

namespace irsdm {

/// Scalars of the power-allocation subproblem at fixed (v, w, theta):
///   a = P|h_b^H v|^2 - P|h_b^H w|^2,  b = P|h_b^H w|^2 + sigma_b^2,
///   c = P|h_b^H w|^2,                 d = P|h_e^H w|^2,
///   e = d + sigma_e^2,                f = P|h_e^H v|^2 - d,
/// together with the numerator-quadratic coefficients of the derivative of
///   f(alpha) = (a alpha + b)(-d alpha + e) / ((-c alpha + b)(f alpha + e)).
struct PaCoefficients {
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0, e = 0.0, f = 0.0;
  double a_quad = 0.0, b_quad = 0.0, c_quad = 0.0;
};

/// Builds PaCoefficients from the four channel projections.
inline PaCoefficients pa_coefficients_from_projections(
    double p_watt, double abs2_hb_v, double abs2_hb_w, double abs2_he_v,
    double abs2_he_w, double sigma_b2, double sigma_e2) {
  PaCoefficients co;
  co.a = p_watt * abs2_hb_v - p_watt * abs2_hb_w;
  co.b = p_watt * abs2_hb_w + sigma_b2;
  co.c = p_watt * abs2_hb_w;
  co.d = p_watt * abs2_he_w;
  co.e = co.d + sigma_e2;
  co.f = p_watt * abs2_he_v - co.d;
  const double a = co.a, b = co.b, c = co.c, d = co.d, e = co.e, f = co.f;
  co.a_quad = a * d * (c * e - b * f) - c * f * (b * d - a * e);
  co.b_quad = 2.0 * (b * e * c * f - a * d * b * e);
  co.c_quad = (c * e - b * f) * b * e - (b * d - a * e) * b * e;
  return co;
}

inline PaCoefficients pa_coefficients(const SystemConfig& cfg,
                                      const ChannelSet& ch, const CVector& v,
                                      const CVector& w, const CVector& theta) {
  const CVector h_b = effective_channel(ch, theta, Receiver::Bob);
  const CVector h_e = effective_channel(ch, theta, Receiver::Eve);
  return pa_coefficients_from_projections(
      cfg.p_watt(), std::norm(inner(h_b, v)), std::norm(inner(h_b, w)),
      std::norm(inner(h_e, v)), std::norm(inner(h_e, w)),
      cfg.sigma_b2_watt(), cfg.sigma_e2_watt());
}

/// f(alpha) = 2^{R_s} evaluated in factored form; both denominator factors
/// stay >= min(sigma_b^2, sigma_e^2) > 0 on [0, 1].
inline double pa_objective(const PaCoefficients& co, double alpha) {
  const double num = (co.a * alpha + co.b) * (-co.d * alpha + co.e);
  const double den = (-co.c * alpha + co.b) * (co.f * alpha + co.e);
  return num / den;
}

/// Closed-form optimal PA factor: best of the stationary points of f on
/// [0, 1] and the endpoints. Ties within 1e-12 in f break toward smaller
/// alpha.
inline double optimal_alpha(const PaCoefficients& co) {
  for (const double x : {co.a, co.b, co.c, co.d, co.e, co.f, co.a_quad,
                         co.b_quad, co.c_quad})
    if (std::isnan(x))
      throw std::invalid_argument("optimal_alpha: NaN coefficient");

  std::vector<double> candidates = {0.0, 1.0};
  const auto push_if_in_range = [&candidates](double r) {
    if (r >= -1e-12 && r <= 1.0 + 1e-12)
      candidates.push_back(std::min(1.0, std::max(0.0, r)));
  };

  const double aq = co.a_quad, bq = co.b_quad, cq = co.c_quad;
  if (aq == 0.0) {
    if (bq != 0.0) push_if_in_range(-cq / bq);
  } else {
    const double disc = bq * bq - 4.0 * aq * cq;
    if (disc >= 0.0) {
      const double sq = std::sqrt(disc);
      // stable quadratic roots
      const double qv = -0.5 * (bq + (bq >= 0.0 ? sq : -sq));
      push_if_in_range(qv / aq);
      if (qv != 0.0) push_if_in_range(cq / qv);
    }
  }

  std::sort(candidates.begin(), candidates.end());
  double best_alpha = candidates.front();
  double best_val = pa_objective(co, best_alpha);
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const double val = pa_objective(co, candidates[i]);
    if (val > best_val + 1e-12 * std::max(1.0, std::abs(best_val))) {
      best_val = val;
      best_alpha = candidates[i];
    }
  }
  return best_alpha;
}

}  // namespace irsdm

#endif  // IRSDM_POWER_ALLOCATION_HPP

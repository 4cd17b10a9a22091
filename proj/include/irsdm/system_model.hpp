// SPDX-License-Identifier: Apache-2.0
//
// irsdm - secrecy-rate optimization for IRS-aided directional modulation links
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef IRSDM_SYSTEM_MODEL_HPP
#define IRSDM_SYSTEM_MODEL_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "irsdm/linalg.hpp"

namespace irsdm {

/// All physical and algorithmic parameters of one scenario. Angles are in
/// radians, distances in meters, powers in dBm (converted to watts through
/// the accessors; all internal math runs in linear units).
struct SystemConfig {
  // Physical layout
  std::size_t n_alice = 8;    ///< transmit antennas at Alice
  std::size_t m_irs = 128;    ///< IRS reflective elements
  double p_dbm = 30.0;        ///< total transmit power
  double sigma_b_dbm = -40.0; ///< noise power at Bob
  double sigma_e_dbm = -40.0; ///< noise power at Eve
  double theta_ai = 17.0 * std::numbers::pi / 36.0;
  double theta_ab = std::numbers::pi / 2.0;
  double theta_ae = 11.0 * std::numbers::pi / 18.0;
  double d_ai = 120.0;
  double d_ab = 150.0;
  double d_ae = 150.0;
  double spacing_over_lambda = 0.5;
  double pathloss_const = 1e-2;
  /// IRS array axis angle; NaN selects the default orientation,
  /// perpendicular to the Alice-to-IRS line.
  double irs_orientation = std::numeric_limits<double>::quiet_NaN();

  // Algorithmic parameters
  std::uint64_t seed = 1;
  double tol_outer = 1e-3;   ///< outer alternating-loop stop, bits/s/Hz
  int max_outer = 30;
  int j_randomizations = 50;

  double gpi_tol = 1e-9;
  int gpi_max_iter = 500;
  double mm_outer_tol = 1e-4;
  int mm_max_outer = 8;
  double pga_grad_tol = 1e-6;
  int pga_max_iter = 2000;
  double dykstra_tol = 1e-9;
  int dykstra_max_iter = 120;
  double sca_outer_tol = 1e-5;
  int sca_max_outer = 12;
  double sca_pga_tol = 1e-10;
  int sca_pga_max_iter = 500;

  double p_watt() const;
  double sigma_b2_watt() const;
  double sigma_e2_watt() const;
  double irs_axis_angle() const {
    return std::isnan(irs_orientation)
               ? theta_ai + std::numbers::pi / 2.0
               : irs_orientation;
  }
};

/// All direct and cascaded channel vectors plus real path-loss gains.
struct ChannelSet {
  CVector h_ab;  ///< Alice->Bob steering, length N
  CVector h_ae;  ///< Alice->Eve steering, length N
  CVector h_ai;  ///< Alice->IRS steering (Alice side), length N
  CVector h_ia;  ///< Alice->IRS steering (IRS side), length M
  CVector h_ib;  ///< IRS->Bob steering, length M
  CVector h_ie;  ///< IRS->Eve steering, length M
  CMatrix H_ai;  ///< rank-one cascade h_ia h_ai^H, M x N
  double g_ab = 0.0;
  double g_ae = 0.0;
  double g_ai = 0.0;
  double g_ib = 0.0;
  double g_ie = 0.0;
};

/// The four optimization variables at one iterate: PA factor, CM and AN
/// beamformers, and the IRS phase-shift diagonal (unit-modulus entries of
/// the reflection matrix).
struct BeamState {
  double alpha = 0.5;
  CVector v;
  CVector w;
  CVector theta;
};

enum class Receiver { Bob, Eve };

// ---------------------------------------------------------------------------
// Elementary builders
// ---------------------------------------------------------------------------

inline double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

inline double SystemConfig::p_watt() const { return dbm_to_watt(p_dbm); }
inline double SystemConfig::sigma_b2_watt() const { return dbm_to_watt(sigma_b_dbm); }
inline double SystemConfig::sigma_e2_watt() const { return dbm_to_watt(sigma_e_dbm); }

/// Normalized uniform-linear-array steering vector toward angle `theta`
/// (measured from the array axis): entry k is
/// (1/sqrt(K)) exp(j 2 pi Phi(k)) with Phi(k) = -(k - (K+1)/2) (d/lambda) cos(theta).
inline CVector steering_vector(double theta, std::size_t k_elems,
                               double spacing_over_lambda) {
  if (k_elems == 0)
    throw std::invalid_argument("steering_vector: element count must be >= 1");
  CVector h(k_elems);
  const double scale = 1.0 / std::sqrt(static_cast<double>(k_elems));
  const double c = std::cos(theta) * spacing_over_lambda;
  const double mid = (static_cast<double>(k_elems) + 1.0) / 2.0;
  for (std::size_t k = 1; k <= k_elems; ++k) {
    const double phi = -(static_cast<double>(k) - mid) * c;
    const double a = 2.0 * std::numbers::pi * phi;
    h[k - 1] = scale * cd{std::cos(a), std::sin(a)};
  }
  return h;
}

/// Inverse-square path gain: pathloss_const / d^2.
inline double path_gain(double d, double pathloss_const) {
  if (!(d > 0.0))
    throw std::invalid_argument("path_gain: distance must be positive");
  return pathloss_const / (d * d);
}

inline void validate(const SystemConfig& cfg) {
  const double pi = std::numbers::pi;
  if (cfg.n_alice < 1 || cfg.m_irs < 1)
    throw std::invalid_argument("config: antenna and IRS element counts must be >= 1");
  for (const double a : {cfg.theta_ai, cfg.theta_ab, cfg.theta_ae})
    if (!(a > 0.0 && a < pi))
      throw std::invalid_argument("config: departure angles must lie in (0, pi)");
  for (const double d : {cfg.d_ai, cfg.d_ab, cfg.d_ae})
    if (!(d > 0.0))
      throw std::invalid_argument("config: distances must be positive");
  if (!(cfg.pathloss_const > 0.0))
    throw std::invalid_argument("config: pathloss_const must be positive");
  if (!(cfg.spacing_over_lambda > 0.0))
    throw std::invalid_argument("config: spacing_over_lambda must be positive");
  if (!(cfg.tol_outer > 0.0) || cfg.max_outer < 1)
    throw std::invalid_argument("config: outer loop parameters invalid");
  if (cfg.j_randomizations < 0)
    throw std::invalid_argument("config: j_randomizations must be >= 0");
}

/// Places Alice at the origin and the IRS/Bob/Eve at their polar coordinates,
/// derives the IRS-side distances and angles from the geometry, and fills all
/// steering vectors and path gains.
inline ChannelSet build_channels(const SystemConfig& cfg) {
  validate(cfg);

  struct Point {
    double x, y;
  };
  const auto polar = [](double d, double ang) {
    return Point{d * std::cos(ang), d * std::sin(ang)};
  };
  const Point irs = polar(cfg.d_ai, cfg.theta_ai);
  const Point bob = polar(cfg.d_ab, cfg.theta_ab);
  const Point eve = polar(cfg.d_ae, cfg.theta_ae);

  const auto dist = [](Point a, Point b) {
    return std::hypot(a.x - b.x, a.y - b.y);
  };
  const double d_ib = dist(irs, bob);
  const double d_ie = dist(irs, eve);
  if (d_ib < 1e-9 || d_ie < 1e-9)
    throw std::invalid_argument("build_channels: IRS coincident with Bob or Eve");

  const double axis = cfg.irs_axis_angle();
  const auto irs_angle_toward = [&](Point p) {
    return std::atan2(p.y - irs.y, p.x - irs.x) - axis;
  };
  const double ang_ia = irs_angle_toward(Point{0.0, 0.0});
  const double ang_ib = irs_angle_toward(bob);
  const double ang_ie = irs_angle_toward(eve);

  ChannelSet ch;
  ch.h_ab = steering_vector(cfg.theta_ab, cfg.n_alice, cfg.spacing_over_lambda);
  ch.h_ae = steering_vector(cfg.theta_ae, cfg.n_alice, cfg.spacing_over_lambda);
  ch.h_ai = steering_vector(cfg.theta_ai, cfg.n_alice, cfg.spacing_over_lambda);
  ch.h_ia = steering_vector(ang_ia, cfg.m_irs, cfg.spacing_over_lambda);
  ch.h_ib = steering_vector(ang_ib, cfg.m_irs, cfg.spacing_over_lambda);
  ch.h_ie = steering_vector(ang_ie, cfg.m_irs, cfg.spacing_over_lambda);
  ch.H_ai = outer(ch.h_ia, ch.h_ai);
  ch.g_ab = path_gain(cfg.d_ab, cfg.pathloss_const);
  ch.g_ae = path_gain(cfg.d_ae, cfg.pathloss_const);
  ch.g_ai = path_gain(cfg.d_ai, cfg.pathloss_const);
  ch.g_ib = path_gain(d_ib, cfg.pathloss_const);
  ch.g_ie = path_gain(d_ie, cfg.pathloss_const);
  return ch;
}

// ---------------------------------------------------------------------------
// Effective channels and rates
// ---------------------------------------------------------------------------

namespace detail {

inline void require_unit_modulus(const CVector& theta, double tol = 1e-8) {
  for (const cd& t : theta)
    if (std::abs(std::abs(t) - 1.0) > tol)
      throw std::invalid_argument("theta entries must be unit modulus");
}

}  // namespace detail

/// Effective receive channel column h_b (or h_e):
/// h^H = sqrt(g_direct) h_direct^H + sqrt(g_ai g_reflect) h_reflect^H diag(theta) H_ai.
inline CVector effective_channel(const ChannelSet& ch, const CVector& theta,
                                 Receiver target) {
  const CVector& h_direct = (target == Receiver::Bob) ? ch.h_ab : ch.h_ae;
  const CVector& h_reflect = (target == Receiver::Bob) ? ch.h_ib : ch.h_ie;
  const double g_direct = (target == Receiver::Bob) ? ch.g_ab : ch.g_ae;
  const double g_reflect = (target == Receiver::Bob) ? ch.g_ib : ch.g_ie;
  if (theta.size() != h_reflect.size() || ch.H_ai.rows() != theta.size())
    throw std::invalid_argument("effective_channel: dimension mismatch");
  detail::require_unit_modulus(theta);

  // column form: h = sqrt(g_d) h_direct + sqrt(g_ai g_r) H_ai^H diag(theta)^H h_reflect
  const std::size_t n = ch.H_ai.cols();
  CVector h(n);
  const double cascade = std::sqrt(ch.g_ai * g_reflect);
  for (std::size_t j = 0; j < n; ++j) {
    cd s{0.0, 0.0};
    for (std::size_t m = 0; m < theta.size(); ++m)
      s += std::conj(ch.H_ai(m, j)) * std::conj(theta[m]) * h_reflect[m];
    h[j] = std::sqrt(g_direct) * h_direct[j] + cascade * s;
  }
  return h;
}

inline double achievable_rate(const SystemConfig& cfg, const ChannelSet& ch,
                              const BeamState& state, Receiver target) {
  const CVector h = effective_channel(ch, state.theta, target);
  const double p = cfg.p_watt();
  const double sigma2 = (target == Receiver::Bob) ? cfg.sigma_b2_watt()
                                                  : cfg.sigma_e2_watt();
  const double sig = state.alpha * p * std::norm(inner(h, state.v));
  const double an = (1.0 - state.alpha) * p * std::norm(inner(h, state.w));
  return std::log2(1.0 + sig / (an + sigma2));
}

/// R_s = R_b - R_e, unclamped (may be negative).
inline double secrecy_rate(const SystemConfig& cfg, const ChannelSet& ch,
                           const BeamState& state) {
  return achievable_rate(cfg, ch, state, Receiver::Bob) -
         achievable_rate(cfg, ch, state, Receiver::Eve);
}

// ---------------------------------------------------------------------------
// Lifted phase coordinates
// ---------------------------------------------------------------------------

/// Lifted phase vector used by the theta subproblems. The reflection
/// coefficients enter the lifted quadratic forms conjugated, so that
/// lifted^H h_b1 = sqrt(alpha P) h_b^H v holds exactly.
inline CVector lift_theta(const CVector& theta) {
  CVector t(theta.size() + 1);
  for (std::size_t m = 0; m < theta.size(); ++m) t[m] = std::conj(theta[m]);
  t[theta.size()] = cd{1.0, 0.0};
  return t;
}

/// Recovers the physical reflection coefficients from a lifted vector,
/// normalizing out the global phase of the last coordinate. Near-zero
/// entries map to 1.
inline CVector unlift_theta(const CVector& lifted) {
  if (lifted.size() < 2)
    throw std::invalid_argument("unlift_theta: lifted dimension must be >= 2");
  const std::size_t m = lifted.size() - 1;
  const cd ref = lifted[m];
  const cd ref_phase = (std::abs(ref) < 1e-12) ? cd{1.0, 0.0} : ref / std::abs(ref);
  CVector theta(m);
  for (std::size_t i = 0; i < m; ++i) {
    const cd z = lifted[i] * std::conj(ref_phase);
    theta[i] = (std::abs(z) < 1e-9) ? cd{1.0, 0.0} : std::conj(z / std::abs(z));
  }
  return theta;
}

}  // namespace irsdm

#endif  // IRSDM_SYSTEM_MODEL_HPP

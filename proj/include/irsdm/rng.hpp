// SPDX-License-Identifier: Apache-2.0
//
// irsdm - secrecy-rate optimization for IRS-aided directional modulation links
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef IRSDM_RNG_HPP
#define IRSDM_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>

#include "irsdm/linalg.hpp"

namespace irsdm {

/// Derives an independent stream seed from (base, stream) via splitmix64
/// mixing; stable across platforms.
inline std::uint64_t split_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Small deterministic generator (xoshiro-free, splitmix64 core) with
/// hand-rolled Box-Muller so that byte-identical output does not depend on
/// standard-library distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x853C49E6748FEA9BULL) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Standard real normal via Box-Muller.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  /// Circularly symmetric complex normal CN(0, 1).
  cd cnormal() {
    const double re = normal();
    const double im = normal();
    return cd{re, im} * std::sqrt(0.5);
  }

  CVector cnormal_vector(std::size_t n) {
    CVector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = cnormal();
    return v;
  }

  CVector random_unit_vector(std::size_t n) {
    return normalized(cnormal_vector(n));
  }

  /// Vector of unit-modulus entries with uniform phases.
  CVector random_phases(std::size_t n) {
    CVector v(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double a = 2.0 * std::numbers::pi * uniform();
      v[i] = cd{std::cos(a), std::sin(a)};
    }
    return v;
  }

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace irsdm

#endif  // IRSDM_RNG_HPP

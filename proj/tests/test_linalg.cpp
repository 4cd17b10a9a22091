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

#include "irsdm/linalg.hpp"
#include "irsdm/rng.hpp"
#include "test_util.hpp"

using namespace irsdm;
using test::random_hermitian;
using test::random_pd;
using test::random_psd;

namespace {

CMatrix diag_matrix(std::initializer_list<double> d) {
  CMatrix m(d.size(), d.size());
  std::size_t i = 0;
  for (const double x : d) {
    m(i, i) = x;
    ++i;
  }
  return m;
}

double reconstruction_error(const CMatrix& x, const EigResult& eig) {
  const std::size_t n = x.rows();
  CMatrix rec(n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        rec(i, j) += eig.values[k] * eig.vectors(i, k) *
                     std::conj(eig.vectors(j, k));
  return max_abs(x - rec);
}

}  // namespace

// ---------------------------------------------------------------------------
// hermitian_eig
// ---------------------------------------------------------------------------

TEST(HermitianEig, IdentityHasUnitEigenvalues) {
  const EigResult eig = hermitian_eig(CMatrix::identity(3));
  for (const double v : eig.values) EXPECT_NEAR(v, 1.0, 1e-14);
}

TEST(HermitianEig, DiagonalSortedDescending) {
  const EigResult eig = hermitian_eig(diag_matrix({3.0, 1.0, 2.0}));
  ASSERT_EQ(eig.values.size(), 3u);
  EXPECT_NEAR(eig.values[0], 3.0, 1e-14);
  EXPECT_NEAR(eig.values[1], 2.0, 1e-14);
  EXPECT_NEAR(eig.values[2], 1.0, 1e-14);
}

TEST(HermitianEig, RandomReconstruction) {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const CMatrix x = random_hermitian(rng, 8);
    const EigResult eig = hermitian_eig(x);
    EXPECT_LE(reconstruction_error(x, eig), 1e-9 * std::max(1.0, max_abs(x)));
  }
}

TEST(HermitianEig, ResidualAndOrthonormality) {
  Rng rng(11);
  for (const std::size_t n : {2u, 5u, 16u, 33u}) {
    const CMatrix x = random_hermitian(rng, n);
    const EigResult eig = hermitian_eig(x);
    const double scale = frobenius_norm(x);
    for (std::size_t k = 0; k < n; ++k) {
      const CVector u = eig.eigenvector(k);
      const CVector r = matvec(x, u) - cd{eig.values[k], 0.0} * u;
      EXPECT_LE(norm(r), 1e-9 * std::max(1.0, scale));
      for (std::size_t l = 0; l < n; ++l) {
        const cd g = inner(eig.eigenvector(l), u);
        EXPECT_NEAR(std::abs(g), l == k ? 1.0 : 0.0, 1e-10);
      }
    }
  }
}

TEST(HermitianEig, CanonicalPhaseMakesLargestEntryRealNonnegative) {
  Rng rng(13);
  const CMatrix x = random_hermitian(rng, 6);
  const EigResult eig = hermitian_eig(x);
  for (std::size_t k = 0; k < 6; ++k) {
    const CVector u = eig.eigenvector(k);
    std::size_t arg = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < u.size(); ++i)
      if (std::abs(u[i]) > best) {
        best = std::abs(u[i]);
        arg = i;
      }
    EXPECT_GE(std::real(u[arg]), 0.0);
    EXPECT_NEAR(std::imag(u[arg]), 0.0, 1e-10);
  }
}

TEST(HermitianEig, RejectsNonHermitian) {
  CMatrix x(2, 2);
  x(0, 1) = cd{1.0, 0.0};
  x(1, 0) = cd{5.0, 0.0};
  EXPECT_THROW(hermitian_eig(x), std::invalid_argument);
  EXPECT_THROW(hermitian_eig_jacobi(x), std::invalid_argument);
}

TEST(HermitianEig, GradedSpectraWithTightClusters) {
  // rank-2 + scaled identity at channel scales: a (n-2)-fold cluster around
  // 3e-9 under eigenvalues near 1e-5, couplings down at 1e-21
  Rng rng(101);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = (trial % 2) ? 65 : 129;
    const CVector a = rng.cnormal_vector(n);
    const CVector b = rng.cnormal_vector(n);
    CMatrix x = outer(a, a) + outer(b, b);
    x = hermitian_part(add_scaled_identity(cd{1e-7, 0.0} * x, 3e-9));
    const EigResult eig = hermitian_eig(x);
    const double scale = frobenius_norm(x);
    for (const std::size_t k : {std::size_t{0}, n / 2, n - 1}) {
      const CVector u = eig.eigenvector(k);
      const CVector r = matvec(x, u) - cd{eig.values[k], 0.0} * u;
      EXPECT_LE(norm(r), 1e-9 * std::max(1.0, scale));
    }
  }
}

TEST(HermitianEig, AgreesWithJacobiReference) {
  Rng rng(59);
  for (const std::size_t n : {1u, 2u, 3u, 7u, 12u, 33u}) {
    const CMatrix x = random_hermitian(rng, n, 2.0);
    const EigResult fast = hermitian_eig(x);
    const EigResult ref = hermitian_eig_jacobi(x);
    const double scale = std::max(1.0, frobenius_norm(x));
    for (std::size_t k = 0; k < n; ++k)
      EXPECT_NEAR(fast.values[k], ref.values[k], 1e-9 * scale);
    EXPECT_LE(reconstruction_error(x, fast), 1e-9 * scale);
    EXPECT_LE(reconstruction_error(x, ref), 1e-9 * scale);
  }
}

// ---------------------------------------------------------------------------
// generalized_rayleigh_max
// ---------------------------------------------------------------------------

TEST(GeneralizedRayleigh, IdentityBReducesToPrincipalEigenvector) {
  Rng rng(17);
  const CMatrix a = random_hermitian(rng, 5);
  const CVector v = generalized_rayleigh_max(a, CMatrix::identity(5));
  const CVector u = hermitian_eig(a).eigenvector(0);
  EXPECT_LE(test::vec_distance_up_to_phase(v, u), 1e-9);
}

TEST(GeneralizedRayleigh, ScaleInvariantArgmax) {
  Rng rng(19);
  const CMatrix a = random_hermitian(rng, 4);
  const CMatrix b = random_pd(rng, 4);
  const CVector v1 = generalized_rayleigh_max(a, b);
  const CVector v2 = generalized_rayleigh_max(cd{3.7, 0.0} * a, b);
  const CVector v3 =
      generalized_rayleigh_max(cd{0.25, 0.0} * a, cd{0.25, 0.0} * b);
  EXPECT_LE(test::vec_distance_up_to_phase(v1, v2), 1e-9);
  EXPECT_LE(test::vec_distance_up_to_phase(v1, v3), 1e-9);
}

TEST(GeneralizedRayleigh, BeatsRandomSampling) {
  Rng rng(23);
  for (int trial = 0; trial < 5; ++trial) {
    const CMatrix a = random_psd(rng, 4);
    const CMatrix b = random_pd(rng, 4);
    const CVector v = generalized_rayleigh_max(a, b);
    const double ratio = real_quad_form(a, v) / real_quad_form(b, v);
    Rng sampler(100 + trial);
    double best = -1e300;
    for (int i = 0; i < 100000; ++i) {
      const CVector u = sampler.random_unit_vector(4);
      best = std::max(best, real_quad_form(a, u) / real_quad_form(b, u));
    }
    EXPECT_GE(ratio, best - 1e-12 * std::abs(best));
  }
}

TEST(GeneralizedRayleigh, SingularBRaisesNamedError) {
  const CMatrix a = CMatrix::identity(3);
  CMatrix b(3, 3);  // zero matrix
  try {
    generalized_rayleigh_max(a, b, "cm-beamforming subproblem (v)");
    FAIL() << "expected failure on singular B";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("cm-beamforming"), std::string::npos);
  }
}

// ---------------------------------------------------------------------------
// project_psd
// ---------------------------------------------------------------------------

TEST(ProjectPsd, FixedPointOnPsdInput) {
  Rng rng(29);
  const CMatrix x = random_psd(rng, 5);
  EXPECT_LE(max_abs(project_psd(x) - x), 1e-12 * std::max(1.0, max_abs(x)));
}

TEST(ProjectPsd, ClipsNegativeEigenvalue) {
  const CMatrix p = project_psd(diag_matrix({1.0, -1.0}));
  EXPECT_NEAR(std::real(p(0, 0)), 1.0, 1e-12);
  EXPECT_NEAR(std::real(p(1, 1)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(p(0, 1)), 0.0, 1e-12);
}

TEST(ProjectPsd, Idempotent) {
  Rng rng(31);
  const CMatrix x = random_hermitian(rng, 6);
  const CMatrix once = project_psd(x);
  const CMatrix twice = project_psd(once);
  EXPECT_LE(max_abs(twice - once), 1e-12 * std::max(1.0, max_abs(once)));
}

TEST(ProjectPsd, NearestAmongSampledCandidates) {
  Rng rng(37);
  const CMatrix x = random_hermitian(rng, 4);
  const CMatrix p = project_psd(x);
  const double dist = frobenius_norm(x - p);
  EXPECT_GE(hermitian_eig(p).values.back(), -1e-12);
  for (int i = 0; i < 200; ++i) {
    const CMatrix cand = random_psd(rng, 4);
    EXPECT_LE(dist, frobenius_norm(x - cand) + 1e-12);
  }
}

// ---------------------------------------------------------------------------
// project_elliptope
// ---------------------------------------------------------------------------

TEST(ProjectElliptope, IdentityIsFixedPoint) {
  const ElliptopeResult r = project_elliptope(CMatrix::identity(4));
  EXPECT_TRUE(r.converged);
  EXPECT_LE(max_abs(r.matrix - CMatrix::identity(4)), 1e-10);
}

TEST(ProjectElliptope, RankOneUnitModulusIsFixedPoint) {
  Rng rng(41);
  const CVector t = rng.random_phases(5);
  const CMatrix x = outer(t, t);
  const ElliptopeResult r = project_elliptope(x);
  EXPECT_TRUE(r.converged);
  EXPECT_LE(max_abs(r.matrix - x), 1e-8);
}

TEST(ProjectElliptope, RandomInputFeasibilityResiduals) {
  Rng rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    const CMatrix x = random_hermitian(rng, 4, 2.0);
    const ElliptopeResult r = project_elliptope(x, 500, 1e-10);
    EXPECT_TRUE(r.converged);
    for (std::size_t i = 0; i < 4; ++i)
      EXPECT_NEAR(std::real(r.matrix(i, i)), 1.0, 1e-8);
    EXPECT_GE(hermitian_eig(r.matrix).values.back(), -1e-8);
  }
}

// ---------------------------------------------------------------------------
// cholesky and solves
// ---------------------------------------------------------------------------

TEST(Cholesky, FactorsAndSolves) {
  Rng rng(47);
  const CMatrix b = random_pd(rng, 6);
  const CMatrix l = cholesky_lower(b, "test");
  EXPECT_LE(max_abs(matmul(l, adjoint(l)) - b), 1e-10 * max_abs(b));

  const CVector rhs = rng.cnormal_vector(6);
  const CVector y = solve_lower(l, rhs);
  const CVector x = solve_lower_adjoint(l, y);
  EXPECT_LE(norm(matvec(b, x) - rhs), 1e-9 * norm(rhs));
}

TEST(Cholesky, WhiteningCongruence) {
  Rng rng(53);
  const CMatrix a = random_hermitian(rng, 5);
  const CMatrix b = random_pd(rng, 5);
  const CMatrix l = cholesky_lower(b, "test");
  const CMatrix c = whiten_congruence(l, a);
  // L C L^H should reproduce A
  EXPECT_LE(max_abs(matmul(matmul(l, c), adjoint(l)) - a),
            1e-9 * std::max(1.0, max_abs(a)));
}

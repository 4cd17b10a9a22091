// SPDX-License-Identifier: Apache-2.0
//
// irsdm - secrecy-rate optimization for IRS-aided directional modulation links
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef IRSDM_LINALG_HPP
#define IRSDM_LINALG_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace irsdm {

using cd = std::complex<double>;

/// Dense complex column vector.
class CVector {
 public:
  CVector() = default;
  explicit CVector(std::size_t n) : e_(n, cd{0.0, 0.0}) {}
  CVector(std::initializer_list<cd> init) : e_(init) {}

  std::size_t size() const { return e_.size(); }
  cd& operator[](std::size_t i) { return e_[i]; }
  const cd& operator[](std::size_t i) const { return e_[i]; }

  auto begin() { return e_.begin(); }
  auto end() { return e_.end(); }
  auto begin() const { return e_.begin(); }
  auto end() const { return e_.end(); }

 private:
  std::vector<cd> e_;
};

/// Dense complex matrix, row-major.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), e_(rows * cols, cd{0.0, 0.0}) {}

  static CMatrix identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  cd& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const cd& operator()(std::size_t i, std::size_t j) const {
    return e_[i * cols_ + j];
  }

  cd* row_ptr(std::size_t i) { return e_.data() + i * cols_; }
  const cd* row_ptr(std::size_t i) const { return e_.data() + i * cols_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cd> e_;
};

// ---------------------------------------------------------------------------
// Vector algebra
// ---------------------------------------------------------------------------

/// Conjugate-linear inner product a^H b.
inline cd inner(const CVector& a, const CVector& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("inner: dimension mismatch");
  cd s{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

inline double squared_norm(const CVector& v) {
  double s = 0.0;
  for (const cd& x : v) s += std::norm(x);
  return s;
}

inline double norm(const CVector& v) { return std::sqrt(squared_norm(v)); }

inline CVector operator*(cd s, const CVector& v) {
  CVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = s * v[i];
  return r;
}

inline CVector operator+(const CVector& a, const CVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector add: dim");
  CVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline CVector operator-(const CVector& a, const CVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector sub: dim");
  CVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline CVector conj_vec(const CVector& v) {
  CVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = std::conj(v[i]);
  return r;
}

inline CVector normalized(const CVector& v) {
  const double n = norm(v);
  if (!(n > 0.0) || !std::isfinite(n))
    throw std::domain_error("normalized: zero or non-finite vector");
  return cd{1.0 / n, 0.0} * v;
}

/// Rotates the global phase so the largest-magnitude entry is real
/// nonnegative; makes eigenvector comparisons deterministic.
inline CVector canonical_phase(const CVector& v) {
  std::size_t k = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double a = std::abs(v[i]);
    if (a > best) {
      best = a;
      k = i;
    }
  }
  if (best <= 0.0) return v;
  const cd phase = v[k] / std::abs(v[k]);
  return std::conj(phase) * v;
}

// ---------------------------------------------------------------------------
// Matrix algebra
// ---------------------------------------------------------------------------

inline CMatrix adjoint(const CMatrix& a) {
  CMatrix r(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(j, i) = std::conj(a(i, j));
  return r;
}

inline CMatrix operator+(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matrix add: dim");
  CMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) + b(i, j);
  return r;
}

inline CMatrix operator-(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matrix sub: dim");
  CMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
  return r;
}

inline CMatrix operator*(cd s, const CMatrix& a) {
  CMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = s * a(i, j);
  return r;
}

inline CMatrix matmul(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matmul: dim");
  CMatrix r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cd aik = a(i, k);
      if (aik == cd{0.0, 0.0}) continue;
      const cd* brow = b.row_ptr(k);
      cd* rrow = r.row_ptr(i);
      for (std::size_t j = 0; j < b.cols(); ++j) rrow[j] += aik * brow[j];
    }
  }
  return r;
}

inline CVector matvec(const CMatrix& a, const CVector& x) {
  if (a.cols() != x.size()) throw std::invalid_argument("matvec: dim");
  CVector r(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    cd s{0.0, 0.0};
    const cd* row = a.row_ptr(i);
    for (std::size_t j = 0; j < a.cols(); ++j) s += row[j] * x[j];
    r[i] = s;
  }
  return r;
}

/// Outer product a b^H.
inline CMatrix outer(const CVector& a, const CVector& b) {
  CMatrix r(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r(i, j) = a[i] * std::conj(b[j]);
  return r;
}

inline CMatrix add_scaled_identity(const CMatrix& a, double s) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("add_scaled_identity: square required");
  CMatrix r = a;
  for (std::size_t i = 0; i < a.rows(); ++i) r(i, i) += s;
  return r;
}

inline cd trace(const CMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("trace: square");
  cd s{0.0, 0.0};
  for (std::size_t i = 0; i < a.rows(); ++i) s += a(i, i);
  return s;
}

/// Re tr(A B) for same-size square matrices.
inline double real_trace_product(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.cols() || a.cols() != b.rows())
    throw std::invalid_argument("trace product: dim");
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      s += std::real(a(i, k) * b(k, i));
  return s;
}

inline double frobenius_norm(const CMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

inline double max_abs(const CMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      s = std::max(s, std::abs(a(i, j)));
  return s;
}

inline double hermitian_deviation(const CMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      s = std::max(s, std::abs(a(i, j) - std::conj(a(j, i))));
  return s;
}

inline bool is_hermitian(const CMatrix& a, double tol = 1e-9) {
  if (a.rows() != a.cols()) return false;
  return hermitian_deviation(a) <= tol * (1.0 + max_abs(a));
}

inline CMatrix hermitian_part(const CMatrix& a) {
  CMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      r(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
  return r;
}

/// v^H A v.
inline cd quad_form(const CMatrix& a, const CVector& v) {
  return inner(v, matvec(a, v));
}

inline double real_quad_form(const CMatrix& a, const CVector& v) {
  return std::real(quad_form(a, v));
}

namespace detail {

inline void require_hermitian(const CMatrix& x, std::string_view what) {
  if (x.rows() != x.cols())
    throw std::invalid_argument(std::string(what) + ": matrix not square");
  if (!is_hermitian(x))
    throw std::invalid_argument(std::string(what) + ": matrix not hermitian");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Hermitian eigendecomposition (cyclic complex Jacobi)
// ---------------------------------------------------------------------------

struct EigResult {
  std::vector<double> values;  // descending
  CMatrix vectors;             // eigenvectors as columns, matching values

  CVector eigenvector(std::size_t k) const {
    CVector v(vectors.rows());
    for (std::size_t i = 0; i < vectors.rows(); ++i) v[i] = vectors(i, k);
    return v;
  }
};

namespace detail {

/// Sorts eigenpairs descending and canonicalizes each eigenvector phase.
inline EigResult finalize_eig(const std::vector<double>& diag,
                              const CMatrix& v) {
  const std::size_t n = diag.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return diag[i] > diag[j];
  });
  EigResult res;
  res.values.resize(n);
  res.vectors = CMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    res.values[k] = diag[order[k]];
    CVector col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = v(i, order[k]);
    col = canonical_phase(col);
    for (std::size_t i = 0; i < n; ++i) res.vectors(i, k) = col[i];
  }
  return res;
}

}  // namespace detail

/// Reference eigendecomposition of a hermitian matrix by cyclic complex
/// Jacobi rotations; unconditionally reliable but O(n^3) per sweep with a
/// large constant. Production calls go through hermitian_eig, which is
/// validated against this routine in the test suite.
inline EigResult hermitian_eig_jacobi(const CMatrix& x) {
  detail::require_hermitian(x, "hermitian_eig");
  const std::size_t n = x.rows();
  if (n > 512)
    throw std::invalid_argument("hermitian_eig: dimension exceeds 512");

  CMatrix a = hermitian_part(x);
  CMatrix v = CMatrix::identity(n);
  const double fro = std::max(frobenius_norm(a), 1e-300);

  const int max_sweeps = 64;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off2 = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off2 += 2.0 * std::norm(a(i, j));
    if (std::sqrt(off2) <= 1e-12 * fro) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cd apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag <= 1e-300) continue;

        const double app = std::real(a(p, p));
        const double aqq = std::real(a(q, q));
        const double d = 0.5 * (app - aqq);
        const double r = std::hypot(d, mag);
        // t = lambda_max - app, evaluated without cancellation
        const double t = (d >= 0.0) ? (mag * mag) / (r + d) : (r - d);
        const double nrm = std::sqrt(mag * mag + t * t);
        // First column aligns with the dominant eigenvector of the 2x2 block.
        const cd u00 = apq / nrm;
        const double u10 = t / nrm;
        const cd u01 = cd{-u10, 0.0};
        const cd u11 = std::conj(apq) / nrm;

        // A <- A * U on columns p, q
        for (std::size_t k = 0; k < n; ++k) {
          const cd akp = a(k, p);
          const cd akq = a(k, q);
          a(k, p) = akp * u00 + akq * u10;
          a(k, q) = akp * u01 + akq * u11;
        }
        // A <- U^H * A on rows p, q
        for (std::size_t k = 0; k < n; ++k) {
          const cd apk = a(p, k);
          const cd aqk = a(q, k);
          a(p, k) = std::conj(u00) * apk + std::conj(u10) * aqk;
          a(q, k) = std::conj(u01) * apk + std::conj(u11) * aqk;
        }
        a(p, q) = cd{0.0, 0.0};
        a(q, p) = cd{0.0, 0.0};
        a(p, p) = cd{std::real(a(p, p)), 0.0};
        a(q, q) = cd{std::real(a(q, q)), 0.0};

        // V <- V * U
        for (std::size_t k = 0; k < n; ++k) {
          const cd vkp = v(k, p);
          const cd vkq = v(k, q);
          v(k, p) = vkp * u00 + vkq * u10;
          v(k, q) = vkp * u01 + vkq * u11;
        }
      }
    }
  }

  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = std::real(a(i, i));
  return detail::finalize_eig(diag, v);
}

/// Eigendecomposition of a hermitian matrix via Householder
/// tridiagonalization followed by the implicit-shift QL iteration; an order
/// of magnitude faster than the Jacobi reference at n around 100.
/// Eigenvalues descending, eigenvectors orthonormal with the
/// largest-magnitude entry rotated to be real nonnegative.
inline EigResult hermitian_eig(const CMatrix& x) {
  detail::require_hermitian(x, "hermitian_eig");
  const std::size_t n = x.rows();
  if (n > 512)
    throw std::invalid_argument("hermitian_eig: dimension exceeds 512");
  if (n == 1) {
    EigResult res;
    res.values = {std::real(x(0, 0))};
    res.vectors = CMatrix::identity(1);
    return res;
  }

  CMatrix a = hermitian_part(x);
  CMatrix q = CMatrix::identity(n);

  // Householder reduction to hermitian tridiagonal form, Q accumulated.
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double xnorm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) xnorm2 += std::norm(a(i, k));
    const double xnorm = std::sqrt(xnorm2);
    if (xnorm <= 1e-300) continue;

    const cd x0 = a(k + 1, k);
    const cd phase = (std::abs(x0) < 1e-300) ? cd{1.0, 0.0} : x0 / std::abs(x0);
    const cd alpha = -phase * xnorm;

    // v = normalize(x - alpha e1), supported on rows k+1..n-1
    CVector v(n);
    v[k + 1] = x0 - alpha;
    double vnorm2 = std::norm(v[k + 1]);
    for (std::size_t i = k + 2; i < n; ++i) {
      v[i] = a(i, k);
      vnorm2 += std::norm(v[i]);
    }
    if (vnorm2 <= 1e-300) continue;
    const double inv = 1.0 / std::sqrt(vnorm2);
    for (std::size_t i = k + 1; i < n; ++i) v[i] *= inv;

    // A <- P A P with P = I - 2 v v^H: rank-2 update with q = Av - (v^H A v) v
    CVector w(n);
    for (std::size_t i = k; i < n; ++i) {
      cd s{0.0, 0.0};
      const cd* row = a.row_ptr(i);
      for (std::size_t j = k + 1; j < n; ++j) s += row[j] * v[j];
      w[i] = s;
    }
    cd vw{0.0, 0.0};
    for (std::size_t i = k + 1; i < n; ++i) vw += std::conj(v[i]) * w[i];
    for (std::size_t i = k + 1; i < n; ++i) w[i] -= vw * v[i];
    // v vanishes at and below index k, so entries with i,j < k+1 are inert
    for (std::size_t i = k; i < n; ++i) {
      const cd vi = v[i];
      const cd wi = w[i];
      cd* row = a.row_ptr(i);
      for (std::size_t j = k; j < n; ++j)
        row[j] -= 2.0 * (vi * std::conj(w[j]) + wi * std::conj(v[j]));
    }
    // Q <- Q P
    for (std::size_t i = 0; i < n; ++i) {
      cd s{0.0, 0.0};
      const cd* row = q.row_ptr(i);
      for (std::size_t j = k + 1; j < n; ++j) s += row[j] * v[j];
      s *= 2.0;
      cd* wrow = q.row_ptr(i);
      for (std::size_t j = k + 1; j < n; ++j) wrow[j] -= s * std::conj(v[j]);
    }
  }

  // Rescale the complex subdiagonal to real via a diagonal unitary.
  std::vector<double> d(n), e(n, 0.0);
  {
    std::vector<cd> phases(n, cd{1.0, 0.0});
    for (std::size_t k = 0; k + 1 < n; ++k) {
      const cd ek = a(k + 1, k);
      const double m = std::abs(ek);
      phases[k + 1] = (m < 1e-300) ? phases[k] : ek * phases[k] / m;
      e[k] = m;
    }
    for (std::size_t i = 0; i < n; ++i) {
      d[i] = std::real(a(i, i));
      for (std::size_t r = 0; r < n; ++r) q(r, i) *= phases[i];
    }
  }

  // Implicit-shift QL iteration on the real symmetric tridiagonal (d, e),
  // rotations accumulated into the complex Q. Subdiagonal negligibility is
  // judged against the running global scale, which keeps graded spectra
  // (tight clusters far below the top eigenvalue) from spinning forever.
  double scale = 0.0;
  for (std::size_t l = 0; l < n; ++l) {
    scale = std::max(scale, std::abs(d[l]) + std::abs(e[l]));
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        if (scale + std::abs(e[m]) == scale) break;
      }
      if (m != l) {
        if (iter++ == 60)
          throw std::runtime_error("hermitian_eig: QL iteration stalled");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + (g >= 0.0 ? std::abs(r) : -std::abs(r)));
        double s = 1.0, c = 1.0, p = 0.0;
        std::size_t i = m;
        bool underflow = false;
        while (i-- > l) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          for (std::size_t row = 0; row < n; ++row) {
            const cd t1 = q(row, i + 1);
            const cd t2 = q(row, i);
            q(row, i + 1) = s * t2 + c * t1;
            q(row, i) = c * t2 - s * t1;
          }
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }

  return detail::finalize_eig(d, q);
}

inline double max_eigenvalue(const CMatrix& x) {
  return hermitian_eig(x).values.front();
}

// ---------------------------------------------------------------------------
// Cholesky factorization and triangular solves
// ---------------------------------------------------------------------------

/// Lower Cholesky factor of a hermitian positive definite matrix.
/// `context` names the subproblem in the error message on failure.
inline CMatrix cholesky_lower(const CMatrix& x, std::string_view context) {
  detail::require_hermitian(x, "cholesky");
  const std::size_t n = x.rows();
  CMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = std::real(x(j, j));
    for (std::size_t k = 0; k < j; ++k) s -= std::norm(l(j, k));
    if (!(s > 0.0) || !std::isfinite(s))
      throw std::runtime_error("cholesky: matrix not positive definite in " +
                               std::string(context));
    const double ljj = std::sqrt(s);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      cd v = x(i, j);
      for (std::size_t k = 0; k < j; ++k) v -= l(i, k) * std::conj(l(j, k));
      l(i, j) = v / ljj;
    }
  }
  return l;
}

/// Solves L y = b with L lower triangular.
inline CVector solve_lower(const CMatrix& l, const CVector& b) {
  const std::size_t n = l.rows();
  CVector y(n);
  for (std::size_t i = 0; i < n; ++i) {
    cd s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * y[k];
    y[i] = s / l(i, i);
  }
  return y;
}

/// Solves L^H x = b with L lower triangular.
inline CVector solve_lower_adjoint(const CMatrix& l, const CVector& b) {
  const std::size_t n = l.rows();
  CVector x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    cd s = b[ii];
    for (std::size_t k = ii + 1; k < n; ++k) s -= std::conj(l(k, ii)) * x[k];
    x[ii] = s / std::conj(l(ii, ii));
  }
  return x;
}

/// L^{-1} A L^{-H} for hermitian A.
inline CMatrix whiten_congruence(const CMatrix& l, const CMatrix& a) {
  const std::size_t n = l.rows();
  // Y = L^{-1} A, column by column
  CMatrix y(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    CVector col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = a(i, j);
    CVector sol = solve_lower(l, col);
    for (std::size_t i = 0; i < n; ++i) y(i, j) = sol[i];
  }
  // C = Y L^{-H} = (L^{-1} Y^H)^H
  CMatrix yh = adjoint(y);
  CMatrix z(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    CVector col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = yh(i, j);
    CVector sol = solve_lower(l, col);
    for (std::size_t i = 0; i < n; ++i) z(i, j) = sol[i];
  }
  return hermitian_part(adjoint(z));
}

// ---------------------------------------------------------------------------
// Generalized Rayleigh quotient maximization
// ---------------------------------------------------------------------------

/// Unit-norm u maximizing (u^H A u)/(u^H B u) for hermitian A and hermitian
/// positive definite B, via Cholesky whitening of B followed by the principal
/// eigenvector. `context` names the caller in error messages.
inline CVector generalized_rayleigh_max(const CMatrix& a, const CMatrix& b,
                                        std::string_view context = "generalized_rayleigh_max") {
  detail::require_hermitian(a, context);
  detail::require_hermitian(b, context);
  if (a.rows() != b.rows())
    throw std::invalid_argument(std::string(context) + ": dimension mismatch");
  const CMatrix l = cholesky_lower(b, context);
  const CMatrix c = whiten_congruence(l, a);
  const EigResult eig = hermitian_eig(c);
  const CVector u = eig.eigenvector(0);
  CVector v = solve_lower_adjoint(l, u);
  return canonical_phase(normalized(v));
}

// ---------------------------------------------------------------------------
// Cone projections
// ---------------------------------------------------------------------------

/// Nearest (Frobenius) positive semidefinite matrix: eigenvalue clipping at 0.
inline CMatrix project_psd(const CMatrix& x) {
  detail::require_hermitian(x, "project_psd");
  const std::size_t n = x.rows();
  const EigResult eig = hermitian_eig(x);
  CMatrix r(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double lam = eig.values[k];
    if (lam <= 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const cd vi = eig.vectors(i, k);
      for (std::size_t j = 0; j < n; ++j)
        r(i, j) += lam * vi * std::conj(eig.vectors(j, k));
    }
  }
  return hermitian_part(r);
}

struct ElliptopeResult {
  CMatrix matrix;
  bool converged = false;
  int iterations = 0;
};

/// Dykstra alternating projection onto {X psd} intersected with
/// {X(m,m) = 1}. The returned iterate has an exactly unit diagonal; its
/// distance to the psd cone is bounded by the stopping residual.
inline ElliptopeResult project_elliptope(const CMatrix& x, int max_iters = 200,
                                         double tol = 1e-9) {
  detail::require_hermitian(x, "project_elliptope");
  const std::size_t n = x.rows();

  const auto project_unit_diag = [n](CMatrix m) {
    for (std::size_t i = 0; i < n; ++i) m(i, i) = cd{1.0, 0.0};
    return m;
  };

  CMatrix cur = hermitian_part(x);
  CMatrix p(n, n), q(n, n);
  ElliptopeResult res;
  for (int it = 0; it < max_iters; ++it) {
    const CMatrix y = project_psd(cur + p);
    p = cur + p - y;
    const CMatrix next = project_unit_diag(y + q);
    q = y + q - next;
    const double gap = frobenius_norm(y - next);
    cur = next;
    res.iterations = it + 1;
    if (gap <= tol * std::max(1.0, frobenius_norm(cur))) {
      res.converged = true;
      break;
    }
  }
  res.matrix = cur;
  return res;
}

}  // namespace irsdm

#endif  // IRSDM_LINALG_HPP

// Test-only oracles and generators. Everything here is deliberately naive
// (monomial sums, cofactor expansions, sphere sampling) and independent of
// the implementation paths it cross-checks.
#pragma once

#include <vector>

#include "mpspec/family.hpp"
#include "mpspec/matrix.hpp"
#include "mpspec/poly.hpp"
#include "mpspec/rng.hpp"

namespace oracles {

using mpspec::ComplexMatrix;
using mpspec::cplx;
using mpspec::Family;
using mpspec::MatrixPolynomial;
using mpspec::ParamPoint;
using mpspec::PolyExpr;
using mpspec::ScalarPoly;
using mpspec::Stream;

// --- naive evaluation -------------------------------------------------

inline cplx monomial_sum_eval(const ScalarPoly& p, cplx z) {
  cplx acc = 0.0;
  cplx zk = 1.0;
  for (size_t k = 0; k < p.coeffs.size(); ++k) {
    acc += p.coeffs[k] * zk;
    zk *= z;
  }
  return acc;
}

inline ComplexMatrix monomial_sum_eval(const MatrixPolynomial& p, cplx z) {
  ComplexMatrix acc(p.n, p.n);
  cplx zk = 1.0;
  for (int k = 0; k <= p.d; ++k) {
    acc += p.coeffs[k] * zk;
    zk *= z;
  }
  return acc;
}

// --- cofactor determinants --------------------------------------------

inline cplx cofactor_det(const ComplexMatrix& a) {
  int n = a.rows();
  if (n == 1) return a(0, 0);
  cplx det = 0.0;
  double sign = 1.0;
  for (int r = 0; r < n; ++r) {
    ComplexMatrix minor(n - 1, n - 1);
    for (int i = 0, mi = 0; i < n; ++i) {
      if (i == r) continue;
      for (int j = 1; j < n; ++j) minor(mi, j - 1) = a(i, j);
      ++mi;
    }
    det += sign * a(r, 0) * cofactor_det(minor);
    sign = -sign;
  }
  return det;
}

// Polynomials in lambda as coefficient arrays; convolution arithmetic.
using PolyVec = std::vector<cplx>;

inline PolyVec poly_mul(const PolyVec& a, const PolyVec& b) {
  PolyVec r(a.size() + b.size() - 1, cplx(0.0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

inline void poly_add_into(PolyVec& a, const PolyVec& b, cplx scale = 1.0) {
  if (b.size() > a.size()) a.resize(b.size(), cplx(0.0));
  for (size_t i = 0; i < b.size(); ++i) a[i] += scale * b[i];
}

// det of a matrix whose entries are polynomials in lambda, by cofactor
// expansion along the first column.
inline PolyVec poly_matrix_det(const std::vector<PolyVec>& entries, int n) {
  if (n == 1) return entries[0];
  PolyVec det{cplx(0.0)};
  double sign = 1.0;
  for (int r = 0; r < n; ++r) {
    std::vector<PolyVec> minor;
    minor.reserve((n - 1) * (n - 1));
    for (int i = 0; i < n; ++i) {
      if (i == r) continue;
      for (int j = 1; j < n; ++j) minor.push_back(entries[i * n + j]);
    }
    PolyVec term = poly_mul(entries[r * n + 0], poly_matrix_det(minor, n - 1));
    poly_add_into(det, term, sign);
    sign = -sign;
  }
  return det;
}

// Exact determinant polynomial of P_u(lambda): entry (i,j) collects the
// evaluated coefficients across powers of lambda.
inline ScalarPoly exact_det_poly(const MatrixPolynomial& p) {
  std::vector<PolyVec> entries(p.n * p.n);
  for (int i = 0; i < p.n; ++i)
    for (int j = 0; j < p.n; ++j) {
      PolyVec e(p.d + 1, cplx(0.0));
      for (int k = 0; k <= p.d; ++k) e[k] = p.coeffs[k](i, j);
      entries[i * p.n + j] = std::move(e);
    }
  PolyVec det = poly_matrix_det(entries, p.n);
  det.resize(p.d * p.n + 1, cplx(0.0));
  ScalarPoly out;
  out.coeffs = det;
  return out;
}

// --- random structured inputs -----------------------------------------

inline ComplexMatrix random_matrix(Stream& s, int rows, int cols, double scale = 1.0) {
  ComplexMatrix a(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      a(i, j) = scale * cplx(s.uniform(-1, 1), s.uniform(-1, 1));
  return a;
}

inline ComplexMatrix random_hermitian(Stream& s, int n, double scale = 1.0) {
  ComplexMatrix a = random_matrix(s, n, n, scale);
  ComplexMatrix h(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) h(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
  return h;
}

// Modified Gram-Schmidt on a complex Gaussian matrix.
inline ComplexMatrix random_unitary(Stream& s, int n) {
  ComplexMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = s.complex_normal();
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < j; ++k) {
      cplx dot = 0.0;
      for (int i = 0; i < n; ++i) dot += std::conj(a(i, k)) * a(i, j);
      for (int i = 0; i < n; ++i) a(i, j) -= dot * a(i, k);
    }
    double nrm = 0.0;
    for (int i = 0; i < n; ++i) nrm += std::norm(a(i, j));
    nrm = std::sqrt(nrm);
    for (int i = 0; i < n; ++i) a(i, j) /= nrm;
  }
  return a;
}

// S = U diag(s) V* with log-spaced singular values spanning exactly kappa.
inline ComplexMatrix matrix_with_cond(Stream& s, int n, double kappa) {
  ComplexMatrix u = random_unitary(s, n);
  ComplexMatrix v = random_unitary(s, n);
  ComplexMatrix d(n, n);
  for (int i = 0; i < n; ++i) {
    double t = n == 1 ? 0.0 : double(i) / (n - 1);
    d(i, i) = std::pow(kappa, -t);
  }
  return u * d * v.adjoint();
}

inline ComplexMatrix inverse(const ComplexMatrix& a) {
  return mpspec::lu_solve(a, ComplexMatrix::identity(a.rows()));
}

// Block-diagonal Jordan matrix from (eigenvalue, size) specs.
inline ComplexMatrix jordan_matrix(const std::vector<std::pair<cplx, int>>& blocks) {
  int n = 0;
  for (const auto& [v, s] : blocks) n += s;
  ComplexMatrix j(n, n);
  int at = 0;
  for (const auto& [v, size] : blocks) {
    for (int i = 0; i < size; ++i) {
      j(at + i, at + i) = v;
      if (i + 1 < size) j(at + i, at + i + 1) = 1.0;
    }
    at += size;
  }
  return j;
}

// --- random families ----------------------------------------------------

// Random monic family: polynomial coefficient maps of total degree <=
// coeff_deg with a constant, all linear, and a few quadratic terms.
inline Family random_monic_family(Stream& s, int n, int d, int m, int coeff_deg = 2,
                                  double scale = 0.6) {
  Family f;
  f.n = n;
  f.d = d;
  f.m = m;
  f.monic_flag = true;
  f.coeff_maps.assign(d + 1, {});
  for (int k = 0; k < d; ++k) {
    for (int i = 0; i < n * n; ++i) {
      PolyExpr e = PolyExpr::constant(m, scale * cplx(s.uniform(-1, 1), s.uniform(-1, 1)));
      for (int t = 0; t < m; ++t) {
        cplx c = scale * cplx(s.uniform(-1, 1), s.uniform(-1, 1));
        e += PolyExpr::constant(m, c) * PolyExpr::variable(m, t);
      }
      if (coeff_deg >= 2) {
        int t1 = static_cast<int>(s.uniform() * m);
        int t2 = static_cast<int>(s.uniform() * m);
        t1 = std::min(t1, m - 1);
        t2 = std::min(t2, m - 1);
        cplx c = scale * cplx(s.uniform(-1, 1), s.uniform(-1, 1));
        e += PolyExpr::constant(m, c) * PolyExpr::variable(m, t1) * PolyExpr::variable(m, t2);
      }
      f.coeff_maps[k].push_back(e);
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      f.coeff_maps[d].push_back(PolyExpr::constant(m, i == j ? cplx(1.0) : cplx(0.0)));
  return f;
}

inline ParamPoint random_point(Stream& s, int m, double scale = 0.5) {
  std::vector<double> v(m);
  for (double& x : v) x = s.uniform(-scale, scale);
  return ParamPoint(v);
}

}  // namespace oracles

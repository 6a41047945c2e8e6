// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "mpspec/matrix.hpp"

namespace mpspec {

struct HermitianEig {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix vectors;            // unitary, columns match eigenvalues
};

inline double offdiag_frobenius(const ComplexMatrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// Sweeps until the off-diagonal Frobenius mass falls below 1e-12 * ||A||_F.
inline HermitianEig hermitian_eig(const ComplexMatrix& a) {
  if (!a.square()) config_error("hermitian_eig: matrix not square");
  int n = a.rows();
  double scale = a.frobenius_norm();
  {
    ComplexMatrix diff = a - a.adjoint();
    if (diff.frobenius_norm() > 1e-10 * (1.0 + scale))
      config_error("hermitian_eig: matrix is not Hermitian");
  }

  ComplexMatrix m = a;
  // Symmetrize exactly so roundoff in the input cannot drift the sweeps.
  for (int i = 0; i < n; ++i) {
    m(i, i) = cplx(m(i, i).real(), 0.0);
    for (int j = i + 1; j < n; ++j) {
      cplx avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
      m(i, j) = avg;
      m(j, i) = std::conj(avg);
    }
  }
  ComplexMatrix q = ComplexMatrix::identity(n);

  const double target = 1e-12 * (scale > 0 ? scale : 1.0);
  for (int sweep = 0; sweep < 100 && offdiag_frobenius(m) > target; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int qq = p + 1; qq < n; ++qq) {
        cplx apq = m(p, qq);
        double r = std::abs(apq);
        if (r <= 1e-300) continue;
        double app = m(p, p).real();
        double aqq = m(qq, qq).real();
        cplx phase = apq / r;
        double tau = (aqq - app) / (2.0 * r);
        double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        double c = 1.0 / std::sqrt(1.0 + t * t);
        double s = t * c;
        cplx sp = s * phase;         // column p mixes with e^{i phi}
        cplx spc = std::conj(sp);
        // A <- G* A G with G = [[c, s e^{i phi}], [-s e^{-i phi}, c]] on (p, qq).
        for (int k = 0; k < n; ++k) {
          cplx akp = m(k, p), akq = m(k, qq);
          m(k, p) = c * akp - spc * akq;
          m(k, qq) = sp * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          cplx apk = m(p, k), aqk = m(qq, k);
          m(p, k) = c * apk - sp * aqk;
          m(qq, k) = spc * apk + c * aqk;
        }
        m(p, qq) = 0.0;
        m(qq, p) = 0.0;
        m(p, p) = cplx(m(p, p).real(), 0.0);
        m(qq, qq) = cplx(m(qq, qq).real(), 0.0);
        for (int k = 0; k < n; ++k) {
          cplx qkp = q(k, p), qkq = q(k, qq);
          q(k, p) = c * qkp - spc * qkq;
          q(k, qq) = sp * qkp + c * qkq;
        }
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> diag(n);
  for (int i = 0; i < n; ++i) diag[i] = m(i, i).real();
  std::sort(order.begin(), order.end(), [&](int i, int j) { return diag[i] < diag[j]; });

  HermitianEig out;
  out.eigenvalues.resize(n);
  out.vectors = ComplexMatrix(n, n);
  for (int j = 0; j < n; ++j) {
    out.eigenvalues[j] = diag[order[j]];
    for (int i = 0; i < n; ++i) out.vectors(i, j) = q(i, order[j]);
  }
  return out;
}

// Smallest eigenvalue of the Hermitian part (A + A*)/2.
inline double hermitian_part_min_eig(const ComplexMatrix& a) {
  int n = a.rows();
  ComplexMatrix h(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) h(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
  return hermitian_eig(h).eigenvalues.front();
}

}  // namespace mpspec

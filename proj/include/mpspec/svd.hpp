// One-sided Jacobi SVD, tolerance-based rank, and the spectral norm.
#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "mpspec/matrix.hpp"

namespace mpspec {

struct Svd {
  std::vector<double> sigma;  // nonincreasing
  ComplexMatrix u;            // rows x min(rows, cols) effective columns
  ComplexMatrix v;            // cols x cols, unitary
};

struct RankReport {
  std::vector<double> singular_values;  // nonincreasing
  int rank = 0;
  double tol_used = 0.0;
};

// Right-rotation Jacobi sweeps orthogonalize the columns of A, giving
// A V = U diag(sigma). Adequate and robust at the n <= 50 scale this
// toolkit targets.
inline Svd svd(const ComplexMatrix& a) {
  int rows = a.rows(), cols = a.cols();
  ComplexMatrix w = a;
  ComplexMatrix v = ComplexMatrix::identity(cols);

  auto col_dot = [&](int i, int j) {  // <w_i, w_j> = w_i^* w_j
    cplx s = 0.0;
    for (int k = 0; k < rows; ++k) s += std::conj(w(k, i)) * w(k, j);
    return s;
  };

  const double eps = 1e-28;  // on |<wi,wj>|^2 / (|wi|^2 |wj|^2)
  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (int i = 0; i < cols - 1; ++i) {
      for (int j = i + 1; j < cols; ++j) {
        double alpha = 0.0, beta = 0.0;
        for (int k = 0; k < rows; ++k) {
          alpha += std::norm(w(k, i));
          beta += std::norm(w(k, j));
        }
        cplx gamma = col_dot(i, j);
        double g = std::abs(gamma);
        if (g * g <= eps * alpha * beta || g <= 1e-300) continue;
        rotated = true;
        cplx phase = gamma / g;
        double tau = (beta - alpha) / (2.0 * g);
        double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        double c = 1.0 / std::sqrt(1.0 + t * t);
        double s = t * c;
        cplx sp = s * phase;
        cplx spc = std::conj(sp);
        for (int k = 0; k < rows; ++k) {
          cplx wi = w(k, i), wj = w(k, j);
          w(k, i) = c * wi - spc * wj;
          w(k, j) = sp * wi + c * wj;
        }
        for (int k = 0; k < cols; ++k) {
          cplx vi = v(k, i), vj = v(k, j);
          v(k, i) = c * vi - spc * vj;
          v(k, j) = sp * vi + c * vj;
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<double> sig(cols);
  for (int j = 0; j < cols; ++j) {
    double s = 0.0;
    for (int k = 0; k < rows; ++k) s += std::norm(w(k, j));
    sig[j] = std::sqrt(s);
  }
  std::vector<int> order(cols);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return sig[i] > sig[j]; });

  Svd out;
  out.sigma.resize(cols);
  out.u = ComplexMatrix(rows, cols);
  out.v = ComplexMatrix(cols, cols);
  for (int j = 0; j < cols; ++j) {
    int src = order[j];
    out.sigma[j] = sig[src];
    for (int k = 0; k < cols; ++k) out.v(k, j) = v(k, src);
    if (sig[src] > 0.0)
      for (int k = 0; k < rows; ++k) out.u(k, j) = w(k, src) / sig[src];
  }
  return out;
}

inline double spectral_norm(const ComplexMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  return svd(a).sigma.front();
}

// tol < 0 selects the scale-aware default max(rows, cols) * sigma_max * 1e-10.
inline RankReport svd_rank(const ComplexMatrix& a, double tol = -1.0) {
  Svd s = svd(a);
  RankReport r;
  r.singular_values = s.sigma;
  double smax = s.sigma.empty() ? 0.0 : s.sigma.front();
  r.tol_used = tol >= 0 ? tol : std::max(a.rows(), a.cols()) * smax * 1e-10;
  for (double x : s.sigma)
    if (x > r.tol_used) ++r.rank;
  return r;
}

}  // namespace mpspec

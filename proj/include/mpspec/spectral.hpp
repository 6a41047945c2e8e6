// Spectrum of a matrix polynomial via determinant interpolation, companion
// linearization, spectral radius, Hausdorff distance, and the numerical
// certificates for the spectrum perturbation bound.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "mpspec/family.hpp"
#include "mpspec/poly.hpp"
#include "mpspec/svd.hpp"

namespace mpspec {

struct SpectrumSet {
  std::vector<ClusteredRoot> eigenvalues;  // distinct values, sorted (re, im)
  int total = 0;                           // sum of multiplicities (= dn when monic)

  std::vector<cplx> points() const {
    std::vector<cplx> out;
    out.reserve(eigenvalues.size());
    for (const auto& e : eigenvalues) out.push_back(e.value);
    return out;
  }

  std::vector<cplx> points_with_multiplicity() const {
    std::vector<cplx> out;
    out.reserve(total);
    for (const auto& e : eigenvalues)
      for (int k = 0; k < e.multiplicity; ++k) out.push_back(e.value);
    return out;
  }
};

// Block companion linearization: identity superdiagonal blocks, bottom row
// (-A_0, ..., -A_{d-1}). Non-monic inputs are premultiplied by A_d^{-1}
// after the singularity guard.
inline ComplexMatrix companion_matrix(const MatrixPolynomial& p) {
  int n = p.n, d = p.d;
  std::vector<ComplexMatrix> a(p.coeffs.begin(), p.coeffs.end() - 1);
  bool monic = true;
  {
    const ComplexMatrix& lead = p.coeffs[d];
    for (int i = 0; i < n && monic; ++i)
      for (int j = 0; j < n; ++j)
        if (lead(i, j) != cplx(i == j ? 1.0 : 0.0)) {
          monic = false;
          break;
        }
  }
  if (!monic) {
    if (p.leading_singular || leading_coefficient_singular(p.coeffs[d]))
      numerical_error("companion_matrix: leading coefficient is singular at this point");
    ComplexMatrix stacked(n, n * d);
    for (int k = 0; k < d; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) stacked(i, k * n + j) = a[k](i, j);
    ComplexMatrix solved = lu_solve(p.coeffs[d], stacked);
    for (int k = 0; k < d; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[k](i, j) = solved(i, k * n + j);
  }

  int nn = n * d;
  ComplexMatrix c(nn, nn);
  for (int b = 0; b + 1 < d; ++b)
    for (int i = 0; i < n; ++i) c(b * n + i, (b + 1) * n + i) = 1.0;
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) c((d - 1) * n + i, k * n + j) = -a[k](i, j);
  return c;
}

// det P(lambda) as a scalar polynomial of degree dn, recovered by sampling
// LU determinants at scaled roots of unity. The initial norm-based radius is
// re-tightened when the roots turn out much smaller than the bound, which
// keeps low-order coefficients accurate for matrices with inflated norms.
inline ScalarPoly determinant_polynomial(const MatrixPolynomial& p, double* radius_out = nullptr) {
  int deg = p.d * p.n;
  cplx lead = lu_det(p.coeffs[p.d]);
  if (std::abs(lead) == 0.0)
    numerical_error("determinant_polynomial: singular leading coefficient");

  double rho = 1.0;
  for (const ComplexMatrix& a : p.coeffs) rho = std::max(rho, 1.0 + a.frobenius_norm());

  ScalarPoly det_poly;
  const double two_pi = 6.283185307179586476925286766559;
  for (int pass = 0; pass < 4; ++pass) {
    std::vector<cplx> values(deg + 1);
    for (int j = 0; j <= deg; ++j) {
      double ang = two_pi * j / (deg + 1);
      values[j] = lu_det(p.evaluate_at(rho * cplx(std::cos(ang), std::sin(ang))));
    }
    det_poly = interpolate_from_samples(values, deg, rho, lead);
    RootMultiset probe = aberth_roots(det_poly, 1e-6, 400);
    double rmax = 0.0;
    for (cplx z : probe.roots) rmax = std::max(rmax, std::abs(z));
    double tight = std::max(1.5 * rmax, 1e-2);
    if (tight >= 0.25 * rho) break;
    rho = tight;
  }
  if (radius_out) *radius_out = rho;
  return det_poly;
}

inline SpectrumSet spectrum(const MatrixPolynomial& p, double cluster_tol = 1e-6) {
  ScalarPoly det_poly = determinant_polynomial(p);
  RootMultiset roots = aberth_roots(det_poly, 1e-12, 400);
  SpectrumSet s;
  s.eigenvalues = cluster_roots(roots, cluster_tol);
  s.total = det_poly.degree();
  return s;
}

inline SpectrumSet spectrum(const Family& f, const ParamPoint& u, double cluster_tol = 1e-6) {
  return spectrum(evaluate_coeffs(f, u), cluster_tol);
}

inline double spectral_radius(const SpectrumSet& s) {
  if (s.eigenvalues.empty()) config_error("spectral_radius: empty spectrum");
  double r = 0.0;
  for (const auto& e : s.eigenvalues) r = std::max(r, std::abs(e.value));
  return r;
}

inline double spectral_radius(const Family& f, const ParamPoint& u) {
  return spectral_radius(spectrum(f, u));
}

inline double point_set_distance(cplx z, const std::vector<cplx>& set) {
  double best = std::numeric_limits<double>::infinity();
  for (cplx w : set) best = std::min(best, std::abs(z - w));
  return best;
}

inline double one_sided_deviation(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  if (a.empty() || b.empty()) config_error("deviation of an empty point set");
  double worst = 0.0;
  for (cplx z : a) worst = std::max(worst, point_set_distance(z, b));
  return worst;
}

inline double hausdorff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  return std::max(one_sided_deviation(a, b), one_sided_deviation(b, a));
}

// Both inequalities of the spectrum perturbation chain, evaluated at a
// single eigenvalue lambda of P_u:
//   dist(lambda, sigma(u'))^{dn} <= |det P_{u'}(lambda)|
//   |det P_{u'}(lambda)| <= n max(||P_u||, ||P_{u'}||)^{n-1} ||P_u - P_{u'}||
struct PerturbationCertificate {
  ParamPoint u, u_prime;
  cplx lambda;
  double dist_pow = 0.0;
  double det_val = 0.0;
  double det_bound = 0.0;
  bool dist_le_det = false;
  bool det_le_bound = false;

  bool holds() const { return dist_le_det && det_le_bound; }
};

inline PerturbationCertificate verify_spectrum_perturbation(const Family& f, const ParamPoint& u,
                                                            const ParamPoint& u_prime, cplx lambda,
                                                            double cluster_tol = 1e-6) {
  MatrixPolynomial pu = evaluate_coeffs(f, u);
  MatrixPolynomial pv = evaluate_coeffs(f, u_prime);
  SpectrumSet su = spectrum(pu);
  double eig_dist = point_set_distance(lambda, su.points());
  if (eig_dist > cluster_tol * (1.0 + std::abs(lambda)))
    config_error("verify_spectrum_perturbation: lambda is not an eigenvalue at u (distance " +
                 fmt17(eig_dist) + ")");

  SpectrumSet sv = spectrum(pv);
  int dn = f.d * f.n;

  PerturbationCertificate cert;
  cert.u = u;
  cert.u_prime = u_prime;
  cert.lambda = lambda;
  cert.dist_pow = std::pow(point_set_distance(lambda, sv.points()), dn);
  cert.det_val = std::abs(lu_det(pv.evaluate_at(lambda)));

  ComplexMatrix mu = pu.evaluate_at(lambda);
  ComplexMatrix mv = pv.evaluate_at(lambda);
  double norm_max = std::max(spectral_norm(mu), spectral_norm(mv));
  cert.det_bound = f.n * std::pow(norm_max, f.n - 1) * spectral_norm(mu - mv);

  const double rel = 1e-8, abs_slack = 1e-12;
  cert.dist_le_det = cert.dist_pow <= cert.det_val * (1.0 + rel) + abs_slack;
  cert.det_le_bound = cert.det_val <= cert.det_bound * (1.0 + rel) + abs_slack;
  return cert;
}

}  // namespace mpspec

// Scalar complex polynomials: Horner evaluation, coefficient recovery by
// interpolation at scaled roots of unity, Aberth-Ehrlich simultaneous root
// finding, and single-linkage root clustering.
#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "mpspec/base.hpp"

namespace mpspec {

struct ScalarPoly {
  std::vector<cplx> coeffs;  // index = power; leading coefficient nonzero

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }

  static ScalarPoly from_roots(const std::vector<cplx>& roots, cplx lead = 1.0) {
    ScalarPoly p;
    p.coeffs = {lead};
    for (cplx r : roots) {
      p.coeffs.push_back(0.0);
      for (int k = static_cast<int>(p.coeffs.size()) - 1; k > 0; --k)
        p.coeffs[k] = p.coeffs[k - 1] - r * p.coeffs[k];
      p.coeffs[0] *= -r;
    }
    return p;
  }
};

struct RootMultiset {
  std::vector<cplx> roots;
  std::vector<double> residuals;  // |p(root)| per root
};

struct ClusteredRoot {
  cplx value;  // cluster mean
  int multiplicity;
};

inline cplx horner_eval(const ScalarPoly& p, cplx z) {
  cplx acc = 0.0;
  for (int k = p.degree(); k >= 0; --k) acc = acc * z + p.coeffs[k];
  return acc;
}

inline cplx horner_eval_deriv(const ScalarPoly& p, cplx z) {
  cplx acc = 0.0;
  for (int k = p.degree(); k >= 1; --k) acc = acc * z + double(k) * p.coeffs[k];
  return acc;
}

// Recovers the degree-D interpolant from samples at z_j = rho * w^j,
// w = exp(2 pi i / (D+1)). The recovered leading coefficient is checked
// against its expected value; failure signals an ill-conditioned sample set.
inline ScalarPoly interpolate_from_samples(const std::vector<cplx>& values, int degree,
                                           double rho, cplx expected_lead) {
  int nodes = degree + 1;
  if (static_cast<int>(values.size()) != nodes)
    config_error("interpolate: need degree+1 samples");
  ScalarPoly p;
  p.coeffs.assign(nodes, 0.0);
  const double two_pi = 6.283185307179586476925286766559;
  for (int k = 0; k <= degree; ++k) {
    cplx acc = 0.0;
    for (int j = 0; j < nodes; ++j) {
      double ang = -two_pi * j * k / nodes;
      acc += values[j] * cplx(std::cos(ang), std::sin(ang));
    }
    p.coeffs[k] = acc / (double(nodes) * std::pow(rho, k));
  }
  double lead_scale = std::max(1.0, std::abs(expected_lead));
  if (std::abs(p.coeffs[degree] - expected_lead) > 1e-6 * lead_scale)
    numerical_error("interpolate: leading coefficient check failed (|" +
                    fmt17(std::abs(p.coeffs[degree] - expected_lead)) +
                    "| off expected)");
  p.coeffs[degree] = expected_lead;
  return p;
}

inline ScalarPoly interpolate_monic(const std::vector<cplx>& values, int degree, double rho) {
  return interpolate_from_samples(values, degree, rho, 1.0);
}

// Simultaneous Aberth-Ehrlich iteration (Gauss-Seidel updates) from
// equispaced initial guesses on a root-bound circle with a fixed 0.37 rad
// offset. Iterates to movement stagnation; residuals validated afterwards.
inline RootMultiset aberth_roots(const ScalarPoly& p, double tol = 1e-12, int max_iter = 200) {
  int deg = p.degree();
  if (deg < 1) config_error("aberth_roots: degree must be >= 1");
  cplx lead = p.coeffs[deg];
  if (std::abs(lead) == 0.0) config_error("aberth_roots: zero leading coefficient");

  double coeff_max = 0.0;
  for (int k = 0; k < deg; ++k) coeff_max = std::max(coeff_max, std::abs(p.coeffs[k] / lead));
  double radius = 1.0 + coeff_max;

  std::vector<cplx> z(deg);
  const double two_pi = 6.283185307179586476925286766559;
  for (int i = 0; i < deg; ++i) {
    double ang = two_pi * i / deg + 0.37;
    z[i] = radius * cplx(std::cos(ang), std::sin(ang));
  }

  double norm_inf = 0.0;
  for (const cplx& c : p.coeffs) norm_inf = std::max(norm_inf, std::abs(c));
  const double residual_target = tol * (1.0 + norm_inf);

  for (int iter = 0; iter < max_iter; ++iter) {
    double max_move = 0.0;
    for (int i = 0; i < deg; ++i) {
      cplx pv = horner_eval(p, z[i]);
      if (std::abs(pv) == 0.0) continue;
      cplx dv = horner_eval_deriv(p, z[i]);
      cplx w;
      if (std::abs(dv) > 1e-300) {
        w = pv / dv;
      } else {
        z[i] += cplx(1e-8 * (1.0 + std::abs(z[i])), 1e-8);
        max_move = 1.0;
        continue;
      }
      cplx sum = 0.0;
      for (int j = 0; j < deg; ++j) {
        if (j == i) continue;
        cplx diff = z[i] - z[j];
        if (std::abs(diff) < 1e-300) diff = cplx(1e-300, 0.0);
        sum += 1.0 / diff;
      }
      cplx denom = 1.0 - w * sum;
      cplx step = (std::abs(denom) > 1e-300) ? w / denom : w;
      z[i] -= step;
      max_move = std::max(max_move, std::abs(step) / (1.0 + std::abs(z[i])));
    }
    if (max_move <= 1e-15) break;
  }

  RootMultiset out;
  out.roots = z;
  out.residuals.resize(deg);
  double worst = 0.0;
  for (int i = 0; i < deg; ++i) {
    out.residuals[i] = std::abs(horner_eval(p, z[i]));
    worst = std::max(worst, out.residuals[i]);
  }
  if (worst > residual_target)
    numerical_error("aberth_roots: no convergence after " + std::to_string(max_iter) +
                    " iterations (worst residual " + fmt17(worst) + ")");
  return out;
}

// Single-linkage clustering; pairs link when |zi - zj| is below
// base_tol * (1 + max(|zi|, |zj|)). Representative is the cluster mean.
inline std::vector<ClusteredRoot> cluster_roots(const RootMultiset& r, double base_tol = 1e-6) {
  int n = static_cast<int>(r.roots.size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double thresh = base_tol * (1.0 + std::max(std::abs(r.roots[i]), std::abs(r.roots[j])));
      if (std::abs(r.roots[i] - r.roots[j]) <= thresh) {
        int a = find(i), b = find(j);
        if (a != b) parent[a] = b;
      }
    }
  }
  std::vector<ClusteredRoot> clusters;
  std::vector<int> root_of(n, -1);
  for (int i = 0; i < n; ++i) {
    int rep = find(i);
    if (root_of[rep] < 0) {
      root_of[rep] = static_cast<int>(clusters.size());
      clusters.push_back({cplx(0.0), 0});
    }
    ClusteredRoot& c = clusters[root_of[rep]];
    c.value += r.roots[i];
    c.multiplicity += 1;
  }
  for (ClusteredRoot& c : clusters) c.value /= double(c.multiplicity);
  std::sort(clusters.begin(), clusters.end(), [](const ClusteredRoot& a, const ClusteredRoot& b) {
    if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
    return a.value.imag() < b.value.imag();
  });
  return clusters;
}

}  // namespace mpspec

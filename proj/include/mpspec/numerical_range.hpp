// Numerical range W(u) of a matrix polynomial, its indicator grids and
// boundary, the joint numerical range point cloud, and the W-from-JW
// reconstruction.
//
// Membership reduces to 0 in F(P_u(lambda)) for the classical field of
// values F. Since F is convex, 0 lies outside iff some rotation angle
// separates it: lambda_min of the Hermitian part of e^{i theta} A stays
// positive. The sweep is coarse-then-refined and its best separating value
// doubles as a continuous membership margin for the grids.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "mpspec/eig.hpp"
#include "mpspec/grid.hpp"
#include "mpspec/spectral.hpp"

namespace mpspec {

struct FovQuery {
  ComplexMatrix matrix;
  int angle_count = 64;
};

// max over theta of lambda_min(H(e^{i theta} A)); positive iff 0 is
// strictly outside F(A), and -|s| approximates the signed distance of 0 to
// the boundary of F(A).
inline double fov_separation(const ComplexMatrix& a, int angle_count = 64) {
  const double two_pi = 6.283185307179586476925286766559;
  auto min_eig_rotated = [&](double theta) {
    cplx phase(std::cos(theta), std::sin(theta));
    return hermitian_part_min_eig(phase * a);
  };

  double best_theta = 0.0;
  double best = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < angle_count; ++k) {
    double theta = two_pi * k / angle_count;
    double v = min_eig_rotated(theta);
    if (v > best) {
      best = v;
      best_theta = theta;
    }
  }
  // Ternary refinement around the coarse winner.
  double lo = best_theta - two_pi / angle_count;
  double hi = best_theta + two_pi / angle_count;
  for (int it = 0; it < 30; ++it) {
    double t1 = lo + (hi - lo) / 3.0;
    double t2 = hi - (hi - lo) / 3.0;
    if (min_eig_rotated(t1) < min_eig_rotated(t2))
      lo = t1;
    else
      hi = t2;
  }
  best = std::max(best, min_eig_rotated(0.5 * (lo + hi)));
  return best;
}

inline bool fov_contains_zero(const FovQuery& q) {
  if (!q.matrix.square()) config_error("fov_contains_zero: matrix not square");
  // Membership is only rejected past a small positive margin, so coarse
  // sweeps cannot produce false non-membership.
  return fov_separation(q.matrix, std::max(8, q.angle_count)) <= 1e-10;
}

namespace detail {

inline void require_numrange_leading(const Family& f, const MatrixPolynomial& p) {
  if (f.monic_flag) return;
  // Non-monic families need 0 outside F(A_d(u)) for W(u) to be bounded.
  if (fov_contains_zero({p.coeffs[f.d], 64}))
    config_error("numerical range: leading coefficient field of values contains 0 "
                 "(degenerate non-monic family at this point)");
}

}  // namespace detail

inline bool numrange_membership(const Family& f, const ParamPoint& u, cplx lambda,
                                int angle_count = 64) {
  MatrixPolynomial p = evaluate_coeffs(f, u);
  detail::require_numrange_leading(f, p);
  return fov_separation(p.evaluate_at(lambda), angle_count) <= 1e-10;
}

// Root-magnitude bound containing W(u) for monic families.
inline double numrange_bound(const MatrixPolynomial& p) {
  double b = 0.0;
  for (int k = 0; k < p.d; ++k) b = std::max(b, spectral_norm(p.coeffs[k]));
  return 1.0 + b;
}

// Lipschitz bound of lambda -> ||P'(lambda)|| over |lambda| <= radius; the
// separation s(lambda) vanishes on W and moves at most this fast, so cells
// within half a diagonal of W always clear the grid threshold below.
inline double fov_lipschitz_bound(const MatrixPolynomial& p, double radius) {
  double l = 0.0;
  for (int k = 1; k <= p.d; ++k)
    l += k * spectral_norm(p.coeffs[k]) * std::pow(radius, k - 1);
  return std::max(l, 1e-12);
}

// Membership margin: threshold - s(center), thresholded per cell by the
// local Lipschitz bound so any W point within half a diagonal of a center
// makes that cell a member. For d = 1 the separation equals
// dist(lambda, W) exactly and the member set tracks W to one cell.
inline IndicatorGrid numrange_grid(const Family& f, const ParamPoint& u, const GridSpec& spec,
                                   int angle_count = 64) {
  spec.validate();
  MatrixPolynomial p = evaluate_coeffs(f, u);
  detail::require_numrange_leading(f, p);

  double half_diag = 0.5 * spec.cell_diag();
  IndicatorGrid g;
  g.spec = spec;
  g.values.assign(spec.cells(), 0.0);
  for (int j = 0; j < spec.n_im; ++j)
    for (int i = 0; i < spec.n_re; ++i) {
      cplx c = spec.center(i, j);
      double threshold =
          1e-10 + half_diag * fov_lipschitz_bound(p, std::abs(c) + half_diag);
      g.values[spec.index(i, j)] =
          threshold - fov_separation(p.evaluate_at(c), angle_count);
    }
  g.finalize();

  if (f.monic_flag) {
    double b = numrange_bound(p);
    bool covers = spec.re_min <= -b && spec.re_max >= b && spec.im_min <= -b && spec.im_max >= b;
    if (covers && g.components > f.d)
      invariant_error("numrange_grid: " + std::to_string(g.components) +
                      " components exceed the degree bound d=" + std::to_string(f.d));
  }
  return g;
}

struct JWCloud {
  std::vector<std::vector<cplx>> points;  // each of length d+1
  int sphere_samples = 0;
  std::uint64_t seed = 0;
};

// Points (x* A_0 x, ..., x* A_d x) for unit x; the n standard basis vectors
// come first, then seeded uniform sphere draws.
inline JWCloud jw_sample(const Family& f, const ParamPoint& u, int n_samples, std::uint64_t seed) {
  if (n_samples < 1) config_error("jw_sample: n_samples must be >= 1");
  MatrixPolynomial p = evaluate_coeffs(f, u);

  JWCloud cloud;
  cloud.sphere_samples = n_samples;
  cloud.seed = seed;

  auto push_point = [&](const std::vector<cplx>& x) {
    std::vector<cplx> pt(f.d + 1);
    for (int k = 0; k <= f.d; ++k) {
      std::vector<cplx> ax = p.coeffs[k].apply(x);
      cplx acc = 0.0;
      for (int i = 0; i < f.n; ++i) acc += std::conj(x[i]) * ax[i];
      pt[k] = acc;
    }
    cloud.points.push_back(std::move(pt));
  };

  for (int i = 0; i < f.n; ++i) {
    std::vector<cplx> e(f.n, cplx(0.0));
    e[i] = 1.0;
    push_point(e);
  }
  Stream stream(seed, "jw-sample");
  for (int s = 0; s < n_samples; ++s) push_point(stream.unit_complex_vector(f.n));
  return cloud;
}

// Union over cloud points of the roots of a_d z^d + ... + a_0 = 0.
inline std::vector<cplx> reconstruct_w_from_jw(const JWCloud& cloud) {
  std::vector<cplx> out;
  for (const std::vector<cplx>& pt : cloud.points) {
    if (std::abs(pt.back()) < 1e-12)
      config_error("reconstruct_w_from_jw: point has (near-)zero leading coordinate");
    ScalarPoly poly;
    poly.coeffs = pt;
    RootMultiset roots = aberth_roots(poly, 1e-12, 400);
    out.insert(out.end(), roots.roots.begin(), roots.roots.end());
  }
  return out;
}

}  // namespace mpspec

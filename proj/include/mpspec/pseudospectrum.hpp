// Structured epsilon-pseudospectrum: point membership by ball-constrained
// determinant minimization, lambda-plane indicator grids, eigenvalue clouds,
// and the real-axis symmetry check.
//
// Grid membership uses a geometric margin rather than a raw determinant
// threshold: a cell is a member when the ball-minimum of
// dist(center, sigma(v)) falls within half a cell diagonal, so the member
// set is the pseudospectrum dilated by at most one cell. Point queries keep
// the |det P_v(lambda)| <= tol contract.
#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "mpspec/grid.hpp"
#include "mpspec/pattern_search.hpp"
#include "mpspec/spectral.hpp"

namespace mpspec {

struct PseudoQuery {
  ParamPoint u;
  double eps = 0.0;
  GridSpec grid;

  void validate(int m) const {
    if (eps < 0.0) config_error("pseudospectrum: eps must be >= 0");
    if (u.size() != m) config_error("pseudospectrum: parameter point length mismatch");
    grid.validate();
  }
};

struct Witness {
  ParamPoint v;
  double residual = 0.0;  // |det P_v(lambda)|
};

inline double default_membership_tol(cplx lambda, int dn) {
  double rho = 1.0 + std::abs(lambda);
  return 1e-8 * (1.0 + std::pow(rho, dn));
}

namespace detail {

// One-pass root extraction for the grid objective: fixed interpolation
// radius, loose Aberth tolerance, no clustering. Falls back to the full
// spectrum path on the rare conditioning failure.
inline std::vector<cplx> fast_roots(const MatrixPolynomial& p) {
  try {
    int deg = p.d * p.n;
    cplx lead = lu_det(p.coeffs[p.d]);
    double rho = 1.0;
    for (const ComplexMatrix& a : p.coeffs) rho = std::max(rho, 1.0 + a.frobenius_norm());
    const double two_pi = 6.283185307179586476925286766559;
    std::vector<cplx> values(deg + 1);
    for (int j = 0; j <= deg; ++j) {
      double ang = two_pi * j / (deg + 1);
      values[j] = lu_det(p.evaluate_at(rho * cplx(std::cos(ang), std::sin(ang))));
    }
    ScalarPoly det_poly = interpolate_from_samples(values, deg, rho, lead);
    return aberth_roots(det_poly, 1e-8, 120).roots;
  } catch (const Error&) {
    return spectrum(p).points();
  }
}

}  // namespace detail

// True iff min over the closed ball B(u, eps) of |det P_v(lambda)| <= tol.
// tol < 0 selects the scale-aware default.
inline std::pair<bool, std::optional<Witness>> pseudo_membership(
    const Family& f, const ParamPoint& u, double eps, cplx lambda, double tol = -1.0,
    std::uint64_t seed = 0) {
  if (eps < 0.0) config_error("pseudo_membership: eps must be >= 0");
  if (tol < 0.0) tol = default_membership_tol(lambda, f.d * f.n);

  auto objective = [&](const std::vector<double>& v) {
    return std::abs(lu_det(evaluate_coeffs(f, ParamPoint(v)).evaluate_at(lambda)));
  };

  SearchResult res;
  if (eps == 0.0) {
    res.best_point = u.coords;
    res.best_value = objective(u.coords);
    res.evaluations = 1;
  } else {
    SearchOptions opt;
    opt.early_exit = 0.1 * tol;
    res = ball_pattern_search(objective, u.coords, eps,
                              ball_start_points(u, eps, f.m, 8, seed, "pseudo-membership"), opt);
  }

  bool member = res.best_value <= tol;
  std::optional<Witness> witness;
  if (member) witness = Witness{ParamPoint(res.best_point), res.best_value};
  return {member, witness};
}

// min over the ball of dist(lambda, sigma(v)); the grid's margin source.
// step_floor bounds the search resolution in parameter space; the grid
// passes a fraction of its cell size.
inline double pseudo_spectral_distance(const Family& f, const ParamPoint& u, double eps,
                                       cplx lambda, double early_exit = -1.0,
                                       double step_floor = 0.0, std::uint64_t seed = 0,
                                       int random_starts = 3) {
  auto objective = [&](const std::vector<double>& v) {
    return point_set_distance(lambda, detail::fast_roots(evaluate_coeffs(f, ParamPoint(v))));
  };
  if (eps == 0.0) return objective(u.coords);
  SearchOptions opt;
  opt.early_exit = early_exit;
  opt.min_step_rel = 1e-6;  // distances below cell scale are irrelevant here
  opt.min_step_abs = step_floor;
  SearchResult res = ball_pattern_search(
      objective, u.coords, eps, ball_start_points(u, eps, f.m, random_starts, seed, "pseudo-grid"),
      opt);
  return res.best_value;
}

inline IndicatorGrid pseudospectrum_grid(const Family& f, const PseudoQuery& q,
                                         std::uint64_t seed = 0) {
  q.validate(f.m);
  IndicatorGrid g;
  g.spec = q.grid;
  g.values.assign(g.spec.cells(), 0.0);
  const double threshold = 0.5 * g.spec.cell_diag();

  if (q.eps == 0.0) {
    std::vector<cplx> eigs = spectrum(f, q.u).points();
    for (int j = 0; j < g.spec.n_im; ++j)
      for (int i = 0; i < g.spec.n_re; ++i)
        g.values[g.spec.index(i, j)] =
            threshold - point_set_distance(g.spec.center(i, j), eigs);
  } else {
    const double step_floor = 0.02 * threshold;
    for (int j = 0; j < g.spec.n_im; ++j) {
      for (int i = 0; i < g.spec.n_re; ++i) {
        cplx c = g.spec.center(i, j);
        double d = pseudo_spectral_distance(f, q.u, q.eps, c, 0.05 * threshold, step_floor, seed);
        g.values[g.spec.index(i, j)] = threshold - d;
      }
    }
  }
  g.finalize();
  return g;
}

// Union of sigma(v) over deterministic ball samples: v = u, the 2m axis
// sphere points, and n_samples seeded interior draws.
inline std::vector<cplx> eigenvalue_cloud(const Family& f, const ParamPoint& u, double eps,
                                          int n_samples, std::uint64_t seed) {
  if (n_samples < 1) config_error("eigenvalue_cloud: n_samples must be >= 1");
  std::vector<ParamPoint> points{u};
  if (eps > 0.0) {
    for (int i = 0; i < f.m; ++i) {
      for (double sign : {1.0, -1.0}) {
        ParamPoint v = u;
        v.coords[i] += sign * eps;
        points.push_back(v);
      }
    }
    Stream stream(seed, "eigenvalue-cloud");
    for (int k = 0; k < n_samples; ++k) {
      ParamPoint v = u;
      auto b = stream.ball_point(f.m, eps);
      for (int i = 0; i < f.m; ++i) v.coords[i] += b[i];
      points.push_back(v);
    }
  }
  std::vector<cplx> cloud;
  for (const ParamPoint& v : points) {
    for (cplx z : spectrum(f, v).points_with_multiplicity()) cloud.push_back(z);
  }
  return cloud;
}

// Member field must equal its mirror across the real axis. Requires a
// symmetric region and a family that samples real or Hermitian on the ball.
inline SymmetryReport check_axis_symmetry(const Family& f, const ParamPoint& u, double eps,
                                          const IndicatorGrid& g, std::uint64_t seed = 0) {
  RealHermitianDetection det = detect_real_or_hermitian(f, u, eps, seed);
  if (!det.either())
    config_error("check_axis_symmetry: family is neither real nor Hermitian on the sampled ball");
  return mirror_symmetry(g);
}

}  // namespace mpspec

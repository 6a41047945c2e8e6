// Empirical Hoelder/Lipschitz exponent estimation for the set-valued maps
// and the spectral radius, plus a genericity probe for base points.
//
// The shared protocol: step from a base point along a fixed direction at a
// geometric sequence of scales h, measure the map-appropriate distance, and
// fit a line on (log h, log dist) above an explicit noise floor.
#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "mpspec/numerical_range.hpp"
#include "mpspec/pseudospectrum.hpp"
#include "mpspec/spectral.hpp"

namespace mpspec {

enum class MapKind { spectrum, pseudospectrum, numrange, jointnr, specradius };

inline std::string map_kind_name(MapKind k) {
  switch (k) {
    case MapKind::spectrum: return "spectrum";
    case MapKind::pseudospectrum: return "pseudospectrum";
    case MapKind::numrange: return "numrange";
    case MapKind::jointnr: return "jointnr";
    case MapKind::specradius: return "specradius";
  }
  return "?";
}

struct ScalePair {
  double h = 0.0;
  double dist = 0.0;
  MapKind kind = MapKind::spectrum;
};

struct HoelderFit {
  double c_hat = 0.0;
  double alpha_hat = 0.0;
  double r2 = 0.0;
  int n_pairs = 0;
  bool degenerate = false;
};

struct ScaleSamplingOptions {
  double eps = 0.25;         // ball radius for the pseudospectrum map
  GridSpec grid;             // region/resolution for the grid-based maps
  bool grid_set = false;     // auto-window around the base spectrum when false
  int jw_samples = 2000;
  std::uint64_t seed = 0;
  int angle_count = 64;
};

inline std::vector<double> default_scales() {
  std::vector<double> s;
  for (int k = 1; k <= 8; ++k) s.push_back(std::pow(2.0, -k));
  return s;
}

namespace detail {

// Window centered on an eigenvalue of the base spectrum; grid-based
// deviations only need the member sets near the moving feature.
inline GridSpec auto_window(const Family& f, const ParamPoint& base, double pad, int res) {
  SpectrumSet s = spectrum(f, base);
  cplx c = s.eigenvalues.front().value;
  for (const auto& e : s.eigenvalues)
    if (std::abs(e.value) > std::abs(c)) c = e.value;
  GridSpec g;
  g.re_min = c.real() - pad;
  g.re_max = c.real() + pad;
  g.im_min = c.imag() - pad;
  g.im_max = c.imag() + pad;
  g.n_re = g.n_im = res;
  return g;
}

}  // namespace detail

inline std::vector<ScalePair> sample_scale_pairs(const Family& f, const ParamPoint& base,
                                                 MapKind kind, std::vector<double> direction,
                                                 const std::vector<double>& scales,
                                                 ScaleSamplingOptions opt = {}) {
  if (scales.size() < 6) config_error("sample_scale_pairs: need at least 6 scales");
  for (size_t i = 1; i < scales.size(); ++i)
    if (!(scales[i] < scales[i - 1]) || scales[i] <= 0.0)
      config_error("sample_scale_pairs: scales must be positive and decreasing");
  if (direction.empty()) direction = Stream(opt.seed, "holder-direction").unit_vector(f.m);

  auto stepped = [&](double h) {
    ParamPoint v = base;
    for (int i = 0; i < f.m; ++i) v.coords[i] += h * direction[i];
    return v;
  };

  std::vector<ScalePair> pairs;
  pairs.reserve(scales.size());

  switch (kind) {
    case MapKind::spectrum: {
      std::vector<cplx> s0 = spectrum(f, base).points_with_multiplicity();
      for (double h : scales)
        pairs.push_back({h, hausdorff(s0, spectrum(f, stepped(h)).points_with_multiplicity()), kind});
      break;
    }
    case MapKind::specradius: {
      double r0 = spectral_radius(f, base);
      for (double h : scales)
        pairs.push_back({h, std::abs(r0 - spectral_radius(f, stepped(h))), kind});
      break;
    }
    case MapKind::pseudospectrum: {
      GridSpec window = opt.grid_set ? opt.grid : detail::auto_window(f, base, 1.0, 41);
      PseudoQuery q0{base, opt.eps, window};
      IndicatorGrid g0 = pseudospectrum_grid(f, q0, opt.seed);
      for (double h : scales) {
        PseudoQuery qh{stepped(h), opt.eps, window};
        IndicatorGrid gh = pseudospectrum_grid(f, qh, opt.seed);
        pairs.push_back({h, grid_one_sided_deviation(g0, gh), kind});
      }
      break;
    }
    case MapKind::numrange: {
      GridSpec window = opt.grid_set ? opt.grid : detail::auto_window(f, base, 1.5, 41);
      IndicatorGrid g0 = numrange_grid(f, base, window, opt.angle_count);
      for (double h : scales) {
        IndicatorGrid gh = numrange_grid(f, stepped(h), window, opt.angle_count);
        pairs.push_back({h, grid_one_sided_deviation(g0, gh), kind});
      }
      break;
    }
    case MapKind::jointnr: {
      // Matched seeds pair the same unit vectors; the max-coordinate metric
      // matches the coefficient-difference bound the JW theorem proves.
      JWCloud c0 = jw_sample(f, base, opt.jw_samples, opt.seed);
      for (double h : scales) {
        JWCloud ch = jw_sample(f, stepped(h), opt.jw_samples, opt.seed);
        double worst = 0.0;
        for (size_t i = 0; i < c0.points.size(); ++i)
          for (size_t k = 0; k < c0.points[i].size(); ++k)
            worst = std::max(worst, std::abs(c0.points[i][k] - ch.points[i][k]));
        pairs.push_back({h, worst, kind});
      }
      break;
    }
  }
  return pairs;
}

// Least-squares line on (log h, log dist) over pairs with dist above the
// noise floor. alpha_hat is the slope, c_hat = exp(intercept).
inline HoelderFit fit_holder(const std::vector<ScalePair>& pairs, double noise_floor) {
  if (pairs.size() < 4) config_error("fit_holder: need at least 4 scale pairs");
  std::vector<double> xs, ys;
  for (const ScalePair& p : pairs) {
    if (p.dist > noise_floor) {
      xs.push_back(std::log(p.h));
      ys.push_back(std::log(p.dist));
    }
  }
  HoelderFit fit;
  fit.n_pairs = static_cast<int>(xs.size());
  if (fit.n_pairs < 4) {
    fit.degenerate = true;
    return fit;
  }
  double n = fit.n_pairs;
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (int i = 0; i < fit.n_pairs; ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
    syy += ys[i] * ys[i];
  }
  double denom = n * sxx - sx * sx;
  if (std::abs(denom) < 1e-30) {
    fit.degenerate = true;
    return fit;
  }
  fit.alpha_hat = (n * sxy - sx * sy) / denom;
  fit.c_hat = std::exp((sy - fit.alpha_hat * sx) / n);
  double ss_tot = syy - sy * sy / n;
  double ss_res = 0.0;
  for (int i = 0; i < fit.n_pairs; ++i) {
    double pred = std::log(fit.c_hat) + fit.alpha_hat * xs[i];
    ss_res += (ys[i] - pred) * (ys[i] - pred);
  }
  fit.r2 = ss_tot > 0 ? std::max(0.0, 1.0 - ss_res / ss_tot) : 1.0;
  return fit;
}

inline double grid_noise_floor(const GridSpec& g) { return 1e-9 + std::max(g.cell_w(), g.cell_h()); }

struct GenericityReport {
  bool count_stable = false;
  int base_count = 0;
  int min_count = 0, max_count = 0;
  double radius_slope = 0.0;
  bool radius_lipschitz_consistent = false;
  bool apparently_generic = false;
};

// Probes 2m+1 points at radius 1e-4 for a locally constant distinct
// eigenvalue count, and checks spectral-radius finite differences for
// Lipschitz-consistent decay.
inline GenericityReport genericity_probe(const Family& f, const ParamPoint& u,
                                         double probe_radius = 1e-4, std::uint64_t seed = 0) {
  GenericityReport rep;
  SpectrumSet s0 = spectrum(f, u);
  rep.base_count = static_cast<int>(s0.eigenvalues.size());
  rep.min_count = rep.max_count = rep.base_count;
  for (int i = 0; i < f.m; ++i) {
    for (double sign : {1.0, -1.0}) {
      ParamPoint v = u;
      v.coords[i] += sign * probe_radius;
      int c = static_cast<int>(spectrum(f, v).eigenvalues.size());
      rep.min_count = std::min(rep.min_count, c);
      rep.max_count = std::max(rep.max_count, c);
    }
  }
  rep.count_stable = rep.min_count == rep.max_count;

  std::vector<double> dir = Stream(seed, "genericity-direction").unit_vector(f.m);
  double r0 = spectral_radius(s0);
  std::vector<ScalePair> pairs;
  for (int k = 2; k <= 9; ++k) {
    double h = std::pow(2.0, -k);
    ParamPoint v = u;
    for (int i = 0; i < f.m; ++i) v.coords[i] += h * dir[i];
    pairs.push_back({h, std::abs(spectral_radius(f, v) - r0), MapKind::specradius});
  }
  HoelderFit fit = fit_holder(pairs, 1e-9);
  if (fit.degenerate) {
    // Differences at solver-noise level: locally flat, trivially Lipschitz.
    rep.radius_slope = 0.0;
    rep.radius_lipschitz_consistent = true;
  } else {
    rep.radius_slope = fit.alpha_hat;
    rep.radius_lipschitz_consistent = fit.alpha_hat >= 0.95;
  }
  rep.apparently_generic = rep.count_stable && rep.radius_lipschitz_consistent;
  return rep;
}

}  // namespace mpspec

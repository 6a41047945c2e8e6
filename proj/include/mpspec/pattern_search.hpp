// Derivative-free compass search restricted to a closed Euclidean ball.
//
// The search probes +/- step along each coordinate, projects every trial
// point back into the ball, moves to the best improving probe, and halves
// the step on stalls. Multi-start wrappers supply the deterministic start
// sets the callers need.
#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <string_view>
#include <vector>

#include "mpspec/family.hpp"
#include "mpspec/rng.hpp"

namespace mpspec {

struct SearchOptions {
  double min_step_rel = 1e-10;   // relative to the ball radius
  double min_step_abs = 0.0;     // absolute floor, when the caller only
                                 // needs the minimum to a known resolution
  int max_iter = 400;            // step-adaptation rounds per start
  double early_exit = -1.0;      // stop as soon as a value <= this is seen
};

struct SearchResult {
  std::vector<double> best_point;
  double best_value = std::numeric_limits<double>::infinity();
  long evaluations = 0;
};

namespace detail {

inline void project_into_ball(std::vector<double>& v, const std::vector<double>& center,
                              double radius) {
  double d2 = 0.0;
  for (size_t i = 0; i < v.size(); ++i) {
    double diff = v[i] - center[i];
    d2 += diff * diff;
  }
  double d = std::sqrt(d2);
  if (d > radius) {
    double f = (d > 0) ? radius / d : 0.0;
    for (size_t i = 0; i < v.size(); ++i) v[i] = center[i] + (v[i] - center[i]) * f;
  }
}

}  // namespace detail

inline SearchResult ball_pattern_search(const std::function<double(const std::vector<double>&)>& f,
                                        const std::vector<double>& center, double radius,
                                        const std::vector<std::vector<double>>& starts,
                                        const SearchOptions& opt = {}) {
  SearchResult result;
  int m = static_cast<int>(center.size());
  if (radius <= 0.0 || m == 0) {
    result.best_point = center;
    result.best_value = f(center);
    result.evaluations = 1;
    return result;
  }

  const double min_step = std::max(opt.min_step_rel * radius, opt.min_step_abs);
  for (const auto& start_raw : starts) {
    std::vector<double> x = start_raw;
    detail::project_into_ball(x, center, radius);
    double fx = f(x);
    ++result.evaluations;
    if (fx < result.best_value) {
      result.best_value = fx;
      result.best_point = x;
    }
    if (opt.early_exit >= 0 && result.best_value <= opt.early_exit) return result;

    double step = 0.5 * radius;
    for (int iter = 0; iter < opt.max_iter && step >= min_step; ++iter) {
      int best_dim = -1;
      double best_sign = 0.0, best_f = fx;
      std::vector<double> trial = x;
      for (int i = 0; i < m; ++i) {
        for (double sign : {1.0, -1.0}) {
          trial = x;
          trial[i] += sign * step;
          detail::project_into_ball(trial, center, radius);
          double ft = f(trial);
          ++result.evaluations;
          if (ft < best_f) {
            best_f = ft;
            best_dim = i;
            best_sign = sign;
          }
        }
      }
      if (best_dim >= 0) {
        x[best_dim] += best_sign * step;
        detail::project_into_ball(x, center, radius);
        fx = best_f;
        if (fx < result.best_value) {
          result.best_value = fx;
          result.best_point = x;
        }
        if (opt.early_exit >= 0 && result.best_value <= opt.early_exit) return result;
      } else {
        step *= 0.5;
      }
    }
  }
  return result;
}

// The start set shared by the ball-minimization operations: the center,
// the 2m axis points on the sphere, and seeded random interior points.
inline std::vector<std::vector<double>> ball_start_points(const ParamPoint& u, double eps, int m,
                                                          int random_starts, std::uint64_t seed,
                                                          std::string_view label) {
  std::vector<std::vector<double>> starts;
  starts.push_back(u.coords);
  for (int i = 0; i < m; ++i) {
    for (double sign : {1.0, -1.0}) {
      std::vector<double> v = u.coords;
      v[i] += sign * eps;
      starts.push_back(v);
    }
  }
  Stream stream(seed, label);
  for (int k = 0; k < random_starts; ++k) {
    std::vector<double> v = u.coords;
    auto b = stream.ball_point(m, eps);
    for (int i = 0; i < m; ++i) v[i] += b[i];
    starts.push_back(v);
  }
  return starts;
}

}  // namespace mpspec

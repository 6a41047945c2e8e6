// Rectangular lambda-plane indicator grids: membership margins sampled at
// cell centers, 4-connected component counting, and marching-squares
// boundary extraction with segment stitching.
//
// The margin field is positive inside the set and negative outside, so the
// boundary is the zero level set. Marching squares runs on the 2x2 stencils
// of cell centers; crossing points are interpolated linearly along stencil
// edges, and segments are stitched into polylines via exact edge keys
// (stencil index + orientation), never via floating-point coordinates.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <vector>

#include "mpspec/base.hpp"

namespace mpspec {

struct GridSpec {
  double re_min = -1, re_max = 1, im_min = -1, im_max = 1;
  int n_re = 2, n_im = 2;

  void validate() const {
    if (!(re_max > re_min) || !(im_max > im_min)) config_error("grid: empty region");
    if (n_re < 2 || n_im < 2) config_error("grid: resolution must be >= 2");
  }

  double cell_w() const { return (re_max - re_min) / n_re; }
  double cell_h() const { return (im_max - im_min) / n_im; }
  double cell_diag() const { return std::hypot(cell_w(), cell_h()); }

  cplx center(int i, int j) const {  // i indexes re, j indexes im
    return {re_min + (i + 0.5) * cell_w(), im_min + (j + 0.5) * cell_h()};
  }

  int index(int i, int j) const { return j * n_re + i; }
  int cells() const { return n_re * n_im; }

  bool symmetric_about_real_axis() const {
    return std::abs(im_min + im_max) <= 1e-12 * (im_max - im_min);
  }
};

using Polyline = std::vector<cplx>;

inline int flood_fill_components(const std::vector<std::uint8_t>& member, const GridSpec& g) {
  std::vector<std::uint8_t> seen(member.size(), 0);
  std::vector<int> stack;
  int components = 0;
  for (int start = 0; start < g.cells(); ++start) {
    if (!member[start] || seen[start]) continue;
    ++components;
    stack.push_back(start);
    seen[start] = 1;
    while (!stack.empty()) {
      int cur = stack.back();
      stack.pop_back();
      int i = cur % g.n_re, j = cur / g.n_re;
      const int di[4] = {1, -1, 0, 0};
      const int dj[4] = {0, 0, 1, -1};
      for (int k = 0; k < 4; ++k) {
        int ni = i + di[k], nj = j + dj[k];
        if (ni < 0 || ni >= g.n_re || nj < 0 || nj >= g.n_im) continue;
        int idx = g.index(ni, nj);
        if (member[idx] && !seen[idx]) {
          seen[idx] = 1;
          stack.push_back(idx);
        }
      }
    }
  }
  return components;
}

namespace detail {

// Edge of a marching-squares stencil, keyed exactly. (sx, sy) is the
// stencil's lower-left cell-center index; horiz edges run in +re.
struct EdgeKey {
  int x, y;
  bool horizontal;
  friend bool operator<(const EdgeKey& a, const EdgeKey& b) {
    if (a.x != b.x) return a.x < b.x;
    if (a.y != b.y) return a.y < b.y;
    return a.horizontal < b.horizontal;
  }
  friend bool operator==(const EdgeKey& a, const EdgeKey& b) {
    return a.x == b.x && a.y == b.y && a.horizontal == b.horizontal;
  }
};

struct Segment {
  EdgeKey a, b;
};

inline double crossing(double v0, double v1) {
  double denom = v0 - v1;
  if (std::abs(denom) < 1e-300) return 0.5;
  double t = v0 / denom;
  return std::clamp(t, 0.0, 1.0);
}

}  // namespace detail

// Zero-level contour of the margin field sampled at cell centers.
inline std::vector<Polyline> marching_squares(const std::vector<double>& values,
                                              const GridSpec& g) {
  using detail::EdgeKey;
  using detail::Segment;

  std::vector<Segment> segments;
  std::map<EdgeKey, cplx> edge_point;

  auto value = [&](int i, int j) { return values[g.index(i, j)]; };
  auto inside = [&](int i, int j) { return value(i, j) >= 0.0; };

  for (int j = 0; j + 1 < g.n_im; ++j) {
    for (int i = 0; i + 1 < g.n_re; ++i) {
      int code = (inside(i, j) ? 1 : 0) | (inside(i + 1, j) ? 2 : 0) |
                 (inside(i + 1, j + 1) ? 4 : 0) | (inside(i, j + 1) ? 8 : 0);
      if (code == 0 || code == 15) continue;

      cplx c00 = g.center(i, j), c10 = g.center(i + 1, j);
      cplx c01 = g.center(i, j + 1), c11 = g.center(i + 1, j + 1);
      double v00 = value(i, j), v10 = value(i + 1, j);
      double v01 = value(i, j + 1), v11 = value(i + 1, j + 1);

      EdgeKey bottom{i, j, true}, top{i, j + 1, true};
      EdgeKey left{i, j, false}, right{i + 1, j, false};
      auto put = [&](const EdgeKey& k, cplx p) { edge_point.emplace(k, p); };
      put(bottom, c00 + detail::crossing(v00, v10) * (c10 - c00));
      put(top, c01 + detail::crossing(v01, v11) * (c11 - c01));
      put(left, c00 + detail::crossing(v00, v01) * (c01 - c00));
      put(right, c10 + detail::crossing(v10, v11) * (c11 - c10));

      switch (code) {
        case 1: case 14: segments.push_back({left, bottom}); break;
        case 2: case 13: segments.push_back({bottom, right}); break;
        case 3: case 12: segments.push_back({left, right}); break;
        case 4: case 11: segments.push_back({right, top}); break;
        case 6: case 9:  segments.push_back({bottom, top}); break;
        case 7: case 8:  segments.push_back({top, left}); break;
        case 5: case 10: {
          // Saddle; the center average decides the pairing.
          double mid = 0.25 * (v00 + v10 + v01 + v11);
          bool center_inside = mid >= 0.0;
          if ((code == 5) == center_inside) {
            segments.push_back({left, bottom});
            segments.push_back({right, top});
          } else {
            segments.push_back({left, top});
            segments.push_back({right, bottom});
          }
          break;
        }
      }
    }
  }

  // Stitch segments sharing edge keys into chains.
  std::map<EdgeKey, std::vector<int>> at_edge;
  for (int s = 0; s < static_cast<int>(segments.size()); ++s) {
    at_edge[segments[s].a].push_back(s);
    at_edge[segments[s].b].push_back(s);
  }

  std::vector<char> used(segments.size(), 0);
  std::vector<Polyline> polylines;
  for (int s0 = 0; s0 < static_cast<int>(segments.size()); ++s0) {
    if (used[s0]) continue;
    std::vector<EdgeKey> chain{segments[s0].a, segments[s0].b};
    used[s0] = 1;
    for (int dir = 0; dir < 2; ++dir) {
      while (true) {
        EdgeKey tail = dir == 0 ? chain.back() : chain.front();
        int next = -1;
        for (int s : at_edge[tail])
          if (!used[s]) {
            next = s;
            break;
          }
        if (next < 0) break;
        used[next] = 1;
        EdgeKey other = (segments[next].a == tail) ? segments[next].b : segments[next].a;
        if (dir == 0)
          chain.push_back(other);
        else
          chain.insert(chain.begin(), other);
      }
    }
    Polyline line;
    line.reserve(chain.size());
    for (const EdgeKey& k : chain) line.push_back(edge_point.at(k));
    polylines.push_back(std::move(line));
  }
  return polylines;
}

struct IndicatorGrid {
  GridSpec spec;
  std::vector<std::uint8_t> member;  // per cell center
  std::vector<double> values;        // membership margin (>= 0 inside)
  std::vector<Polyline> boundary;
  int components = 0;

  std::vector<cplx> member_centers() const {
    std::vector<cplx> out;
    for (int j = 0; j < spec.n_im; ++j)
      for (int i = 0; i < spec.n_re; ++i)
        if (member[spec.index(i, j)]) out.push_back(spec.center(i, j));
    return out;
  }

  int member_count() const {
    int c = 0;
    for (std::uint8_t b : member) c += b;
    return c;
  }

  bool cell_of(cplx z, int& i, int& j) const {
    i = static_cast<int>(std::floor((z.real() - spec.re_min) / spec.cell_w()));
    j = static_cast<int>(std::floor((z.imag() - spec.im_min) / spec.cell_h()));
    return i >= 0 && i < spec.n_re && j >= 0 && j < spec.n_im;
  }

  bool member_at(cplx z) const {
    int i, j;
    if (!cell_of(z, i, j)) return false;
    return member[spec.index(i, j)] != 0;
  }

  void finalize() {
    member.resize(values.size());
    for (size_t k = 0; k < values.size(); ++k) member[k] = values[k] >= 0.0 ? 1 : 0;
    components = flood_fill_components(member, spec);
    boundary = marching_squares(values, spec);
  }
};

// sup over member cells of g1 of the distance to the member set of g2.
inline double grid_one_sided_deviation(const IndicatorGrid& g1, const IndicatorGrid& g2) {
  std::vector<cplx> a = g1.member_centers();
  std::vector<cplx> b = g2.member_centers();
  if (a.empty()) return 0.0;
  if (b.empty()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (cplx z : a) {
    double best = std::numeric_limits<double>::infinity();
    for (cplx w : b) best = std::min(best, std::abs(z - w));
    worst = std::max(worst, best);
  }
  return worst;
}

inline double boundary_one_sided_deviation(const IndicatorGrid& g1, const IndicatorGrid& g2) {
  std::vector<cplx> a, b;
  for (const Polyline& p : g1.boundary) a.insert(a.end(), p.begin(), p.end());
  for (const Polyline& p : g2.boundary) b.insert(b.end(), p.begin(), p.end());
  if (a.empty()) return 0.0;
  if (b.empty()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (cplx z : a) {
    double best = std::numeric_limits<double>::infinity();
    for (cplx w : b) best = std::min(best, std::abs(z - w));
    worst = std::max(worst, best);
  }
  return worst;
}

// Mirror comparison of the member field across the real axis.
struct SymmetryReport {
  bool symmetric = false;
  int mismatched_cells = 0;
};

inline SymmetryReport mirror_symmetry(const IndicatorGrid& g) {
  if (!g.spec.symmetric_about_real_axis())
    config_error("symmetry check: grid region is not symmetric about the real axis");
  SymmetryReport rep;
  for (int j = 0; j < g.spec.n_im; ++j) {
    int jm = g.spec.n_im - 1 - j;
    for (int i = 0; i < g.spec.n_re; ++i)
      if (g.member[g.spec.index(i, j)] != g.member[g.spec.index(i, jm)]) ++rep.mismatched_cells;
  }
  rep.symmetric = rep.mismatched_cells == 0;
  return rep;
}

}  // namespace mpspec

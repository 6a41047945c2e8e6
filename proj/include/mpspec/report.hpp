// CSV and SVG emission. Both formats are fully deterministic: CSV numbers
// carry 17 significant digits so reruns are byte-identical and downstream
// fits round-trip exactly; SVG elements are emitted in a fixed layer order
// with fixed-precision coordinates.
#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "mpspec/grid.hpp"

namespace mpspec {

inline std::string csv_row(const std::vector<std::string>& cells) {
  std::string row;
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) row += ",";
    row += cells[i];
  }
  row += "\n";
  return row;
}

struct SvgPointSet {
  std::string label;
  std::string color;
  double radius_px = 3.0;
  std::vector<cplx> points;
};

struct SvgPolylineSet {
  std::string label;
  std::string color;
  std::vector<Polyline> lines;
};

struct SvgCellShading {
  std::string label;
  std::string color;
  GridSpec spec;
  std::vector<std::uint8_t> member;
};

struct SvgScene {
  double re_min = -1, re_max = 1, im_min = -1, im_max = 1;
  std::vector<SvgCellShading> shadings;
  std::vector<SvgPolylineSet> lines;
  std::vector<SvgPointSet> points;
};

namespace detail {

inline std::string svg_num(double v) {
  if (!std::isfinite(v)) config_error("emit_svg: non-finite coordinate");
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

}  // namespace detail

inline std::string emit_svg(const SvgScene& scene, int width = 800, int height = 800) {
  const double margin = 50.0;
  const double plot_w = width - 2 * margin;
  const double plot_h = height - 2 * margin;
  double re_span = scene.re_max - scene.re_min;
  double im_span = scene.im_max - scene.im_min;
  if (!(re_span > 0) || !(im_span > 0)) config_error("emit_svg: empty viewport");

  auto px = [&](double re) { return margin + (re - scene.re_min) / re_span * plot_w; };
  auto py = [&](double im) { return margin + (scene.im_max - im) / im_span * plot_h; };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
         "\" height=\"" + std::to_string(height) + "\" viewBox=\"0 0 " + std::to_string(width) +
         " " + std::to_string(height) + "\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(width) + "\" height=\"" +
         std::to_string(height) + "\" fill=\"white\"/>\n";

  for (const SvgCellShading& sh : scene.shadings) {
    svg += "<g fill=\"" + sh.color + "\" fill-opacity=\"0.45\">\n";
    // Merge consecutive member cells per row into single rects.
    for (int j = 0; j < sh.spec.n_im; ++j) {
      int i = 0;
      while (i < sh.spec.n_re) {
        if (!sh.member[sh.spec.index(i, j)]) {
          ++i;
          continue;
        }
        int start = i;
        while (i < sh.spec.n_re && sh.member[sh.spec.index(i, j)]) ++i;
        double re0 = sh.spec.re_min + start * sh.spec.cell_w();
        double re1 = sh.spec.re_min + i * sh.spec.cell_w();
        double im0 = sh.spec.im_min + j * sh.spec.cell_h();
        double im1 = im0 + sh.spec.cell_h();
        svg += "<rect x=\"" + detail::svg_num(px(re0)) + "\" y=\"" + detail::svg_num(py(im1)) +
               "\" width=\"" + detail::svg_num(px(re1) - px(re0)) + "\" height=\"" +
               detail::svg_num(py(im0) - py(im1)) + "\"/>\n";
      }
    }
    svg += "</g>\n";
  }

  // Frame and axes.
  svg += "<rect x=\"" + detail::svg_num(margin) + "\" y=\"" + detail::svg_num(margin) +
         "\" width=\"" + detail::svg_num(plot_w) + "\" height=\"" + detail::svg_num(plot_h) +
         "\" fill=\"none\" stroke=\"black\"/>\n";
  if (scene.re_min < 0 && scene.re_max > 0)
    svg += "<line x1=\"" + detail::svg_num(px(0)) + "\" y1=\"" + detail::svg_num(margin) +
           "\" x2=\"" + detail::svg_num(px(0)) + "\" y2=\"" + detail::svg_num(margin + plot_h) +
           "\" stroke=\"#bbbbbb\"/>\n";
  if (scene.im_min < 0 && scene.im_max > 0)
    svg += "<line x1=\"" + detail::svg_num(margin) + "\" y1=\"" + detail::svg_num(py(0)) +
           "\" x2=\"" + detail::svg_num(margin + plot_w) + "\" y2=\"" + detail::svg_num(py(0)) +
           "\" stroke=\"#bbbbbb\"/>\n";
  svg += "<text x=\"" + detail::svg_num(margin) + "\" y=\"" + detail::svg_num(height - 12.0) +
         "\" font-size=\"12\">Re [" + fmt17(scene.re_min) + ", " + fmt17(scene.re_max) +
         "]</text>\n";
  svg += "<text x=\"" + detail::svg_num(margin) + "\" y=\"" + detail::svg_num(height - 28.0) +
         "\" font-size=\"12\">Im [" + fmt17(scene.im_min) + ", " + fmt17(scene.im_max) +
         "]</text>\n";

  for (const SvgPolylineSet& pls : scene.lines) {
    svg += "<g fill=\"none\" stroke=\"" + pls.color + "\" stroke-width=\"1.5\">\n";
    for (const Polyline& line : pls.lines) {
      if (line.empty()) continue;
      std::string d = "M";
      for (size_t k = 0; k < line.size(); ++k) {
        if (k) d += " L";
        d += detail::svg_num(px(line[k].real())) + " " + detail::svg_num(py(line[k].imag()));
      }
      svg += "<path d=\"" + d + "\"/>\n";
    }
    svg += "</g>\n";
  }

  for (const SvgPointSet& pts : scene.points) {
    svg += "<g fill=\"" + pts.color + "\">\n";
    for (cplx z : pts.points)
      svg += "<circle cx=\"" + detail::svg_num(px(z.real())) + "\" cy=\"" +
             detail::svg_num(py(z.imag())) + "\" r=\"" + detail::svg_num(pts.radius_px) +
             "\"/>\n";
    svg += "</g>\n";
  }

  // Legend.
  double ly = 20.0;
  auto legend_entry = [&](const std::string& color, const std::string& label) {
    svg += "<rect x=\"10\" y=\"" + detail::svg_num(ly - 9) +
           "\" width=\"10\" height=\"10\" fill=\"" + color + "\"/>\n";
    svg += "<text x=\"26\" y=\"" + detail::svg_num(ly) + "\" font-size=\"12\">" + label +
           "</text>\n";
    ly += 16.0;
  };
  for (const SvgCellShading& sh : scene.shadings) legend_entry(sh.color, sh.label);
  for (const SvgPolylineSet& pls : scene.lines) legend_entry(pls.color, pls.label);
  for (const SvgPointSet& pts : scene.points) legend_entry(pts.color, pts.label);

  svg += "</svg>\n";
  return svg;
}

}  // namespace mpspec

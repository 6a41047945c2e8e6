// Command dispatch behind the mpspec CLI. Each command reads a family
// file, runs the matching module, and emits CSV/JSON/SVG artifacts plus a
// manifest listing every file with the fully resolved configuration.
// Identical configurations produce byte-identical outputs.
#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mpspec/jordan.hpp"
#include "mpspec/numerical_range.hpp"
#include "mpspec/pseudospectrum.hpp"
#include "mpspec/regularity.hpp"
#include "mpspec/report.hpp"

namespace mpspec {

using ordered_json = nlohmann::ordered_json;

struct RunConfig {
  std::string family_path;
  std::string command;
  std::vector<double> at;
  double eps = 0.25;
  std::vector<double> region;  // re_min, re_max, im_min, im_max; empty = auto
  std::vector<int> res = {101};
  std::vector<double> scales;  // empty = default geometric sequence
  std::uint64_t seed = 0;
  double tol = -1.0;  // cluster tolerance override where meaningful
  std::string out_dir = "out";
  std::string map = "spectrum";  // holder map kind
  int samples = 10000;
  int angles = 64;
  double noise_floor = -1.0;
  // stratify axes; param indices are 1-based (t1..tm), axis2_param = 0 = absent
  int axis_param = 1;
  double axis_lo = -1.0, axis_hi = 1.0;
  int axis_nodes = 41;
  int axis2_param = 0;
  double axis2_lo = -1.0, axis2_hi = 1.0;
  int axis2_nodes = 0;
  // certify
  std::vector<double> atp;
  double radius = 0.5;
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) config_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline ParamPoint config_point(const std::vector<double>& at, int m, const char* what) {
  if (static_cast<int>(at.size()) != m)
    config_error(std::string(what) + ": expected " + std::to_string(m) +
                 " parameter values, got " + std::to_string(at.size()));
  return ParamPoint(at);
}

inline GridSpec config_grid(const RunConfig& cfg, double auto_bound) {
  GridSpec g;
  if (cfg.region.empty()) {
    g.re_min = -auto_bound;
    g.re_max = auto_bound;
    g.im_min = -auto_bound;
    g.im_max = auto_bound;
  } else if (cfg.region.size() == 4) {
    g.re_min = cfg.region[0];
    g.re_max = cfg.region[1];
    g.im_min = cfg.region[2];
    g.im_max = cfg.region[3];
  } else {
    config_error("--region expects re_min,re_max,im_min,im_max");
  }
  if (cfg.res.size() == 1) {
    g.n_re = g.n_im = cfg.res[0];
  } else if (cfg.res.size() == 2) {
    g.n_re = cfg.res[0];
    g.n_im = cfg.res[1];
  } else {
    config_error("--res expects one or two integers");
  }
  g.validate();
  return g;
}

inline ordered_json json_complex(cplx z) { return ordered_json::array({z.real(), z.imag()}); }

inline ordered_json json_config(const RunConfig& cfg) {
  ordered_json j;
  j["family"] = cfg.family_path;
  j["command"] = cfg.command;
  j["at"] = cfg.at;
  j["eps"] = cfg.eps;
  j["region"] = cfg.region;
  j["res"] = cfg.res;
  j["scales"] = cfg.scales;
  j["seed"] = cfg.seed;
  j["tol"] = cfg.tol;
  j["out_dir"] = cfg.out_dir;
  j["map"] = cfg.map;
  j["samples"] = cfg.samples;
  j["angles"] = cfg.angles;
  j["noise_floor"] = cfg.noise_floor;
  j["axis"] = {cfg.axis_param, cfg.axis_lo, cfg.axis_hi, cfg.axis_nodes};
  j["axis2"] = {cfg.axis2_param, cfg.axis2_lo, cfg.axis2_hi, cfg.axis2_nodes};
  j["atp"] = cfg.atp;
  j["radius"] = cfg.radius;
  return j;
}

inline std::string grid_csv(const IndicatorGrid& g) {
  std::string csv = "re,im,member,value\n";
  for (int j = 0; j < g.spec.n_im; ++j) {
    for (int i = 0; i < g.spec.n_re; ++i) {
      cplx c = g.spec.center(i, j);
      int idx = g.spec.index(i, j);
      csv += csv_row({fmt17(c.real()), fmt17(c.imag()), std::to_string(int(g.member[idx])),
                      fmt17(g.values[idx])});
    }
  }
  return csv;
}

inline double family_scale_bound(const Family& f, const ParamPoint& u, double pad) {
  MatrixPolynomial p = evaluate_coeffs(f, u);
  double b = 0.0;
  for (const ComplexMatrix& a : p.coeffs) b = std::max(b, a.frobenius_norm());
  return 1.0 + b + pad;
}

inline const char* svg_palette(int i) {
  static const char* colors[] = {"#4878cf", "#e1812c", "#3a923a", "#c03d3e",
                                 "#8172b2", "#937860", "#d684bd", "#777777"};
  return colors[i % 8];
}

}  // namespace detail

// Runs one command; returns the process exit code and fills `emitted` with
// the artifact file names (relative to cfg.out_dir).
inline int run(const RunConfig& cfg, std::vector<std::string>* emitted_out = nullptr) {
  std::map<std::string, std::string> files;  // name -> content, sorted

  try {
    Family fam = parse_family(detail::read_file(cfg.family_path));
    double cluster_tol = cfg.tol >= 0 ? cfg.tol : 1e-6;

    if (cfg.command == "spectrum") {
      ParamPoint u = detail::config_point(cfg.at, fam.m, "spectrum --at");
      SpectrumSet s = spectrum(fam, u, cluster_tol);
      std::string csv = "re,im,multiplicity\n";
      ordered_json eigs = ordered_json::array();
      for (const auto& e : s.eigenvalues) {
        csv += csv_row({fmt17(e.value.real()), fmt17(e.value.imag()),
                        std::to_string(e.multiplicity)});
        eigs.push_back({{"re", e.value.real()},
                        {"im", e.value.imag()},
                        {"multiplicity", e.multiplicity}});
      }
      files["spectrum.csv"] = csv;
      ordered_json rep;
      rep["eigenvalues"] = eigs;
      rep["total_multiplicity"] = s.total;
      rep["spectral_radius"] = spectral_radius(s);
      files["report.json"] = rep.dump(2) + "\n";

      double b = detail::family_scale_bound(fam, u, 0.5);
      SvgScene scene;
      scene.re_min = -b;
      scene.re_max = b;
      scene.im_min = -b;
      scene.im_max = b;
      scene.points.push_back({"spectrum", "#c03d3e", 4.0, s.points()});
      files["spectrum.svg"] = emit_svg(scene);

    } else if (cfg.command == "pseudo") {
      ParamPoint u = detail::config_point(cfg.at, fam.m, "pseudo --at");
      GridSpec grid = detail::config_grid(cfg, detail::family_scale_bound(fam, u, cfg.eps + 0.5));
      PseudoQuery q{u, cfg.eps, grid};
      IndicatorGrid g = pseudospectrum_grid(fam, q, cfg.seed);
      files["grid.csv"] = detail::grid_csv(g);

      SpectrumSet s = spectrum(fam, u, cluster_tol);
      SvgScene scene;
      scene.re_min = grid.re_min;
      scene.re_max = grid.re_max;
      scene.im_min = grid.im_min;
      scene.im_max = grid.im_max;
      scene.shadings.push_back({"pseudospectrum (eps=" + fmt17(cfg.eps) + ")", "#4878cf",
                                g.spec, g.member});
      scene.lines.push_back({"boundary", "#1f3d7a", g.boundary});
      scene.points.push_back({"spectrum", "#c03d3e", 3.5, s.points()});
      files["boundary.svg"] = emit_svg(scene);

      ordered_json rep;
      rep["eps"] = cfg.eps;
      rep["components"] = g.components;
      rep["member_cells"] = g.member_count();
      rep["cell_diag"] = g.spec.cell_diag();
      rep["boundary_polylines"] = g.boundary.size();
      files["report.json"] = rep.dump(2) + "\n";

    } else if (cfg.command == "numrange") {
      ParamPoint u = detail::config_point(cfg.at, fam.m, "numrange --at");
      MatrixPolynomial p = evaluate_coeffs(fam, u);
      double bound = numrange_bound(p);
      GridSpec grid = detail::config_grid(cfg, bound + 0.5);
      IndicatorGrid g = numrange_grid(fam, u, grid, cfg.angles);
      files["grid.csv"] = detail::grid_csv(g);

      SpectrumSet s = spectrum(fam, u, cluster_tol);
      SvgScene scene;
      scene.re_min = grid.re_min;
      scene.re_max = grid.re_max;
      scene.im_min = grid.im_min;
      scene.im_max = grid.im_max;
      scene.shadings.push_back({"numerical range", "#3a923a", g.spec, g.member});
      scene.lines.push_back({"boundary", "#1d5c1d", g.boundary});
      scene.points.push_back({"spectrum", "#c03d3e", 3.5, s.points()});
      files["boundary.svg"] = emit_svg(scene);

      ordered_json rep;
      rep["components"] = g.components;
      rep["member_cells"] = g.member_count();
      rep["root_bound"] = bound;
      rep["cell_diag"] = g.spec.cell_diag();
      files["report.json"] = rep.dump(2) + "\n";

    } else if (cfg.command == "jointnr") {
      ParamPoint u = detail::config_point(cfg.at, fam.m, "jointnr --at");
      JWCloud cloud = jw_sample(fam, u, cfg.samples, cfg.seed);
      std::string csv;
      for (int k = 0; k <= fam.d; ++k) {
        if (k) csv += ",";
        csv += "a" + std::to_string(k) + "_re,a" + std::to_string(k) + "_im";
      }
      csv += "\n";
      double worst_last = 0.0;
      for (const auto& pt : cloud.points) {
        std::vector<std::string> cells;
        for (cplx z : pt) {
          cells.push_back(fmt17(z.real()));
          cells.push_back(fmt17(z.imag()));
        }
        csv += csv_row(cells);
        worst_last = std::max(worst_last, std::abs(pt.back() - cplx(1.0)));
      }
      files["jw.csv"] = csv;

      std::vector<cplx> recon = reconstruct_w_from_jw(cloud);
      std::string rcsv = "re,im\n";
      for (cplx z : recon) rcsv += csv_row({fmt17(z.real()), fmt17(z.imag())});
      files["reconstructed.csv"] = rcsv;

      ordered_json rep;
      rep["points"] = cloud.points.size();
      rep["sphere_samples"] = cloud.sphere_samples;
      rep["seed"] = cloud.seed;
      if (fam.monic_flag) rep["max_leading_deviation"] = worst_last;
      rep["reconstructed_points"] = recon.size();
      files["report.json"] = rep.dump(2) + "\n";

    } else if (cfg.command == "holder") {
      ParamPoint u = detail::config_point(cfg.at, fam.m, "holder --at");
      MapKind kind;
      if (cfg.map == "spectrum")
        kind = MapKind::spectrum;
      else if (cfg.map == "pseudo" || cfg.map == "pseudospectrum")
        kind = MapKind::pseudospectrum;
      else if (cfg.map == "numrange")
        kind = MapKind::numrange;
      else if (cfg.map == "jointnr")
        kind = MapKind::jointnr;
      else if (cfg.map == "specradius")
        kind = MapKind::specradius;
      else
        config_error("holder --map must be spectrum|pseudo|numrange|jointnr|specradius");

      std::vector<double> scales = cfg.scales.empty() ? default_scales() : cfg.scales;
      ScaleSamplingOptions opt;
      opt.eps = cfg.eps;
      opt.seed = cfg.seed;
      opt.angle_count = cfg.angles;
      opt.jw_samples = std::min(cfg.samples, 5000);
      if (!cfg.region.empty()) {
        opt.grid = detail::config_grid(cfg, 0.0);
        opt.grid_set = true;
      } else if (cfg.res.size() >= 1 && (kind == MapKind::pseudospectrum ||
                                         kind == MapKind::numrange)) {
        opt.grid = detail::auto_window(fam, u, kind == MapKind::numrange ? 1.5 : 1.0,
                                       std::min(cfg.res[0], 81));
        opt.grid_set = true;
      }

      std::vector<double> direction = Stream(cfg.seed, "holder-direction").unit_vector(fam.m);
      std::vector<ScalePair> pairs = sample_scale_pairs(fam, u, kind, direction, scales, opt);
      double floor = cfg.noise_floor >= 0 ? cfg.noise_floor
                     : (kind == MapKind::pseudospectrum || kind == MapKind::numrange)
                         ? grid_noise_floor(opt.grid)
                         : 1e-9;
      HoelderFit fit = fit_holder(pairs, floor);

      double threshold;
      switch (kind) {
        case MapKind::spectrum:
        case MapKind::pseudospectrum: threshold = 1.0 / (fam.n * fam.d) - 0.05; break;
        case MapKind::numrange: threshold = 1.0 / fam.d - 0.05; break;
        default: threshold = 0.95; break;
      }
      std::string verdict = fit.degenerate ? "degenerate"
                            : fit.alpha_hat >= threshold ? "consistent-with-generic-exponent"
                                                         : "below-generic-exponent";

      ordered_json rep;
      rep["map_kind"] = map_kind_name(kind);
      rep["base"] = cfg.at;
      rep["direction"] = direction;
      ordered_json jp = ordered_json::array();
      for (const ScalePair& p : pairs) jp.push_back({{"h", p.h}, {"dist", p.dist}});
      rep["pairs"] = jp;
      rep["noise_floor"] = floor;
      rep["c_hat"] = fit.c_hat;
      rep["alpha_hat"] = fit.alpha_hat;
      rep["r2"] = fit.r2;
      rep["n_pairs_used"] = fit.n_pairs;
      rep["degenerate"] = fit.degenerate;
      rep["threshold"] = threshold;
      rep["verdict"] = verdict;
      files["report.json"] = rep.dump(2) + "\n";

    } else if (cfg.command == "jordan") {
      ParamPoint u = detail::config_point(cfg.at, fam.m, "jordan --at");
      JordanPair jp = jordan_pair(fam, u);
      ordered_json rep;
      ordered_json eigs = ordered_json::array();
      for (const auto& e : jp.signature.eigenvalues)
        eigs.push_back({{"re", e.value.real()},
                        {"im", e.value.imag()},
                        {"multiplicity", e.multiplicity},
                        {"partition", e.partition}});
      rep["eigenvalues"] = eigs;
      rep["signature"] = jp.signature.canonical_text();
      rep["chain_residual"] = jp.chain_residual;
      rep["poly_residual"] = jp.poly_residual;
      auto matrix_json = [](const ComplexMatrix& m) {
        ordered_json rows = ordered_json::array();
        for (int i = 0; i < m.rows(); ++i) {
          ordered_json row = ordered_json::array();
          for (int j = 0; j < m.cols(); ++j) row.push_back(detail::json_complex(m(i, j)));
          rows.push_back(row);
        }
        return rows;
      };
      rep["X"] = matrix_json(jp.x);
      rep["J"] = matrix_json(jp.j);
      files["report.json"] = rep.dump(2) + "\n";

    } else if (cfg.command == "stratify") {
      ParamPoint base(std::vector<double>(fam.m, 0.0));
      if (!cfg.at.empty()) base = detail::config_point(cfg.at, fam.m, "stratify --at");
      StratifyAxis a1{cfg.axis_param - 1, cfg.axis_lo, cfg.axis_hi, cfg.axis_nodes};
      std::optional<StratifyAxis> a2;
      if (cfg.axis2_param > 0)
        a2 = StratifyAxis{cfg.axis2_param - 1, cfg.axis2_lo, cfg.axis2_hi, cfg.axis2_nodes};
      StratificationMap map = stratify(fam, base, a1, a2);

      std::string csv;
      for (int i = 0; i < fam.m; ++i) csv += "t" + std::to_string(i + 1) + ",";
      csv += "signature_hash,signature,region\n";
      for (const StratumNode& node : map.nodes) {
        std::vector<std::string> cells;
        for (double c : node.point.coords) cells.push_back(fmt17(c));
        cells.push_back(std::to_string(node.hash));
        cells.push_back(node.text);
        cells.push_back(std::to_string(node.region));
        csv += csv_row(cells);
      }
      files["strata.csv"] = csv;

      ordered_json rep;
      rep["nodes"] = map.nodes.size();
      rep["regions"] = map.regions;
      ordered_json legend = ordered_json::array();
      for (const auto& [h, t] : map.legend)
        legend.push_back({{"hash", h}, {"signature", t}});
      rep["legend"] = legend;
      files["report.json"] = rep.dump(2) + "\n";

      // Node map rendered in axis coordinates, one color per signature.
      SvgScene scene;
      double pad1 = (cfg.axis_hi - cfg.axis_lo) / std::max(1, cfg.axis_nodes - 1);
      scene.re_min = cfg.axis_lo - pad1;
      scene.re_max = cfg.axis_hi + pad1;
      if (a2) {
        double pad2 = (a2->hi - a2->lo) / std::max(1, a2->nodes - 1);
        scene.im_min = a2->lo - pad2;
        scene.im_max = a2->hi + pad2;
      } else {
        scene.im_min = -1;
        scene.im_max = 1;
      }
      for (size_t li = 0; li < map.legend.size(); ++li) {
        SvgPointSet pts;
        pts.label = map.legend[li].second;
        pts.color = detail::svg_palette(static_cast<int>(li));
        pts.radius_px = a2 ? 3.0 : 4.0;
        for (int j = 0; j < map.n2; ++j)
          for (int i = 0; i < map.n1; ++i) {
            const StratumNode& node = map.nodes[j * map.n1 + i];
            if (node.hash != map.legend[li].first) continue;
            double x = cfg.axis_lo + (cfg.axis_hi - cfg.axis_lo) * i / (map.n1 - 1);
            double y = a2 ? a2->lo + (a2->hi - a2->lo) * j / (map.n2 - 1) : 0.0;
            pts.points.emplace_back(x, y);
          }
        scene.points.push_back(std::move(pts));
      }
      files["strata.svg"] = emit_svg(scene);

    } else if (cfg.command == "certify") {
      ParamPoint u = detail::config_point(cfg.at, fam.m, "certify --at");
      std::vector<std::pair<ParamPoint, ParamPoint>> point_pairs;
      if (!cfg.atp.empty()) {
        point_pairs.emplace_back(u, detail::config_point(cfg.atp, fam.m, "certify --atp"));
      } else {
        Stream stream(cfg.seed, "certify-pairs");
        int n_pairs = std::max(1, cfg.samples);
        for (int k = 0; k < n_pairs; ++k) {
          ParamPoint a = u, b = u;
          auto ba = stream.ball_point(fam.m, cfg.radius);
          auto bb = stream.ball_point(fam.m, cfg.radius);
          for (int i = 0; i < fam.m; ++i) {
            a.coords[i] += ba[i];
            b.coords[i] += bb[i];
          }
          point_pairs.emplace_back(a, b);
        }
      }

      std::string csv;
      for (int i = 0; i < fam.m; ++i) csv += "u_t" + std::to_string(i + 1) + ",";
      for (int i = 0; i < fam.m; ++i) csv += "up_t" + std::to_string(i + 1) + ",";
      csv += "lambda_re,lambda_im,dist_pow,det_val,det_bound,dist_le_det,det_le_bound\n";
      int failures = 0;
      long total = 0;
      for (const auto& [a, b] : point_pairs) {
        SpectrumSet sa = spectrum(fam, a, cluster_tol);
        for (const auto& eig : sa.eigenvalues) {
          PerturbationCertificate cert =
              verify_spectrum_perturbation(fam, a, b, eig.value, cluster_tol);
          ++total;
          if (!cert.holds()) ++failures;
          std::vector<std::string> cells;
          for (double c : a.coords) cells.push_back(fmt17(c));
          for (double c : b.coords) cells.push_back(fmt17(c));
          cells.push_back(fmt17(eig.value.real()));
          cells.push_back(fmt17(eig.value.imag()));
          cells.push_back(fmt17(cert.dist_pow));
          cells.push_back(fmt17(cert.det_val));
          cells.push_back(fmt17(cert.det_bound));
          cells.push_back(cert.dist_le_det ? "1" : "0");
          cells.push_back(cert.det_le_bound ? "1" : "0");
          csv += csv_row(cells);
        }
      }
      files["certificates.csv"] = csv;
      ordered_json rep;
      rep["certificates"] = total;
      rep["failures"] = failures;
      rep["all_hold"] = failures == 0;
      files["report.json"] = rep.dump(2) + "\n";
      if (failures > 0 && fam.monic_flag)
        invariant_error("certify: " + std::to_string(failures) + " of " + std::to_string(total) +
                        " certificates failed on a monic family");

    } else {
      config_error("unknown command: " + cfg.command);
    }

    // Single writer stage: artifacts first, manifest last.
    namespace fs = std::filesystem;
    fs::create_directories(cfg.out_dir);
    for (const auto& [name, content] : files) {
      std::ofstream out(fs::path(cfg.out_dir) / name, std::ios::binary);
      out << content;
    }
    std::vector<std::string> listed;
    for (const auto& entry : fs::directory_iterator(cfg.out_dir))
      if (entry.is_regular_file() && entry.path().filename() != "manifest.json")
        listed.push_back(entry.path().filename().string());
    listed.push_back("manifest.json");
    std::sort(listed.begin(), listed.end());
    ordered_json manifest;
    manifest["command"] = cfg.command;
    manifest["config"] = detail::json_config(cfg);
    manifest["seed"] = cfg.seed;
    manifest["files"] = listed;
    {
      std::ofstream out(fs::path(cfg.out_dir) / "manifest.json", std::ios::binary);
      out << manifest.dump(2) << "\n";
    }
    if (emitted_out) *emitted_out = listed;
  } catch (const Error& e) {
    std::fprintf(stderr, "mpspec: %s\n", e.what());
    return e.exit_code();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "mpspec: %s\n", e.what());
    return 3;
  }
  return 0;
}

}  // namespace mpspec

// mpspec command-line tool: spectra, pseudospectra, numerical ranges,
// joint numerical ranges, Hoelder exponent fits, Jordan structure,
// stratification maps, and perturbation certificates for parameter-
// dependent matrix polynomials.
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mpspec/cli.hpp"

namespace {

std::vector<double> parse_doubles(const std::string& s) {
  std::vector<double> out;
  size_t start = 0;
  while (start <= s.size()) {
    size_t comma = s.find(',', start);
    std::string tok = s.substr(start, comma == std::string::npos ? std::string::npos
                                                                 : comma - start);
    if (!tok.empty()) out.push_back(std::stod(tok));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  for (double v : parse_doubles(s)) out.push_back(static_cast<int>(v));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mpspec: spectral analysis of parameter-dependent matrix polynomials"};
  app.require_subcommand(1);

  mpspec::RunConfig cfg;
  std::string at_str, region_str, res_str = "101", scales_str, atp_str;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("family", cfg.family_path, "family definition file")->required();
    cmd->add_option("--at", at_str, "parameter point, comma separated");
    cmd->add_option("--out", cfg.out_dir, "output directory (default: out)");
    cmd->add_option("--seed", cfg.seed, "random seed (default: 0)");
    cmd->add_option("--tol", cfg.tol, "eigenvalue cluster tolerance override");
    return cmd;
  };

  auto* c_spectrum = add_common(app.add_subcommand("spectrum", "eigenvalues at a parameter point"));
  auto* c_pseudo = add_common(app.add_subcommand("pseudo", "epsilon-pseudospectrum grid"));
  c_pseudo->add_option("--eps", cfg.eps, "ball radius (default: 0.25)");
  c_pseudo->add_option("--region", region_str, "re_min,re_max,im_min,im_max (default: auto)");
  c_pseudo->add_option("--res", res_str, "grid resolution N or N,M (default: 101)");
  auto* c_numrange = add_common(app.add_subcommand("numrange", "numerical range grid"));
  c_numrange->add_option("--region", region_str, "re_min,re_max,im_min,im_max (default: auto)");
  c_numrange->add_option("--res", res_str, "grid resolution N or N,M (default: 101)");
  c_numrange->add_option("--angles", cfg.angles, "coarse angle count (default: 64)");
  auto* c_jointnr = add_common(app.add_subcommand("jointnr", "joint numerical range cloud"));
  c_jointnr->add_option("--samples", cfg.samples, "sphere samples (default: 10000)");
  auto* c_holder = add_common(app.add_subcommand("holder", "Hoelder exponent fit"));
  c_holder->add_option("--map", cfg.map, "spectrum|pseudo|numrange|jointnr|specradius");
  c_holder->add_option("--eps", cfg.eps, "pseudospectrum ball radius (default: 0.25)");
  c_holder->add_option("--scales", scales_str, "explicit scale list (default: 2^-1..2^-8)");
  c_holder->add_option("--region", region_str, "grid window for grid-based maps");
  c_holder->add_option("--res", res_str, "grid resolution (default: 101, capped at 81)");
  c_holder->add_option("--samples", cfg.samples, "JW sphere samples");
  c_holder->add_option("--noise-floor", cfg.noise_floor, "fit noise floor override");
  auto* c_jordan = add_common(app.add_subcommand("jordan", "Jordan pair at a parameter point"));
  std::string range_str = "-1,1", range2_str = "-1,1";
  auto* c_stratify = add_common(app.add_subcommand("stratify", "Jordan signature map over a slice"));
  c_stratify->add_option("--param", cfg.axis_param, "axis parameter index, 1-based (default: 1)");
  c_stratify->add_option("--range", range_str, "axis range lo,hi (default: -1,1)");
  c_stratify->add_option("--nodes", cfg.axis_nodes, "axis node count (default: 41)");
  c_stratify->add_option("--param2", cfg.axis2_param, "second axis parameter index (0 = none)");
  c_stratify->add_option("--range2", range2_str, "second axis range lo,hi (default: -1,1)");
  c_stratify->add_option("--nodes2", cfg.axis2_nodes, "second axis node count");
  auto* c_certify = add_common(app.add_subcommand("certify", "spectrum perturbation certificates"));
  c_certify->add_option("--atp", atp_str, "second parameter point (default: sampled pairs)");
  c_certify->add_option("--radius", cfg.radius, "sampling ball radius (default: 0.5)");
  c_certify->add_option("--samples", cfg.samples, "sampled pair count (default: 200)");

  (void)c_spectrum;
  (void)c_jordan;

  CLI11_PARSE(app, argc, argv);

  cfg.command = app.get_subcommands().front()->get_name();
  if (cfg.command == "certify" && !c_certify->count("--samples")) cfg.samples = 200;
  cfg.at = parse_doubles(at_str);
  cfg.region = parse_doubles(region_str);
  cfg.res = parse_ints(res_str);
  cfg.scales = parse_doubles(scales_str);
  cfg.atp = parse_doubles(atp_str);
  if (auto r = parse_doubles(range_str); r.size() == 2) {
    cfg.axis_lo = r[0];
    cfg.axis_hi = r[1];
  }
  if (auto r = parse_doubles(range2_str); r.size() == 2) {
    cfg.axis2_lo = r[0];
    cfg.axis2_hi = r[1];
  }

  return mpspec::run(cfg);
}

#include <catch_amalgamated.hpp>

#include "mpspec/pseudospectrum.hpp"
#include "oracles.hpp"

using namespace mpspec;

namespace {

Family linear_real() {
  return parse_family("n = 1\nd = 1\nm = 1\ncoeff 0 {\n t1\n}\ncoeff 1 {\n 1\n}\n");
}

// lambda + (t1 + i t2): the radius-eps ball sweeps a disk of eigenvalues.
Family linear_complex() {
  return parse_family(
      "n = 1\nd = 1\nm = 2\ncoeff 0 {\n t1 + i*t2\n}\ncoeff 1 {\n 1\n}\n");
}

Family diag2() {
  return parse_family(
      "n = 2\nd = 1\nm = 2\ncoeff 0 {\n t1, 0\n 0, t2\n}\ncoeff 1 {\n 1, 0\n 0, 1\n}\n");
}

}  // namespace

TEST_CASE("pseudo_membership point queries", "[pseudospectrum]") {
  SECTION("eps = 0 reduces to the spectrum") {
    Family f = linear_real();
    auto [member, witness] = pseudo_membership(f, ParamPoint({2.0}), 0.0, cplx(-2.0));
    CHECK(member);
    REQUIRE(witness.has_value());
    CHECK(witness->v.coords[0] == 2.0);
    CHECK(witness->residual <= 1e-12);

    auto [outside, no_witness] = pseudo_membership(f, ParamPoint({2.0}), 0.0, cplx(1.0));
    CHECK_FALSE(outside);
    CHECK_FALSE(no_witness.has_value());
  }
  SECTION("unit ball of the complex linear family is the unit disk") {
    Family f = linear_complex();
    ParamPoint u({0.0, 0.0});
    auto [in_disk, w1] = pseudo_membership(f, u, 1.0, cplx(0.5, 0.0));
    CHECK(in_disk);
    REQUIRE(w1.has_value());
    CHECK(distance(w1->v, u) <= 1.0 + 1e-12);

    auto [out_disk, w2] = pseudo_membership(f, u, 1.0, cplx(1.5, 0.0));
    CHECK_FALSE(out_disk);
  }
  SECTION("membership agrees with a dense eigenvalue-cloud oracle") {
    // Lambda_eps of the real diag family is a union of real segments, so
    // the oracle samples on the real axis where the cloud is dense.
    Family f = diag2();
    ParamPoint u({0.3, -0.4});
    double eps = 0.5;
    std::vector<cplx> cloud = eigenvalue_cloud(f, u, eps, 2000, 5);
    // In/out flips at the segment endpoints -u_i +- eps; stay clear of them.
    std::vector<cplx> endpoints{{-0.3 - eps, 0}, {-0.3 + eps, 0}, {0.4 - eps, 0}, {0.4 + eps, 0}};
    Stream s(101, "membership-oracle");
    int checked = 0;
    for (int trial = 0; trial < 100; ++trial) {
      cplx lambda{s.uniform(-1.5, 1.5), 0.0};
      if (point_set_distance(lambda, endpoints) < 0.05) continue;
      double cloud_dist = point_set_distance(lambda, cloud);
      if (cloud_dist > 1e-3 && cloud_dist < 0.05) continue;
      bool expect = cloud_dist <= 1e-3;
      auto [member, witness] = pseudo_membership(f, u, eps, lambda);
      if (expect) {
        CHECK(member);
      } else {
        CHECK_FALSE(member);
      }
      ++checked;
    }
    CHECK(checked >= 20);
  }
}

TEST_CASE("pseudospectrum grid of the complex linear family is the unit disk",
          "[pseudospectrum]") {
  Family f = linear_complex();
  GridSpec spec{-2, 2, -2, 2, 41, 41};
  PseudoQuery q{ParamPoint({0.0, 0.0}), 1.0, spec};
  IndicatorGrid g = pseudospectrum_grid(f, q);
  CHECK(g.components == 1);
  int misclassified = 0;
  for (int j = 0; j < spec.n_im; ++j)
    for (int i = 0; i < spec.n_re; ++i) {
      double r = std::abs(spec.center(i, j));
      if (std::abs(r - 1.0) <= 0.1) continue;  // boundary band
      bool inside = r < 1.0;
      if (g.member[spec.index(i, j)] != (inside ? 1 : 0)) ++misclassified;
    }
  CHECK(misclassified == 0);
  CHECK_FALSE(g.boundary.empty());
}

TEST_CASE("eps = 0 grid marks exactly the eigenvalue cells", "[pseudospectrum]") {
  Family f = diag2();
  ParamPoint u({-0.42, 0.87});  // sigma = {0.42, -0.87}
  GridSpec spec{-2, 2, -2, 2, 41, 41};
  PseudoQuery q{u, 0.0, spec};
  IndicatorGrid g = pseudospectrum_grid(f, q);
  std::vector<cplx> eigs = spectrum(f, u).points();
  CHECK(g.components == 2);
  for (cplx e : eigs) CHECK(g.member_at(e));
  // Every member cell is within one cell diagonal of an eigenvalue.
  for (cplx c : g.member_centers())
    CHECK(point_set_distance(c, eigs) <= g.spec.cell_diag());
}

TEST_CASE("small-eps grid around two separated eigenvalues has two components",
          "[pseudospectrum]") {
  Family f = diag2();
  ParamPoint u({0.0, 3.0});  // sigma = {0, -3}
  GridSpec spec{-4, 1, -0.6, 0.6, 51, 13};
  PseudoQuery q{u, 0.2, spec};
  IndicatorGrid g = pseudospectrum_grid(f, q);
  CHECK(g.components == 2);
  // The two real segments [-3.2,-2.8] and [-0.2,0.2] are covered.
  CHECK(g.member_at(cplx(-3.0, 0.0)));
  CHECK(g.member_at(cplx(0.0, 0.0)));
  CHECK_FALSE(g.member_at(cplx(-1.5, 0.0)));
}

TEST_CASE("eigenvalue_cloud basics", "[pseudospectrum]") {
  SECTION("eps = 0 gives exactly the spectrum") {
    Family f = diag2();
    ParamPoint u({0.3, -0.6});
    std::vector<cplx> cloud = eigenvalue_cloud(f, u, 0.0, 100, 3);
    std::vector<cplx> eigs = spectrum(f, u).points_with_multiplicity();
    REQUIRE(cloud.size() == eigs.size());
    CHECK(hausdorff(cloud, eigs) < 1e-10);
  }
  SECTION("complex linear family fills the closed disk") {
    Family f = linear_complex();
    std::vector<cplx> cloud = eigenvalue_cloud(f, ParamPoint({0.0, 0.0}), 1.0, 1000, 7);
    double max_mod = 0.0;
    for (cplx z : cloud) {
      CHECK(std::abs(z) <= 1.0 + 1e-9);
      max_mod = std::max(max_mod, std::abs(z));
    }
    CHECK(max_mod >= 0.99);
  }
  SECTION("cloud points land in member cells") {
    Family f = diag2();
    ParamPoint u({0.1, -0.2});
    double eps = 0.4;
    GridSpec spec{-2, 2, -1, 1, 41, 21};
    PseudoQuery q{u, eps, spec};
    IndicatorGrid g = pseudospectrum_grid(f, q);
    std::vector<cplx> cloud = eigenvalue_cloud(f, u, eps, 300, 11);
    for (cplx z : cloud) {
      INFO("cloud point " << z.real() << " + " << z.imag() << "i");
      CHECK(g.member_at(z));
    }
  }
}

TEST_CASE("membership is monotone in eps", "[pseudospectrum]") {
  for (Family f : {linear_complex(), diag2()}) {
    ParamPoint u(std::vector<double>(f.m, 0.1));
    GridSpec spec{-1.5, 1.5, -1, 1, 31, 21};
    IndicatorGrid g1 = pseudospectrum_grid(f, {u, 0.1, spec});
    IndicatorGrid g2 = pseudospectrum_grid(f, {u, 0.2, spec});
    for (int k = 0; k < spec.cells(); ++k)
      if (g1.member[k]) CHECK(g2.member[k]);
  }
}

TEST_CASE("component count never exceeds dn on a covering region", "[pseudospectrum]") {
  Family f = diag2();
  ParamPoint u({0.5, -0.5});
  GridSpec spec{-3, 3, -2, 2, 41, 27};
  for (double eps : {0.1, 0.5}) {
    IndicatorGrid g = pseudospectrum_grid(f, {u, eps, spec});
    CHECK(g.components <= f.d * f.n);
    CHECK(g.components >= 1);
  }
}

TEST_CASE("axis symmetry of real and Hermitian families", "[pseudospectrum]") {
  SECTION("real family") {
    Family f = linear_real();
    ParamPoint u({0.0});
    GridSpec spec{-1, 1, -0.5, 0.5, 41, 21};
    IndicatorGrid g = pseudospectrum_grid(f, {u, 0.3, spec});
    SymmetryReport rep = check_axis_symmetry(f, u, 0.3, g);
    CHECK(rep.symmetric);
    CHECK(rep.mismatched_cells == 0);
  }
  SECTION("Hermitian family") {
    Family f = parse_family(
        "n = 2\nd = 1\nm = 2\ncoeff 0 {\n t1, i\n -i, t2\n}\ncoeff 1 {\n 1, 0\n 0, 1\n}\n");
    ParamPoint u({0.2, -0.3});
    GridSpec spec{-2, 2, -1, 1, 31, 15};
    IndicatorGrid g = pseudospectrum_grid(f, {u, 0.25, spec});
    SymmetryReport rep = check_axis_symmetry(f, u, 0.25, g);
    CHECK(rep.symmetric);
    CHECK(rep.mismatched_cells == 0);
  }
  SECTION("non-real family fails the detection precondition") {
    Family f = parse_family(
        "n = 1\nd = 1\nm = 1\ncoeff 0 {\n i*t1\n}\ncoeff 1 {\n 1\n}\n");
    GridSpec spec{-1, 1, -1, 1, 11, 11};
    IndicatorGrid g = pseudospectrum_grid(f, {ParamPoint({0.5}), 0.1, spec});
    CHECK_THROWS_AS(check_axis_symmetry(f, ParamPoint({0.5}), 0.1, g), Error);
  }
  SECTION("asymmetric region is rejected") {
    Family f = linear_real();
    GridSpec spec{-1, 1, -0.2, 0.6, 11, 11};
    IndicatorGrid g = pseudospectrum_grid(f, {ParamPoint({0.0}), 0.1, spec});
    CHECK_THROWS_AS(check_axis_symmetry(f, ParamPoint({0.0}), 0.1, g), Error);
  }
}

TEST_CASE("boundary polylines hug the member-set edge", "[pseudospectrum]") {
  Family f = linear_complex();
  GridSpec spec{-2, 2, -2, 2, 41, 41};
  IndicatorGrid g = pseudospectrum_grid(f, {ParamPoint({0.0, 0.0}), 1.0, spec});
  REQUIRE_FALSE(g.boundary.empty());
  // The margin crosses zero within half a diagonal of |lambda| = 1 +
  // threshold, so vertices must sit near that circle.
  double expected_radius = 1.0 + 0.5 * spec.cell_diag();
  for (const Polyline& line : g.boundary)
    for (cplx z : line)
      CHECK(std::abs(std::abs(z) - expected_radius) <= spec.cell_diag());
}

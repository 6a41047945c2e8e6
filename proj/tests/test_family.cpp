#include <catch_amalgamated.hpp>

#include "mpspec/family.hpp"
#include "oracles.hpp"

using namespace mpspec;

static const char* kLinear =
    "n = 1\nd = 1\nm = 1\ncoeff 0 {\n  t1\n}\ncoeff 1 {\n  1\n}\n";

TEST_CASE("parse_family reads a minimal monic family", "[family]") {
  Family f = parse_family(kLinear);
  CHECK(f.n == 1);
  CHECK(f.d == 1);
  CHECK(f.m == 1);
  CHECK(f.monic_flag);
}

TEST_CASE("parse_family rejects malformed documents", "[family]") {
  SECTION("dimension mismatch: 2x3 entry array") {
    const char* doc =
        "n = 2\nd = 1\nm = 1\ncoeff 0 {\n  1, 2, 3\n  4, 5, 6\n}\ncoeff 1 {\n  1, 0\n  0, 1\n}\n";
    CHECK_THROWS_WITH(parse_family(doc), Catch::Matchers::ContainsSubstring("3 entries"));
  }
  SECTION("undeclared parameter") {
    const char* doc =
        "n = 1\nd = 1\nm = 2\ncoeff 0 {\n  t5\n}\ncoeff 1 {\n  1\n}\n";
    CHECK_THROWS_WITH(parse_family(doc), Catch::Matchers::ContainsSubstring("t5"));
  }
  SECTION("syntax error carries line and column") {
    const char* doc =
        "n = 1\nd = 1\nm = 1\ncoeff 0 {\n  t1 + * 2\n}\ncoeff 1 {\n  1\n}\n";
    CHECK_THROWS_WITH(parse_family(doc), Catch::Matchers::ContainsSubstring("line 5"));
  }
  SECTION("missing header") {
    CHECK_THROWS_AS(parse_family("coeff 0 {\n 1\n}\n"), Error);
  }
  SECTION("out-of-order coeff blocks") {
    const char* doc =
        "n = 1\nd = 1\nm = 1\ncoeff 1 {\n 1\n}\ncoeff 0 {\n t1\n}\n";
    CHECK_THROWS_WITH(parse_family(doc), Catch::Matchers::ContainsSubstring("order"));
  }
}

TEST_CASE("expression grammar", "[family]") {
  auto eval1 = [](const char* text, double t) {
    PolyExpr e = parse_expression(text, 1);
    return e.eval({t});
  };
  CHECK(std::abs(eval1("2 + 3*t1", 2.0) - cplx(8.0)) < 1e-15);
  CHECK(std::abs(eval1("(1 + t1)^3", 1.0) - cplx(8.0)) < 1e-15);
  CHECK(std::abs(eval1("2i", 0.0) - cplx(0.0, 2.0)) < 1e-15);
  CHECK(std::abs(eval1("1+2i", 0.0) - cplx(1.0, 2.0)) < 1e-15);
  CHECK(std::abs(eval1("-t1^2", 3.0) - cplx(-9.0)) < 1e-15);
  CHECK(std::abs(eval1("i*i", 0.0) - cplx(-1.0)) < 1e-15);
  CHECK(std::abs(eval1(" 1.5e-1 * t1 ", 2.0) - cplx(0.3)) < 1e-15);
  CHECK_THROWS_AS(parse_expression("t1^-2", 1), Error);
  CHECK_THROWS_AS(parse_expression("t1 t1", 1), Error);
}

TEST_CASE("evaluate_coeffs substitutes parameters", "[family]") {
  Family f = parse_family(kLinear);
  MatrixPolynomial p = evaluate_coeffs(f, ParamPoint({2.0}));
  CHECK(std::abs(p.coeffs[0](0, 0) - cplx(2.0)) < 1e-15);
  CHECK(std::abs(p.coeffs[1](0, 0) - cplx(1.0)) < 1e-15);

  const char* doc =
      "n = 2\nd = 1\nm = 2\ncoeff 0 {\n  t1*t2, 0\n  0, 1\n}\ncoeff 1 {\n  1, 0\n  0, 1\n}\n";
  Family g = parse_family(doc);
  MatrixPolynomial q = evaluate_coeffs(g, ParamPoint({3.0, 4.0}));
  CHECK(std::abs(q.coeffs[0](0, 0) - cplx(12.0)) < 1e-15);
  CHECK(std::abs(q.coeffs[0](1, 1) - cplx(1.0)) < 1e-15);
}

TEST_CASE("evaluate_coeffs is deterministic bit-for-bit", "[family]") {
  Stream s(53, "family-determinism");
  Family f = oracles::random_monic_family(s, 3, 2, 3);
  ParamPoint u = oracles::random_point(s, 3);
  MatrixPolynomial a = evaluate_coeffs(f, u);
  MatrixPolynomial b = evaluate_coeffs(f, u);
  for (int k = 0; k <= f.d; ++k)
    for (int i = 0; i < f.n; ++i)
      for (int j = 0; j < f.n; ++j) {
        CHECK(a.coeffs[k](i, j).real() == b.coeffs[k](i, j).real());
        CHECK(a.coeffs[k](i, j).imag() == b.coeffs[k](i, j).imag());
      }
}

TEST_CASE("monic families evaluate to an exact identity leading coefficient", "[family]") {
  Stream s(59, "family-monic");
  Family f = oracles::random_monic_family(s, 3, 2, 2);
  MatrixPolynomial p = evaluate_coeffs(f, oracles::random_point(s, 2));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(p.coeffs[2](i, j) == cplx(i == j ? 1.0 : 0.0));
}

TEST_CASE("non-monic singular leading coefficient is flagged", "[family]") {
  const char* doc =
      "n = 1\nd = 1\nm = 1\ncoeff 0 {\n  1\n}\ncoeff 1 {\n  t1\n}\n";
  Family f = parse_family(doc);
  CHECK_FALSE(f.monic_flag);
  MatrixPolynomial p = evaluate_coeffs(f, ParamPoint({0.0}));
  CHECK(p.leading_singular);
  MatrixPolynomial q = evaluate_coeffs(f, ParamPoint({1.0}));
  CHECK_FALSE(q.leading_singular);
}

TEST_CASE("evaluate_at matches naive monomial summation", "[family]") {
  ComplexMatrix eye2 = ComplexMatrix::identity(2);
  MatrixPolynomial sq{2, 2, {ComplexMatrix(2, 2), ComplexMatrix(2, 2), eye2}};
  ComplexMatrix at3 = sq.evaluate_at(3.0);
  CHECK(std::abs(at3(0, 0) - cplx(9.0)) < 1e-14);
  CHECK(std::abs(at3(1, 1) - cplx(9.0)) < 1e-14);
  CHECK(std::abs(at3(0, 1)) < 1e-14);

  Stream s(61, "family-horner");
  for (int trial = 0; trial < 10; ++trial) {
    MatrixPolynomial p;
    p.n = 3;
    p.d = 2;
    for (int k = 0; k <= 2; ++k) p.coeffs.push_back(oracles::random_matrix(s, 3, 3));
    cplx z{1.0, 1.0};
    ComplexMatrix expect = oracles::monomial_sum_eval(p, z);
    ComplexMatrix got = p.evaluate_at(z);
    CHECK((got - expect).frobenius_norm() <= 1e-12 * (1.0 + expect.frobenius_norm()));
  }
}

TEST_CASE("real/Hermitian detection", "[family]") {
  Family real_f = parse_family(kLinear);
  CHECK(detect_real_or_hermitian(real_f, ParamPoint({0.0}), 1.0).real);

  const char* herm =
      "n = 2\nd = 1\nm = 2\ncoeff 0 {\n  t1, i\n  -i, t2\n}\ncoeff 1 {\n  1, 0\n  0, 1\n}\n";
  auto det = detect_real_or_hermitian(parse_family(herm), ParamPoint({0.0, 0.0}), 1.0);
  CHECK_FALSE(det.real);
  CHECK(det.hermitian);

  const char* neither =
      "n = 1\nd = 1\nm = 1\ncoeff 0 {\n  i*t1\n}\ncoeff 1 {\n  1\n}\n";
  CHECK_FALSE(detect_real_or_hermitian(parse_family(neither), ParamPoint({0.5}), 0.5).either());
}

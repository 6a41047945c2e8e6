#include <catch_amalgamated.hpp>

#include "mpspec/matrix.hpp"
#include "oracles.hpp"

using namespace mpspec;

TEST_CASE("lu_det on fixed matrices", "[matrix]") {
  CHECK(std::abs(lu_det(ComplexMatrix::identity(3)) - cplx(1.0)) < 1e-15);

  ComplexMatrix d(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = 3.0;
  CHECK(std::abs(lu_det(d) - cplx(6.0)) < 1e-14);

  ComplexMatrix sing(2, 2);
  sing(0, 0) = 1.0;
  sing(0, 1) = 2.0;
  sing(1, 0) = 2.0;
  sing(1, 1) = 4.0;
  CHECK(std::abs(lu_det(sing)) < 1e-14);
}

TEST_CASE("lu_det matches cofactor expansion on random 4x4", "[matrix]") {
  Stream s(7, "lu-det-oracle");
  for (int trial = 0; trial < 25; ++trial) {
    ComplexMatrix a = oracles::random_matrix(s, 4, 4);
    cplx expect = oracles::cofactor_det(a);
    cplx got = lu_det(a);
    CHECK(std::abs(got - expect) <= 1e-10 * (1.0 + std::abs(expect)));
  }
}

TEST_CASE("lu_det is multiplicative", "[matrix]") {
  Stream s(11, "lu-det-product");
  for (int trial = 0; trial < 40; ++trial) {
    ComplexMatrix a = oracles::random_matrix(s, 4, 4);
    ComplexMatrix b = oracles::random_matrix(s, 4, 4);
    cplx lhs = lu_det(a * b);
    cplx rhs = lu_det(a) * lu_det(b);
    CHECK(std::abs(lhs - rhs) <= 1e-8 * (1.0 + std::abs(rhs)));
  }
}

TEST_CASE("lu_solve inverts well-conditioned systems", "[matrix]") {
  Stream s(13, "lu-solve");
  ComplexMatrix a = oracles::random_matrix(s, 5, 5);
  for (int i = 0; i < 5; ++i) a(i, i) += 4.0;  // keep it far from singular
  ComplexMatrix x = lu_solve(a, ComplexMatrix::identity(5));
  ComplexMatrix residual = a * x - ComplexMatrix::identity(5);
  CHECK(residual.frobenius_norm() < 1e-12);
}

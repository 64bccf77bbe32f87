#include <cmath>

#include "doctest.h"
#include "hcstar/algebra.hpp"
#include "hcstar/error.hpp"
#include "support.hpp"

using namespace hcstar;
using namespace testsupport;

TEST_SUITE("algebra") {
  TEST_CASE("nullspace of a rank-deficient matrix") {
    Mat a(3, 3);
    a << 1, 2, 3, 2, 4, 6, 1, 0, 1;
    const Mat n = linalg::nullspace(a, 1e-12);
    REQUIRE(n.cols() == 1);
    CHECK((a * n).norm() < 1e-12);
    CHECK(std::abs(n.col(0).norm() - 1.0) < 1e-12);
    // The kernel is spanned by (1, 1, -1) up to scale.
    Vec k(3);
    k << 1, 1, -1;
    CHECK(linalg::projection_residual(n, k) < 1e-12);
  }

  TEST_CASE("nullspace of a tall system matches the square one") {
    std::mt19937_64 rng(7);
    const Mat b = random_matrix(rng, 40, 3);
    Mat a(40, 5);
    a << b, b.col(0) + b.col(1), b.col(2) * Cx(0, 2);
    const Mat n = linalg::nullspace(a, 1e-10);
    CHECK(n.cols() == 2);
    CHECK((a * n).norm() < 1e-9);
  }

  TEST_CASE("vec and unvec are column major and inverse") {
    Mat m(2, 3);
    m << 1, 2, 3, 4, 5, 6;
    const Vec v = linalg::vec(m);
    CHECK(v(1) == Cx(4.0));
    CHECK(v(2) == Cx(2.0));
    CHECK(linalg::unvec(v, 2, 3) == m);
  }

  TEST_CASE("cstar norm is the largest singular value") {
    std::mt19937_64 rng(1);
    const auto m3 = FiniteStarAlgebra::full_matrix(3);
    for (int i = 0; i < 10; ++i) {
      const Mat x = random_matrix(rng, 3, 3);
      Eigen::JacobiSVD<Mat> svd(x);
      CHECK(std::abs(cstar_norm(m3, x) - svd.singularValues()(0)) < 1e-10);
    }
  }

  TEST_CASE("cstar identity holds for random matrices") {
    std::mt19937_64 rng(2);
    const auto m3 = FiniteStarAlgebra::full_matrix(3);
    for (int i = 0; i < 20; ++i) {
      const Mat x = random_matrix(rng, 3, 3);
      const double n = cstar_norm(m3, x);
      CHECK(std::abs(cstar_norm(m3, x.adjoint() * x) - n * n) < 1e-9 * (1 + n * n));
    }
  }

  TEST_CASE("factories produce the expected dimensions and units") {
    CHECK(FiniteStarAlgebra::full_matrix(3).dim() == 9);
    CHECK(FiniteStarAlgebra::diagonal(4).dim() == 4);
    CHECK(FiniteStarAlgebra::scalars(2).dim() == 1);
    const auto b = FiniteStarAlgebra::block_diagonal({1, 2});
    CHECK(b.dim() == 5);
    CHECK(b.ambient_dim() == 3);
    REQUIRE(b.unit());
    CHECK((*b.unit() - Mat::Identity(3, 3)).norm() < 1e-12);
  }

  TEST_CASE("unit is found when not declared") {
    // Corner algebra e_11 M_2 e_11 has unit e_11, not the identity.
    const FiniteStarAlgebra corner(2, {unit_matrix(2, 0, 0)});
    REQUIRE(corner.unit());
    CHECK((*corner.unit() - unit_matrix(2, 0, 0)).norm() < 1e-12);
  }

  TEST_CASE("non-closed spans are rejected") {
    // Upper triangular matrices are not closed under adjoint.
    CHECK_THROWS_AS(FiniteStarAlgebra(2, {unit_matrix(2, 0, 0), unit_matrix(2, 0, 1), unit_matrix(2, 1, 1)}), Error);
    // span{e_12, e_21} is *-closed but e_12 e_21 = e_11 falls outside.
    try {
      FiniteStarAlgebra(2, {unit_matrix(2, 0, 1), unit_matrix(2, 1, 0)});
      FAIL("expected InvalidAlgebra");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::InvalidAlgebra);
    }
  }

  TEST_CASE("linearly dependent bases are rejected") {
    try {
      FiniteStarAlgebra(2, {Mat::Identity(2, 2), Mat(2.0 * Mat::Identity(2, 2))});
      FAIL("expected InvalidAlgebra");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::InvalidAlgebra);
    }
  }

  TEST_CASE("coordinates round trip and left multiplication") {
    std::mt19937_64 rng(3);
    const auto m2 = FiniteStarAlgebra::full_matrix(2);
    const Mat x = random_matrix(rng, 2, 2), y = random_matrix(rng, 2, 2);
    CHECK((m2.element(m2.coordinates(x)) - x).norm() < 1e-12);
    const Vec xy = m2.left_multiplication(x) * m2.coordinates(y);
    CHECK((m2.element(xy) - x * y).norm() < 1e-12);
    CHECK_FALSE(FiniteStarAlgebra::diagonal(2).contains(unit_matrix(2, 0, 1)));
    CHECK_THROWS_AS(FiniteStarAlgebra::diagonal(2).require_member(unit_matrix(2, 0, 1)), Error);
  }

  TEST_CASE("generated algebra of a single Hermitian matrix is commutative") {
    const auto g = FiniteStarAlgebra::generated_by(3, {diag({1.0, 2.0, 2.0})});
    // Spectral projections: diag(1,0,0) and diag(0,1,1).
    CHECK(g.dim() == 2);
    CHECK(g.contains(diag({0.0, 1.0, 1.0})));
  }

  TEST_CASE("group algebra of Z_3 from structure constants") {
    std::vector<std::vector<std::vector<Cx>>> c(3, std::vector<std::vector<Cx>>(3, std::vector<Cx>(3, 0.0)));
    std::vector<std::vector<Cx>> star(3, std::vector<Cx>(3, 0.0));
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) c[a][b][(a + b) % 3] = 1.0;
      star[a][(3 - a) % 3] = 1.0;
    }
    const auto alg = FiniteStarAlgebra::from_structure_constants(c, star);
    CHECK(alg.dim() == 3);
    REQUIRE(alg.unit());
    CHECK((*alg.unit() - Mat::Identity(3, 3)).norm() < 1e-12);
    // Commutative: the commutant of the regular representation is itself.
    CHECK(commutant(3, alg.basis()).same_as(alg.span()));
  }

  TEST_CASE("structure constants with a wrong involution are rejected") {
    std::vector<std::vector<std::vector<Cx>>> c(3, std::vector<std::vector<Cx>>(3, std::vector<Cx>(3, 0.0)));
    std::vector<std::vector<Cx>> star(3, std::vector<Cx>(3, 0.0));
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) c[a][b][(a + b) % 3] = 1.0;
      star[a][a] = 1.0;  // g^* = g is not the group inverse for order 3
    }
    CHECK_THROWS_AS(FiniteStarAlgebra::from_structure_constants(c, star), Error);
  }

  TEST_CASE("commutant and bicommutant") {
    const auto m2 = FiniteStarAlgebra::full_matrix(2);
    const Subspace c = commutant(2, m2.basis());
    CHECK(c.dim() == 1);
    CHECK(c.contains(Mat::Identity(2, 2)));
    const Subspace cd = commutant(3, FiniteStarAlgebra::diagonal(3).basis());
    CHECK(cd.same_as(FiniteStarAlgebra::diagonal(3).span()));
    // M_2 (x) 1 inside M_4: commutant 1 (x) M_2, bicommutant M_2 (x) 1.
    std::vector<Mat> gens;
    for (const auto& b : m2.basis()) gens.push_back(linalg::kron(b, Mat::Identity(2, 2)));
    const Subspace cc = commutant(4, gens);
    CHECK(cc.dim() == 4);
    CHECK(cc.contains(linalg::kron(Mat::Identity(2, 2), unit_matrix(2, 0, 1))));
    CHECK(bicommutant(4, gens).same_as(Subspace::spanned_by(4, 4, gens)));
  }

  TEST_CASE("bicommutant contains the generating set (property)") {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 5; ++trial) {
      const Mat h = random_matrix(rng, 3, 3);
      const std::vector<Mat> gens = {h + h.adjoint()};
      const Subspace bc = bicommutant(3, gens);
      CHECK(bc.contains(gens[0], 1e-8));
    }
  }

  TEST_CASE("state validation") {
    CHECK_NOTHROW(State(diag({0.25, 0.75})));
    for (const Mat& bad : {Mat(diag({0.5, 0.4})), Mat(diag({1.5, -0.5})), Mat(unit_matrix(2, 0, 1))}) {
      try {
        State s(bad);
        FAIL("expected InvalidState");
      } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InvalidState);
      }
    }
    const State t = State::tracial(2);
    CHECK(std::abs(t(unit_matrix(2, 0, 0)) - Cx(0.5)) < 1e-15);
  }

  TEST_CASE("positivity") {
    const auto m2 = FiniteStarAlgebra::full_matrix(2);
    CHECK(is_positive(m2, diag({1.0, 0.0})));
    CHECK_FALSE(is_positive(m2, diag({1.0, -0.5})));
    CHECK_FALSE(is_positive(m2, unit_matrix(2, 0, 1)));
  }
}

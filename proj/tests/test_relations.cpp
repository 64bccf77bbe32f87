#include <random>

#include "doctest.h"
#include "hcstar/error.hpp"
#include "hcstar/relations.hpp"
#include "support.hpp"

using namespace hcstar;
using namespace testsupport;

namespace {

AlgebraPtr share(FiniteStarAlgebra a) { return std::make_shared<const FiniteStarAlgebra>(std::move(a)); }

AlgebraMap identity_map(const AlgebraPtr& a) {
  return AlgebraMap::from_function(a, a, [](const Mat& x) { return x; });
}

ConditionalExpectation diagonal_expectation(const AlgebraPtr& m2, const AlgebraPtr& d2) {
  return {AlgebraMap::from_function(m2, d2, [](const Mat& a) { return Mat(a.diagonal().asDiagonal()); }),
          AlgebraMap::from_function(d2, m2, [](const Mat& a) { return a; })};
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::UnknownCommand;
}

}  // namespace

TEST_SUITE("relations") {
  TEST_CASE("star homomorphisms") {
    const auto m2 = share(FiniteStarAlgebra::full_matrix(2));
    CHECK(check_star_homomorphism(identity_map(m2)).passed());
    Mat u(2, 2);
    u << 1, Cx(0, 1), Cx(0, 1), 1;
    u /= std::sqrt(2.0);
    const auto ad = AlgebraMap::from_function(m2, m2, [&](const Mat& a) { return Mat(u * a * u.adjoint()); });
    CHECK(check_star_homomorphism(ad).passed());
    const auto transpose = AlgebraMap::from_function(m2, m2, [](const Mat& a) { return Mat(a.transpose()); });
    const auto rep = check_star_homomorphism(transpose);
    CHECK(rep.has_violation("multiplicative"));
    CHECK_FALSE(rep.has_violation("star_preserving"));
  }

  TEST_CASE("right multiplication matrix") {
    std::mt19937_64 rng(31);
    const auto m2 = FiniteStarAlgebra::full_matrix(2);
    const Mat x = random_matrix(rng, 2, 2), y = random_matrix(rng, 2, 2);
    CHECK((m2.element(right_multiplication(m2, x) * m2.coordinates(y)) - y * x).norm() < 1e-12);
  }

  TEST_CASE("twisted bimodules") {
    const auto m2 = share(FiniteStarAlgebra::full_matrix(2));
    const auto standard = twisted_bimodule(identity_map(m2), TwistSide::Left);
    CHECK(standard.carrier_dim == 4);
    CHECK(standard.gram.has_value());
    CHECK(check_bimodule(standard).passed());
    const auto right = twisted_bimodule(identity_map(m2), TwistSide::Right);
    CHECK_FALSE(right.gram.has_value());
    CHECK(check_bimodule(right).passed());

    Mat u(2, 2);
    u << 0, 1, 1, 0;
    const auto ad = AlgebraMap::from_function(m2, m2, [&](const Mat& a) { return Mat(u * a * u.adjoint()); });
    const auto tw = twisted_bimodule(ad, TwistSide::Left);
    CHECK(check_bimodule(tw).passed());
    // a . x = u a u^* x
    const Mat a = unit_matrix(2, 0, 1);
    const Vec x = linalg::vec(unit_matrix(2, 1, 1));
    CHECK((tw.left_of(a) * x - linalg::vec(u * a * u.adjoint() * unit_matrix(2, 1, 1))).norm() < 1e-12);
    // Bimodule A_phi is isomorphic to A exactly when phi is inner; Ad_u is.
    CHECK(find_isomorphism(tw, standard).has_value());
  }

  TEST_CASE("twisting by a non-homomorphism names the witness") {
    const auto m2 = share(FiniteStarAlgebra::full_matrix(2));
    const auto d2 = share(FiniteStarAlgebra::diagonal(2));
    const auto diag_part = AlgebraMap::from_function(m2, d2, [](const Mat& a) { return Mat(a.diagonal().asDiagonal()); });
    try {
      twisted_bimodule(diag_part, TwistSide::Left);
      FAIL("expected NotStarHomomorphism");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotStarHomomorphism);
      CHECK(std::string(e.what()).find("multiplicative") != std::string::npos);
    }
  }

  TEST_CASE("GNS bimodule") {
    const auto m2 = share(FiniteStarAlgebra::full_matrix(2));
    const auto g = gns_bimodule(m2, State(diag({1.0 / 3, 2.0 / 3})));
    CHECK(g.carrier_dim == 4);
    CHECK(check_bimodule(g).passed());
    const auto pure = gns_bimodule(m2, State(diag({1.0, 0.0})));
    CHECK(pure.carrier_dim == 2);
    CHECK(check_bimodule(pure).passed());
  }

  TEST_CASE("conditional expectations") {
    const auto m2 = share(FiniteStarAlgebra::full_matrix(2));
    const auto d2 = share(FiniteStarAlgebra::diagonal(2));
    const auto e = diagonal_expectation(m2, d2);
    CHECK_NOTHROW(verify_conditional_expectation(e));
    const auto ce = ce_bimodule(e);
    CHECK(ce.carrier_dim == 4);
    CHECK(check_bimodule(ce).passed());
    // <x, y> = Phi(x^* y) on the carrier basis.
    REQUIRE(ce.gram);

    ConditionalExpectation doubled = e;
    doubled.expectation.matrix *= 2.0;
    CHECK(kind_of([&] { verify_conditional_expectation(doubled); }) == ErrorKind::NotConditionalExpectation);

    // A -> C via the pure state: the form has a null space of dimension 2.
    const auto c1 = share(FiniteStarAlgebra::scalars(1));
    const Mat rho = diag({1.0, 0.0});
    const ConditionalExpectation pure{
        AlgebraMap::from_function(m2, c1, [&](const Mat& a) { return Mat::Constant(1, 1, (rho * a).trace()); }),
        AlgebraMap::from_function(c1, m2, [](const Mat& a) { return Mat(a(0, 0) * Mat::Identity(2, 2)); })};
    CHECK_NOTHROW(verify_conditional_expectation(pure));
    const auto q = ce_bimodule(pure);
    CHECK(q.carrier_dim == 2);
    CHECK(check_bimodule(q).passed());
  }

  TEST_CASE("composition of bimodules") {
    const auto m2 = share(FiniteStarAlgebra::full_matrix(2));
    const auto standard = twisted_bimodule(identity_map(m2), TwistSide::Left);
    const auto sq = compose_bimodules(standard, standard);
    CHECK(sq.carrier_dim == 4);
    CHECK(check_bimodule(sq).passed());
    const auto iso = find_isomorphism(sq, standard);
    REQUIRE(iso);
    const Intertwiner t{std::make_shared<const Bimodule>(sq), std::make_shared<const Bimodule>(standard), *iso};
    CHECK(check_intertwiner(t).passed());
    CHECK(Eigen::FullPivLU<Mat>(*iso).rank() == 4);

    // A (x)_A H_omega = H_omega.
    const auto g = gns_bimodule(m2, State(diag({1.0 / 3, 2.0 / 3})));
    const auto sg = compose_bimodules(standard, g);
    CHECK(sg.carrier_dim == g.carrier_dim);
    CHECK(find_isomorphism(sg, g).has_value());

    CHECK(kind_of([&] { compose_bimodules(g, standard); }) == ErrorKind::AlgebraMismatch);
  }

  TEST_CASE("composition over a smaller algebra") {
    // M_2 (x)_{D_2} M_2 has dimension 16 / 2 = 8.
    const auto m2 = share(FiniteStarAlgebra::full_matrix(2));
    const auto d2 = share(FiniteStarAlgebra::diagonal(2));
    const auto ce = ce_bimodule(diagonal_expectation(m2, d2));
    const auto incl = AlgebraMap::from_function(d2, m2, [](const Mat& a) { return a; });
    const auto back = twisted_bimodule(incl, TwistSide::Left);
    const auto prod = compose_bimodules(ce, back);
    CHECK(prod.carrier_dim == 8);
    CHECK(check_bimodule(prod).passed());
  }

  TEST_CASE("self-intertwiners of the standard bimodule form the center") {
    // Center dimension = number of simple summands.
    const std::vector<std::pair<AlgebraPtr, std::size_t>> cases = {
        {share(FiniteStarAlgebra::full_matrix(2)), 1},
        {share(FiniteStarAlgebra::diagonal(3)), 3},
        {share(FiniteStarAlgebra::block_diagonal({1, 2})), 2}};
    for (const auto& [alg, center] : cases) {
      const auto b = twisted_bimodule(identity_map(alg), TwistSide::Left);
      CHECK(intertwiner_space(b, b).size() == center);
    }
  }

  TEST_CASE("intertwiner check passes exactly on the solved space (property)") {
    std::mt19937_64 rng(32);
    const auto m2 = share(FiniteStarAlgebra::full_matrix(2));
    const auto d2 = share(FiniteStarAlgebra::diagonal(2));
    const auto src = std::make_shared<const Bimodule>(ce_bimodule(diagonal_expectation(m2, d2)));
    const auto tgt = src;
    const auto basis = intertwiner_space(*src, *tgt);
    REQUIRE_FALSE(basis.empty());
    for (int t = 0; t < 10; ++t) {
      Mat inside = Mat::Zero(4, 4);
      for (const auto& m : basis) inside += Cx(random_vector(rng, 1)(0)) * m;
      CHECK(check_intertwiner({src, tgt, inside}).passed());
      const Mat outside = random_matrix(rng, 4, 4);
      CHECK_FALSE(check_intertwiner({src, tgt, outside}).passed());
    }
    CHECK(kind_of([&] { check_intertwiner({src, tgt, Mat::Zero(3, 4)}); }) == ErrorKind::DimensionMismatch);
  }

  TEST_CASE("no isomorphism between bimodules of different dimension") {
    const auto m2 = share(FiniteStarAlgebra::full_matrix(2));
    const auto standard = twisted_bimodule(identity_map(m2), TwistSide::Left);
    const auto g = gns_bimodule(m2, State(diag({1.0, 0.0})));
    const auto sg = compose_bimodules(standard, g);
    CHECK_FALSE(find_isomorphism(sg, standard).has_value());
  }

  TEST_CASE("bimodule json") {
    const auto m2 = share(FiniteStarAlgebra::full_matrix(2));
    const Json j = bimodule_to_json(twisted_bimodule(identity_map(m2), TwistSide::Left));
    CHECK(j.at("carrier_dim") == 4);
    CHECK(j.at("has_inner_product") == true);
    CHECK(j.at("left_action").size() == 4);
  }
}

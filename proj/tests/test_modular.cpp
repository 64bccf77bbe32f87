#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "hcstar/error.hpp"
#include "hcstar/modular.hpp"
#include "support.hpp"

using namespace hcstar;
using namespace testsupport;

namespace {

// rho^{it} x rho^{-it} for a positive definite density.
Mat conjugate_by_power(const Mat& rho, const Mat& x, Cx z) {
  Eigen::SelfAdjointEigenSolver<Mat> es(rho);
  Vec p(rho.rows()), m(rho.rows());
  for (Eigen::Index k = 0; k < rho.rows(); ++k) {
    p(k) = std::exp(Cx(0, 1) * z * std::log(es.eigenvalues()(k)));
    m(k) = 1.0 / p(k);
  }
  const Mat& v = es.eigenvectors();
  return v * p.asDiagonal() * v.adjoint() * x * v * m.asDiagonal() * v.adjoint();
}

std::vector<double> ratio_spectrum(const std::vector<double>& lambda) {
  std::vector<double> r;
  for (double a : lambda)
    for (double b : lambda) r.push_back(a / b);
  std::sort(r.rbegin(), r.rend());
  return r;
}

}  // namespace

TEST_SUITE("modular") {
  TEST_CASE("GNS of the trace on C^2") {
    const auto d2 = FiniteStarAlgebra::diagonal(2);
    const auto g = gns(d2, State(diag({0.5, 0.5})));
    CHECK(g.space_dim() == 2);
    CHECK(g.null_space_dim() == 0);
    REQUIRE(g.cyclic_vector.size() == 2);
    for (Eigen::Index k = 0; k < 2; ++k) CHECK(std::abs(std::abs(g.cyclic_vector(k)) - std::sqrt(0.5)) < 1e-12);
    CHECK(is_separating(g));
  }

  TEST_CASE("GNS reproduces the state and is a representation") {
    std::mt19937_64 rng(21);
    const auto m3 = FiniteStarAlgebra::full_matrix(3);
    const Mat rho = random_density(rng, 3);
    const State omega(rho);
    const auto g = gns(m3, omega);
    CHECK(g.space_dim() == 9);
    for (int t = 0; t < 5; ++t) {
      const Mat a = random_matrix(rng, 3, 3), b = random_matrix(rng, 3, 3);
      CHECK(std::abs(g.expectation(a) - omega(a)) < 1e-10);
      CHECK((g.represent(a * b) - g.represent(a) * g.represent(b)).norm() < 1e-9);
      CHECK((g.represent(a.adjoint()) - g.represent(a).adjoint()).norm() < 1e-9);
    }
  }

  TEST_CASE("pure state: smaller GNS space and no modular tuple") {
    const auto m2 = FiniteStarAlgebra::full_matrix(2);
    const State pure(diag({1.0, 0.0}));
    const auto g = gns(m2, pure);
    CHECK(g.space_dim() == 2);
    CHECK(g.null_space_dim() == 2);
    CHECK_FALSE(is_separating(g));
    try {
      modular_tuple(m2, pure);
      FAIL("expected NotSeparating");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotSeparating);
    }
  }

  TEST_CASE("GNS rejects states that are not normalized on the algebra") {
    // The corner e_22 M_2 e_22 has unit e_22 and omega(e_22) = 2/3.
    const FiniteStarAlgebra corner(2, {unit_matrix(2, 1, 1)});
    try {
      gns(corner, State(diag({1.0 / 3, 2.0 / 3})));
      FAIL("expected InvalidState");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::InvalidState);
    }
  }

  TEST_CASE("Tomita-Takesaki for diag(1/3, 2/3)") {
    const auto m2 = FiniteStarAlgebra::full_matrix(2);
    const auto mt = modular_tuple(m2, State(diag({1.0 / 3, 2.0 / 3})));
    const RealVec ev = mt.delta_eigenvalues();
    REQUIRE(ev.size() == 4);
    const double expected[] = {2.0, 1.0, 1.0, 0.5};
    for (int k = 0; k < 4; ++k) CHECK(std::abs(ev(k) - expected[k]) < 1e-9);
    for (const auto& [key, r] : mt.residuals) {
      INFO(key);
      CHECK(r < 1e-9);
    }
    const Eigen::Index n = mt.delta.rows();
    CHECK((mt.j.then_linear(mt.j) - Mat::Identity(n, n)).norm() < 1e-9);
    CHECK((mt.j.sandwich(mt.delta) - mt.delta.inverse()).norm() < 1e-9);
    CHECK((mt.j.apply(mt.gns.cyclic_vector) - mt.gns.cyclic_vector).norm() < 1e-9);
    CHECK((mt.delta * mt.gns.cyclic_vector - mt.gns.cyclic_vector).norm() < 1e-9);
    // S pi(a) xi = pi(a)^* xi, and S = J Delta^{1/2}.
    const Mat a = unit_matrix(2, 0, 1) + Cx(0, 2) * unit_matrix(2, 1, 1);
    const Vec lhs = mt.s.apply(mt.gns.represent(a) * mt.gns.cyclic_vector);
    CHECK((lhs - mt.gns.represent(a.adjoint()) * mt.gns.cyclic_vector).norm() < 1e-9);
    // J pi(x) J commutes with pi(y).
    const Mat jx = mt.j.sandwich(mt.gns.represent(unit_matrix(2, 0, 1)));
    for (const auto& b : m2.basis()) {
      const Mat py = mt.gns.represent(b);
      CHECK((jx * py - py * jx).norm() < 1e-9);
    }
  }

  TEST_CASE("modular spectrum is the ratio set of the density (property)") {
    std::mt19937_64 rng(22);
    for (int t = 0; t < 5; ++t) {
      const Mat rho = random_density(rng, 3);
      Eigen::SelfAdjointEigenSolver<Mat> es(rho);
      std::vector<double> lambda(es.eigenvalues().data(), es.eigenvalues().data() + 3);
      const auto expected = ratio_spectrum(lambda);
      const auto mt = modular_tuple(FiniteStarAlgebra::full_matrix(3), State(rho));
      const RealVec ev = mt.delta_eigenvalues();
      REQUIRE(ev.size() == 9);
      for (int k = 0; k < 9; ++k) CHECK(std::abs(ev(k) - expected[k]) < 1e-8 * expected[0]);
    }
  }

  TEST_CASE("modular flow is conjugation by rho^{it} and preserves the state") {
    std::mt19937_64 rng(23);
    const auto m3 = FiniteStarAlgebra::full_matrix(3);
    const Mat rho = random_density(rng, 3);
    const auto mt = modular_tuple(m3, State(rho));
    const Mat a = random_matrix(rng, 3, 3);
    CHECK((modular_flow(mt, a, 0.0) - mt.gns.represent(a)).norm() < 1e-10);
    for (double t : {0.3, 1.0, -2.5}) {
      const Mat flowed = modular_flow(mt, a, t);
      CHECK((flowed - mt.gns.represent(conjugate_by_power(rho, a, t))).norm() < 1e-8);
      const Cx w = mt.gns.cyclic_vector.dot(flowed * mt.gns.cyclic_vector);
      CHECK(std::abs(w - State(rho)(a)) < 1e-9);
    }
  }

  TEST_CASE("flow of e_12 is a phase") {
    const auto mt = modular_tuple(FiniteStarAlgebra::full_matrix(2), State(diag({1.0 / 3, 2.0 / 3})));
    const double t = 0.7;
    const Cx phase = std::exp(Cx(0, 1) * t * std::log(0.5));
    const Mat e12 = unit_matrix(2, 0, 1);
    CHECK((modular_flow(mt, e12, t) - phase * mt.gns.represent(e12)).norm() < 1e-10);
  }

  TEST_CASE("KMS at beta = 1 for the modular flow") {
    std::mt19937_64 rng(24);
    for (int d : {2, 3}) {
      const auto mt = modular_tuple(FiniteStarAlgebra::full_matrix(d), State(random_density(rng, d)));
      const auto rep = kms_check(mt);
      CHECK(rep.passed());
      CHECK(rep.max_residual < 1e-8);
      CHECK(rep.statistics.at("pairs_checked") == static_cast<std::uint64_t>(d * d * d * d + 64));
    }
  }

  TEST_CASE("trivial flow is KMS only for the trace") {
    const auto m2 = FiniteStarAlgebra::full_matrix(2);
    const auto g = gns(m2, State(diag({1.0 / 3, 2.0 / 3})));
    const auto rep = kms_check(g, Mat::Identity(4, 4));
    CHECK_FALSE(rep.passed());
    REQUIRE_FALSE(rep.violations.empty());
    CHECK(rep.violations.front().witness.size() == 2);
    const auto tr = gns(m2, State::tracial(2));
    CHECK(kms_check(tr, Mat::Identity(4, 4)).passed());
  }

  TEST_CASE("centralizer") {
    const auto m2 = FiniteStarAlgebra::full_matrix(2);
    CHECK(centralizer(m2, State(diag({1.0 / 3, 2.0 / 3}))).same_as(FiniteStarAlgebra::diagonal(2).span()));
    CHECK(centralizer(m2, State::tracial(2)).dim() == 4);
    // Degenerate eigenvalue: M_2 (+) C inside M_3.
    const auto c = centralizer(FiniteStarAlgebra::full_matrix(3), State(diag({0.25, 0.25, 0.5})));
    CHECK(c.same_as(FiniteStarAlgebra::block_diagonal({2, 1}).span()));
  }

  TEST_CASE("centralizer equals the flow fixed points (property)") {
    const auto m2 = FiniteStarAlgebra::full_matrix(2);
    const State omega(diag({1.0 / 3, 2.0 / 3}));
    const auto mt = modular_tuple(m2, omega);
    const auto c = centralizer(m2, omega);
    for (double t : {0.5, 1.0, 2.0}) CHECK(flow_fixed_points(mt, m2, t).same_as(c));
  }

  TEST_CASE("A_omega") {
    const auto m2 = FiniteStarAlgebra::full_matrix(2);
    const auto d2 = FiniteStarAlgebra::diagonal(2);
    const State omega(diag({1.0 / 3, 2.0 / 3}));
    CHECK(a_omega(m2, m2, omega).same_as(m2.span()));
    CHECK(a_omega(m2, d2, omega).same_as(d2.span()));
    const FiniteStarAlgebra offdiag = FiniteStarAlgebra::generated_by(2, {Mat(unit_matrix(2, 0, 1) + unit_matrix(2, 1, 0))});
    try {
      a_omega(d2, offdiag, omega);
      FAIL("expected NotSubalgebra");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotSubalgebra);
    }
  }

  TEST_CASE("restriction to the support") {
    const auto m2 = FiniteStarAlgebra::full_matrix(2);
    const auto r = restrict_to_support(m2, State(diag({1.0, 0.0})));
    CHECK((r.support - unit_matrix(2, 0, 0)).norm() < 1e-12);
    CHECK(r.algebra.dim() == 1);
    CHECK(r.isometry.cols() == 1);
    CHECK_NOTHROW(modular_tuple(r.algebra, r.state));
    // On the diagonal subalgebra the state sees only the diagonal of rho.
    Mat rho(2, 2);
    rho << 0.5, 0.5, 0.5, 0.5;
    const auto rd = restrict_to_support(FiniteStarAlgebra::diagonal(2), State(rho));
    CHECK((rd.density - diag({0.5, 0.5})).norm() < 1e-12);
    CHECK((rd.support - Mat::Identity(2, 2)).norm() < 1e-12);
  }

  TEST_CASE("modular geometry net flags non-faithful entries") {
    const auto m2 = FiniteStarAlgebra::full_matrix(2);
    const auto net = modular_geometry_net(m2, State(diag({1.0, 0.0})),
                                          {{"M2", m2}, {"scalars", FiniteStarAlgebra::scalars(2)}});
    REQUIRE(net.size() == 2);
    CHECK(net[0].name == "M2");
    CHECK_FALSE(net[0].faithful);
    CHECK_FALSE(net[0].tuple);
    CHECK((net[0].support - unit_matrix(2, 0, 0)).norm() < 1e-12);
    CHECK(net[1].faithful);
    REQUIRE(net[1].kms);
    CHECK(net[1].kms->passed());

    const auto faithful = modular_geometry_net(m2, State(diag({1.0 / 3, 2.0 / 3})),
                                               {{"M2", m2}, {"D2", FiniteStarAlgebra::diagonal(2)}});
    for (const auto& e : faithful) {
      CHECK(e.faithful);
      REQUIRE(e.kms);
      CHECK(e.kms->passed());
      CHECK(e.a_omega_dim == e.algebra_dim);
    }
  }

  TEST_CASE("tuple json is stable") {
    const auto mt = modular_tuple(FiniteStarAlgebra::full_matrix(2), State(diag({1.0 / 3, 2.0 / 3})));
    const Json j = mt.to_json();
    CHECK(j.at("gns_dim") == 4);
    CHECK(j.at("delta_eigenvalues").size() == 4);
    CHECK(j.dump() == modular_tuple(FiniteStarAlgebra::full_matrix(2), State(diag({1.0 / 3, 2.0 / 3}))).to_json().dump());
  }
}

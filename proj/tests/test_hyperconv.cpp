#include <random>

#include "doctest.h"
#include "hcstar/error.hpp"
#include "hcstar/fixtures.hpp"
#include "hcstar/hyperconv.hpp"
#include "support.hpp"

using namespace hcstar;
using namespace testsupport;

namespace {

std::shared_ptr<const ConvolutionAlgebra> pair_algebra(int n, const FiniteStarAlgebra& coeffs) {
  auto pg = fixtures::pair_groupoid(n);
  return std::make_shared<const ConvolutionAlgebra>(std::make_shared<const GlobularCategory>(std::move(pg.category)),
                                                    std::move(pg.involutions),
                                                    std::make_shared<const FiniteStarAlgebra>(coeffs));
}

// Section of the pair groupoid with scalar coefficients read off a matrix.
HyperSection from_matrix(const std::shared_ptr<const ConvolutionAlgebra>& alg, const Mat& m) {
  HyperSection s(alg);
  const auto n = m.rows();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) s.add(static_cast<CellId>(i * n + j), Mat::Constant(1, 1, m(i, j)));
  return s;
}

Mat to_matrix(const HyperSection& s, int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = s.at(static_cast<CellId>(i * n + j))(0, 0);
  return m;
}

}  // namespace

TEST_SUITE("hyperconv") {
  TEST_CASE("pair groupoid convolution is matrix multiplication") {
    std::mt19937_64 rng(11);
    for (int n : {2, 3}) {
      const auto alg = pair_algebra(n, FiniteStarAlgebra::scalars(1));
      CHECK(alg->dim() == n * n);
      for (int trial = 0; trial < 10; ++trial) {
        const Mat a = random_matrix(rng, n, n), b = random_matrix(rng, n, n);
        const auto sa = from_matrix(alg, a), sb = from_matrix(alg, b);
        CHECK((to_matrix(hyper_convolve(sa, sb, 0), n) - a * b).norm() < 1e-12);
        CHECK((to_matrix(hyper_involute(sa, 0), n) - a.adjoint()).norm() < 1e-14);
        Eigen::JacobiSVD<Mat> svd(a);
        CHECK(std::abs(linalg::operator_norm(left_regular(sa, 0)) - svd.singularValues()(0)) < 1e-9);
      }
    }
  }

  TEST_CASE("matrix-valued coefficients give the block matrix product") {
    // M_N(M_d) with the pair groupoid is M_{Nd}: block (i,j) is sigma_(i,j).
    std::mt19937_64 rng(12);
    const int n = 2, d = 2;
    const auto alg = pair_algebra(n, FiniteStarAlgebra::full_matrix(d));
    CHECK(alg->carrier_dim() == 16);
    const Mat a = random_matrix(rng, n * d, n * d), b = random_matrix(rng, n * d, n * d);
    HyperSection sa(alg), sb(alg);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        sa.set(static_cast<CellId>(i * n + j), a.block(i * d, j * d, d, d));
        sb.set(static_cast<CellId>(i * n + j), b.block(i * d, j * d, d, d));
      }
    const auto c = hyper_convolve(sa, sb, 0);
    const Mat ab = a * b;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) CHECK((c.at(static_cast<CellId>(i * n + j)) - ab.block(i * d, j * d, d, d)).norm() < 1e-12);
    Eigen::JacobiSVD<Mat> svd(a);
    CHECK(std::abs(linalg::operator_norm(left_regular(sa, 0)) - svd.singularValues()(0)) < 1e-9);
  }

  TEST_CASE("unit section is the identity matrix") {
    std::mt19937_64 rng(13);
    const auto alg = pair_algebra(3, FiniteStarAlgebra::scalars(1));
    const auto e = HyperSection::unit(alg, 0);
    CHECK((to_matrix(e, 3) - Mat::Identity(3, 3)).norm() < 1e-15);
    const auto s = from_matrix(alg, random_matrix(rng, 3, 3));
    CHECK(hyper_convolve(e, s, 0).distance(s) < 1e-12);
    CHECK(hyper_convolve(s, e, 0).distance(s) < 1e-12);
  }

  TEST_CASE("vector round trip and membership") {
    std::mt19937_64 rng(14);
    const auto alg = pair_algebra(2, FiniteStarAlgebra::diagonal(2));
    HyperSection s(alg);
    s.set(1, diag({1.0, -2.0}));
    CHECK(HyperSection::from_vector(alg, s.to_vector()).distance(s) < 1e-15);
    try {
      s.set(0, unit_matrix(2, 0, 1));
      FAIL("expected NotInAlgebra");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotInAlgebra);
    }
    CHECK_THROWS_AS(HyperSection::from_vector(alg, Vec::Zero(3)), Error);
  }

  TEST_CASE("sections over different algebras cannot be combined") {
    const auto a1 = pair_algebra(2, FiniteStarAlgebra::scalars(1));
    const auto a2 = pair_algebra(2, FiniteStarAlgebra::scalars(1));
    const auto s1 = HyperSection::unit(a1, 0), s2 = HyperSection::unit(a2, 0);
    try {
      hyper_convolve(s1, s2, 0);
      FAIL("expected BaseMismatch");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::BaseMismatch);
    }
    CHECK_THROWS_AS(s1 + s2, Error);
  }

  TEST_CASE("levels without an involution") {
    const auto z2 = std::make_shared<const GlobularCategory>(fixtures::cyclic_two_category(2));
    const auto alg = std::make_shared<const ConvolutionAlgebra>(z2, InvolutionFamily{},
                                                                std::make_shared<const FiniteStarAlgebra>(FiniteStarAlgebra::scalars(1)));
    const auto s = HyperSection::unit(alg, 1);
    try {
      hyper_involute(s, 0);
      FAIL("expected MissingInvolution");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::MissingInvolution);
    }
    CHECK_FALSE(convolution_structure(alg, 0).involution);
    try {
      regular_representation(convolution_structure(alg, 0));
      FAIL("expected MissingInvolution");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::MissingInvolution);
    }
    // Z_2 group algebra is commutative and associative.
    const auto rr = regular_representation(convolution_structure(alg, 0), 1e-9, false);
    CHECK(rr.associativity_residual < 1e-12);
  }

  TEST_CASE("a non-associative base gives a non-associative convolution") {
    const auto base = std::make_shared<const GlobularCategory>(fixtures::broken_associativity_category());
    const auto alg = std::make_shared<const ConvolutionAlgebra>(base, InvolutionFamily{},
                                                                std::make_shared<const FiniteStarAlgebra>(FiniteStarAlgebra::scalars(1)));
    try {
      regular_representation(convolution_structure(alg, 0), 1e-9, false);
      FAIL("expected NonAssociative");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NonAssociative);
    }
    try {
      verify_hyper_cstar(alg);
      FAIL("expected InvalidBase");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::InvalidBase);
    }
  }

  TEST_CASE("verification passes on pair groupoids with matrix coefficients") {
    for (int n : {2, 3}) {
      const auto alg = pair_algebra(n, FiniteStarAlgebra::full_matrix(2));
      VerifyOptions opts;
      opts.samples = 16;
      const auto rep = verify_hyper_cstar(alg, opts);
      CHECK(rep.passed());
      REQUIRE(rep.find("cstar_identity", 0));
      CHECK(rep.find("cstar_identity", 0)->report.passed());
      CHECK(rep.find("cstar_identity", 1) == nullptr);
    }
  }

  TEST_CASE("verification is deterministic in the seed") {
    const auto alg = pair_algebra(2, FiniteStarAlgebra::full_matrix(2));
    VerifyOptions opts;
    opts.samples = 8;
    opts.seed = 42;
    CHECK(verify_hyper_cstar(alg, opts).to_json() == verify_hyper_cstar(alg, opts).to_json());
  }

  TEST_CASE("hypermatrix modes pass the battery") {
    VerifyOptions opts;
    opts.samples = 16;
    for (std::uint32_t m = 0; m < 4; ++m) {
      const auto rep = verify_hypermatrix_mode({2, 2}, Mode{m}, opts);
      CHECK(rep.passed());
      REQUIRE(rep.find("mode_product", 0));
      CHECK(rep.find("mode_product", 0)->report.statistics.at("samples") == 16);
    }
  }

  TEST_CASE("regular representation of the hypermatrix algebra matches the kernel") {
    std::mt19937_64 rng(15);
    const std::vector<int> sizes{2, 2};
    for (std::uint32_t m = 0; m < 4; ++m) {
      const auto s = hypermatrix_structure(sizes, Mode{m}, Mode{m});
      const Vec a = random_vector(rng, 16), b = random_vector(rng, 16);
      const Vec direct = hypermatrix_product(Hypermatrix(sizes, a), Hypermatrix(sizes, b), Mode{m}).entries();
      CHECK((s.product(a, b) - direct).norm() < 1e-12);
    }
  }
}

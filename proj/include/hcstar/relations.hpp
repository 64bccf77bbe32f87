#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "hcstar/algebra.hpp"
#include "hcstar/modular.hpp"
#include "hcstar/report.hpp"

namespace hcstar {

using AlgebraPtr = std::shared_ptr<const FiniteStarAlgebra>;

/// Linear map between algebras, as a matrix on basis coordinates
/// (target.dim x source.dim).
struct AlgebraMap {
  AlgebraPtr source;
  AlgebraPtr target;
  Mat matrix;

  /// Coordinates of f(b_i) in column i; each image must lie in the target.
  template <typename F>
  static AlgebraMap from_function(AlgebraPtr source, AlgebraPtr target, F&& f) {
    Mat m(target->dim(), source->dim());
    for (Eigen::Index i = 0; i < source->dim(); ++i) {
      const Mat image = f(source->basis()[i]);
      target->require_member(image);
      m.col(i) = target->coordinates(image);
    }
    return {std::move(source), std::move(target), std::move(m)};
  }

  Mat operator()(const Mat& a) const { return target->element(matrix * source->coordinates(a)); }
};

/// Residuals of multiplicativity and *-preservation on basis pairs; the
/// witnesses are basis indices (i, j) resp. (i).
CheckReport check_star_homomorphism(const AlgebraMap& phi, double tol = default_tolerance());

/// Matrix of y -> y x in basis coordinates.
Mat right_multiplication(const FiniteStarAlgebra& alg, const Mat& x);

/// Left A-action and right B-action on C^n. right_action[k] is R(b_k) with
/// x . b_k = R(b_k) x, so R is anti-multiplicative. The optional B-valued
/// inner product is stored on carrier basis vectors: gram[i * n + j] =
/// <e_i, e_j>.
struct Bimodule {
  AlgebraPtr left;
  AlgebraPtr right;
  Eigen::Index carrier_dim = 0;
  std::vector<Mat> left_action;
  std::vector<Mat> right_action;
  std::optional<std::vector<Mat>> gram;

  Mat left_of(const Mat& a) const;
  Mat right_of(const Mat& b) const;
  /// Requires the inner product.
  Mat inner(const Vec& x, const Vec& y) const;
};

CheckReport check_bimodule(const Bimodule& m, double tol = default_tolerance());

enum class TwistSide { Left, Right };

/// side = Left: _phi B, a . x = phi(a) x, x . b = x b, <x, y> = x^* y.
/// side = Right: B_phi, b . x = b x, x . a = x phi(a), no inner product.
/// Throws NotStarHomomorphism.
Bimodule twisted_bimodule(const AlgebraMap& phi, TwistSide side, double tol = default_tolerance());

/// A-C bimodule H_omega with left action pi_omega and C-valued inner product.
Bimodule gns_bimodule(AlgebraPtr alg, const State& omega, double tol = default_tolerance());

struct ConditionalExpectation {
  AlgebraMap expectation;  // A -> B
  AlgebraMap inclusion;    // B -> A
};

/// Verifies the expectation (idempotent onto B, B-bilinear, positive) and
/// throws NotConditionalExpectation naming the failed condition.
void verify_conditional_expectation(const ConditionalExpectation& e, double tol = default_tolerance());

/// A quotiented by the null space of <a1, a2> = Phi(a1^* a2), with left
/// A-multiplication, right B-multiplication and the B-valued form.
Bimodule ce_bimodule(const ConditionalExpectation& e, double tol = default_tolerance());

/// Balanced tensor product over the middle algebra, realised on the
/// orthogonal complement of the balancing relations. Throws AlgebraMismatch.
Bimodule compose_bimodules(const Bimodule& m, const Bimodule& n, double tol = default_tolerance());

struct Intertwiner {
  std::shared_ptr<const Bimodule> source;
  std::shared_ptr<const Bimodule> target;
  Mat map;  // target.carrier_dim x source.carrier_dim
};

CheckReport check_intertwiner(const Intertwiner& t, double tol = default_tolerance());

/// Basis of all intertwiners source -> target, by a nullspace solve.
std::vector<Mat> intertwiner_space(const Bimodule& source, const Bimodule& target,
                                   double tol = default_tolerance());

/// An invertible intertwiner, if the space contains one. A seeded random
/// combination of the basis is invertible with probability one when any is.
std::optional<Mat> find_isomorphism(const Bimodule& source, const Bimodule& target, std::uint64_t seed = 0,
                                    double tol = default_tolerance());

Json bimodule_to_json(const Bimodule& m);

}  // namespace hcstar

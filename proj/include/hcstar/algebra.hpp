#pragma once

#include <optional>
#include <vector>

#include "hcstar/config.hpp"
#include "hcstar/linalg.hpp"

namespace hcstar {

/// A linear subspace of rows x cols complex matrices, stored as orthonormal
/// vectorized columns (Hilbert-Schmidt inner product). Vectors are the
/// cols == 1 case.
class Subspace {
 public:
  Subspace(Eigen::Index rows, Eigen::Index cols, Mat orthonormal_columns);

  static Subspace spanned_by(Eigen::Index rows, Eigen::Index cols,
                             const std::vector<Mat>& elements,
                             double tol = default_tolerance());
  static Subspace zero(Eigen::Index rows, Eigen::Index cols);
  static Subspace full(Eigen::Index rows, Eigen::Index cols);

  Eigen::Index rows() const { return rows_; }
  Eigen::Index cols() const { return cols_; }
  Eigen::Index dim() const { return q_.cols(); }

  const Mat& columns() const { return q_; }
  std::vector<Mat> basis() const;

  Mat project(const Mat& x) const;
  /// ||x - P x|| / max(1, ||x||).
  double residual(const Mat& x) const;
  bool contains(const Mat& x, double tol = default_tolerance()) const;
  bool contains(const Subspace& other, double tol = default_tolerance()) const;
  /// Mutual containment.
  bool same_as(const Subspace& other, double tol = default_tolerance()) const;

 private:
  Eigen::Index rows_;
  Eigen::Index cols_;
  Mat q_;
};

/// Finite-dimensional *-algebra given by a faithful representation on C^d:
/// a linearly independent list of d x d matrices whose span is closed under
/// products and adjoints. The unit is optional; when not supplied it is
/// searched for inside the span.
class FiniteStarAlgebra {
 public:
  FiniteStarAlgebra(Eigen::Index ambient_dim, std::vector<Mat> basis,
                    std::optional<Mat> unit = std::nullopt,
                    double tol = default_tolerance());

  static FiniteStarAlgebra full_matrix(Eigen::Index d);
  static FiniteStarAlgebra diagonal(Eigen::Index d);
  /// C * identity inside M_d.
  static FiniteStarAlgebra scalars(Eigen::Index d = 1);
  static FiniteStarAlgebra block_diagonal(const std::vector<Eigen::Index>& sizes);
  /// Smallest *-closed subalgebra of M_d containing `generators` (no unit is
  /// added).
  static FiniteStarAlgebra generated_by(Eigen::Index d, const std::vector<Mat>& generators,
                                        double tol = default_tolerance());
  /// Converts structure constants b_i b_j = sum_k c[i][j][k] b_k together with
  /// the involution b_i^* = sum_k s[i][k] b_k into the left-regular
  /// representation on the algebra itself, with the inner product that makes
  /// the basis orthonormal. Fails with InvalidAlgebra when that is not a
  /// *-representation.
  static FiniteStarAlgebra from_structure_constants(
      const std::vector<std::vector<std::vector<Cx>>>& c, const std::vector<std::vector<Cx>>& star,
      double tol = default_tolerance());

  Eigen::Index ambient_dim() const { return ambient_dim_; }
  Eigen::Index dim() const { return static_cast<Eigen::Index>(basis_.size()); }
  const std::vector<Mat>& basis() const { return basis_; }
  const std::optional<Mat>& unit() const { return unit_; }
  bool is_unital() const { return unit_.has_value(); }
  const Subspace& span() const { return span_; }

  double membership_residual(const Mat& x) const { return span_.residual(x); }
  bool contains(const Mat& x, double tol = default_tolerance()) const;
  /// Throws NotInAlgebra when the residual exceeds tol.
  void require_member(const Mat& x, double tol = default_tolerance()) const;

  /// Coefficients of x in the basis (least squares).
  Vec coordinates(const Mat& x) const;
  Mat element(const Vec& coords) const;

  /// Matrix of y -> x y in basis coordinates (dim x dim).
  Mat left_multiplication(const Mat& x) const;

  /// The algebra itself when unital; otherwise span(basis, I_d). The flag
  /// reports whether a unit was adjoined.
  FiniteStarAlgebra unitization(bool* adjoined = nullptr) const;

 private:
  Eigen::Index ambient_dim_;
  std::vector<Mat> basis_;
  std::optional<Mat> unit_;
  Subspace span_;
  Mat coord_solver_;  // pseudo-inverse of the vectorized basis
};

/// State omega(a) = trace(density a).
class State {
 public:
  explicit State(Mat density, double tol = default_tolerance());
  static State tracial(Eigen::Index d);

  const Mat& density() const { return density_; }
  Eigen::Index ambient_dim() const { return density_.rows(); }
  Cx operator()(const Mat& x) const { return (density_ * x).trace(); }

 private:
  Mat density_;
};

double cstar_norm(const FiniteStarAlgebra& alg, const Mat& x, double tol = default_tolerance());
bool is_positive(const FiniteStarAlgebra& alg, const Mat& x, double tol = default_tolerance());
/// Positivity of a single matrix: Hermitian and spectrum >= -tol.
bool is_positive_matrix(const Mat& x, double tol = default_tolerance());

Subspace commutant(Eigen::Index ambient_dim, const std::vector<Mat>& generators,
                   double tol = default_tolerance());
Subspace bicommutant(Eigen::Index ambient_dim, const std::vector<Mat>& generators,
                     double tol = default_tolerance());

Cx state_eval(const FiniteStarAlgebra& alg, const State& omega, const Mat& x,
              double tol = default_tolerance());

}  // namespace hcstar

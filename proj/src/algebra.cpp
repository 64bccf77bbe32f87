#include "hcstar/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hcstar/error.hpp"

namespace hcstar {

using linalg::unvec;
using linalg::vec;

// ---------------------------------------------------------------- Subspace

Subspace::Subspace(Eigen::Index rows, Eigen::Index cols, Mat orthonormal_columns)
    : rows_(rows), cols_(cols), q_(std::move(orthonormal_columns)) {
  if (q_.cols() == 0) q_.resize(rows_ * cols_, 0);
  if (q_.rows() != rows_ * cols_)
    throw Error(ErrorKind::DimensionMismatch, "subspace columns have wrong length");
}

Subspace Subspace::spanned_by(Eigen::Index rows, Eigen::Index cols,
                              const std::vector<Mat>& elements, double tol) {
  Mat stacked(rows * cols, static_cast<Eigen::Index>(elements.size()));
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (elements[i].rows() != rows || elements[i].cols() != cols)
      throw Error(ErrorKind::DimensionMismatch, "subspace element has wrong shape");
    stacked.col(static_cast<Eigen::Index>(i)) = vec(elements[i]);
  }
  return Subspace(rows, cols, linalg::orthonormal_span(stacked, tol));
}

Subspace Subspace::zero(Eigen::Index rows, Eigen::Index cols) {
  return Subspace(rows, cols, Mat(rows * cols, 0));
}

Subspace Subspace::full(Eigen::Index rows, Eigen::Index cols) {
  return Subspace(rows, cols, Mat::Identity(rows * cols, rows * cols));
}

std::vector<Mat> Subspace::basis() const {
  std::vector<Mat> out;
  out.reserve(static_cast<std::size_t>(q_.cols()));
  for (Eigen::Index k = 0; k < q_.cols(); ++k) out.push_back(unvec(q_.col(k), rows_, cols_));
  return out;
}

Mat Subspace::project(const Mat& x) const {
  if (q_.cols() == 0) return Mat::Zero(rows_, cols_);
  const Vec v = vec(x);
  return unvec(q_ * (q_.adjoint() * v), rows_, cols_);
}

double Subspace::residual(const Mat& x) const {
  if (x.rows() != rows_ || x.cols() != cols_)
    throw Error(ErrorKind::DimensionMismatch, "element shape does not match subspace");
  const Vec v = vec(x);
  return linalg::projection_residual(q_, v) / std::max(1.0, v.norm());
}

bool Subspace::contains(const Mat& x, double tol) const { return residual(x) <= tol; }

bool Subspace::contains(const Subspace& other, double tol) const {
  if (other.rows_ != rows_ || other.cols_ != cols_) return false;
  for (Eigen::Index k = 0; k < other.q_.cols(); ++k)
    if (linalg::projection_residual(q_, other.q_.col(k)) > tol) return false;
  return true;
}

bool Subspace::same_as(const Subspace& other, double tol) const {
  return dim() == other.dim() && contains(other, tol) && other.contains(*this, tol);
}

// ------------------------------------------------------- FiniteStarAlgebra

namespace {

std::optional<Mat> find_unit(Eigen::Index d, const std::vector<Mat>& basis, double tol) {
  const auto m = static_cast<Eigen::Index>(basis.size());
  if (m == 0) return std::nullopt;
  // u = sum c_k b_k with u b_j = b_j = b_j u for all j.
  const Eigen::Index block = d * d;
  Mat lhs(2 * block * m, m);
  Vec rhs(2 * block * m);
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index k = 0; k < m; ++k) {
      lhs.block(2 * j * block, k, block, 1) = vec(basis[k] * basis[j]);
      lhs.block((2 * j + 1) * block, k, block, 1) = vec(basis[j] * basis[k]);
    }
    rhs.segment(2 * j * block, block) = vec(basis[j]);
    rhs.segment((2 * j + 1) * block, block) = vec(basis[j]);
  }
  const Vec c = lhs.completeOrthogonalDecomposition().solve(rhs);
  if ((lhs * c - rhs).norm() > tol * std::max(1.0, rhs.norm())) return std::nullopt;
  Mat u = Mat::Zero(d, d);
  for (Eigen::Index k = 0; k < m; ++k) u += c(k) * basis[k];
  return u;
}

}  // namespace

FiniteStarAlgebra::FiniteStarAlgebra(Eigen::Index ambient_dim, std::vector<Mat> basis,
                                     std::optional<Mat> unit, double tol)
    : ambient_dim_(ambient_dim),
      basis_(std::move(basis)),
      span_(Subspace::zero(ambient_dim, ambient_dim)) {
  if (ambient_dim_ <= 0) throw Error(ErrorKind::InvalidAlgebra, "ambient dimension must be positive");
  for (const auto& b : basis_)
    if (b.rows() != ambient_dim_ || b.cols() != ambient_dim_)
      throw Error(ErrorKind::DimensionMismatch, "basis matrix is not " +
                                                    std::to_string(ambient_dim_) + "x" +
                                                    std::to_string(ambient_dim_));

  const auto m = static_cast<Eigen::Index>(basis_.size());
  Mat stacked(ambient_dim_ * ambient_dim_, m);
  for (Eigen::Index k = 0; k < m; ++k) stacked.col(k) = vec(basis_[k]);
  if (linalg::rank(stacked, tol) != m)
    throw Error(ErrorKind::InvalidAlgebra, "basis elements are linearly dependent");

  span_ = Subspace::spanned_by(ambient_dim_, ambient_dim_, basis_, tol);
  if (m > 0) coord_solver_ = stacked.completeOrthogonalDecomposition().pseudoInverse();

  for (Eigen::Index i = 0; i < m; ++i) {
    if (span_.residual(basis_[i].adjoint()) > tol)
      throw Error(ErrorKind::InvalidAlgebra,
                  "span not closed under adjoint (basis " + std::to_string(i) + ")");
    for (Eigen::Index j = 0; j < m; ++j)
      if (span_.residual(basis_[i] * basis_[j]) > tol)
        throw Error(ErrorKind::InvalidAlgebra, "span not closed under product (basis " +
                                                   std::to_string(i) + ", " +
                                                   std::to_string(j) + ")");
  }

  if (unit) {
    if (unit->rows() != ambient_dim_ || unit->cols() != ambient_dim_)
      throw Error(ErrorKind::DimensionMismatch, "unit has wrong shape");
    if (span_.residual(*unit) > tol) throw Error(ErrorKind::InvalidAlgebra, "unit not in algebra");
    for (const auto& b : basis_)
      if ((*unit * b - b).norm() > tol * std::max(1.0, b.norm()) ||
          (b * *unit - b).norm() > tol * std::max(1.0, b.norm()))
        throw Error(ErrorKind::InvalidAlgebra, "declared unit is not a two-sided identity");
    unit_ = std::move(unit);
  } else {
    unit_ = find_unit(ambient_dim_, basis_, tol);
  }
}

FiniteStarAlgebra FiniteStarAlgebra::full_matrix(Eigen::Index d) {
  // Matrix units in row-major order: e_11, e_12, ..., e_dd.
  std::vector<Mat> basis;
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) {
      Mat e = Mat::Zero(d, d);
      e(i, j) = 1.0;
      basis.push_back(e);
    }
  return FiniteStarAlgebra(d, std::move(basis), Mat::Identity(d, d));
}

FiniteStarAlgebra FiniteStarAlgebra::diagonal(Eigen::Index d) {
  std::vector<Mat> basis;
  for (Eigen::Index i = 0; i < d; ++i) {
    Mat e = Mat::Zero(d, d);
    e(i, i) = 1.0;
    basis.push_back(e);
  }
  return FiniteStarAlgebra(d, std::move(basis), Mat::Identity(d, d));
}

FiniteStarAlgebra FiniteStarAlgebra::scalars(Eigen::Index d) {
  return FiniteStarAlgebra(d, {Mat::Identity(d, d)}, Mat::Identity(d, d));
}

FiniteStarAlgebra FiniteStarAlgebra::block_diagonal(const std::vector<Eigen::Index>& sizes) {
  Eigen::Index d = 0;
  for (auto s : sizes) d += s;
  std::vector<Mat> basis;
  Eigen::Index offset = 0;
  for (auto s : sizes) {
    for (Eigen::Index i = 0; i < s; ++i)
      for (Eigen::Index j = 0; j < s; ++j) {
        Mat e = Mat::Zero(d, d);
        e(offset + i, offset + j) = 1.0;
        basis.push_back(e);
      }
    offset += s;
  }
  return FiniteStarAlgebra(d, std::move(basis), Mat::Identity(d, d));
}

FiniteStarAlgebra FiniteStarAlgebra::generated_by(Eigen::Index d, const std::vector<Mat>& generators,
                                                  double tol) {
  std::vector<Mat> seed;
  for (const auto& g : generators) {
    if (g.rows() != d || g.cols() != d)
      throw Error(ErrorKind::DimensionMismatch, "generator has wrong shape");
    seed.push_back(g);
    seed.push_back(g.adjoint());
  }
  Subspace current = Subspace::spanned_by(d, d, seed, tol);
  while (true) {
    std::vector<Mat> elems = current.basis();
    const std::size_t n = elems.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) elems.push_back(elems[i] * elems[j]);
    Subspace next = Subspace::spanned_by(d, d, elems, tol);
    if (next.dim() == current.dim()) break;
    current = std::move(next);
  }
  return FiniteStarAlgebra(d, current.basis(), std::nullopt, std::max(tol, 1e-10));
}

FiniteStarAlgebra FiniteStarAlgebra::from_structure_constants(
    const std::vector<std::vector<std::vector<Cx>>>& c, const std::vector<std::vector<Cx>>& star,
    double tol) {
  const auto m = static_cast<Eigen::Index>(c.size());
  if (m == 0) throw Error(ErrorKind::InvalidAlgebra, "empty structure constants");
  if (static_cast<Eigen::Index>(star.size()) != m)
    throw Error(ErrorKind::DimensionMismatch, "involution table size mismatch");
  std::vector<Mat> left(static_cast<std::size_t>(m), Mat::Zero(m, m));
  for (Eigen::Index i = 0; i < m; ++i) {
    if (static_cast<Eigen::Index>(c[i].size()) != m ||
        static_cast<Eigen::Index>(star[i].size()) != m)
      throw Error(ErrorKind::DimensionMismatch, "structure constant table is not cubic");
    for (Eigen::Index j = 0; j < m; ++j) {
      if (static_cast<Eigen::Index>(c[i][j].size()) != m)
        throw Error(ErrorKind::DimensionMismatch, "structure constant table is not cubic");
      for (Eigen::Index k = 0; k < m; ++k) left[i](k, j) = c[i][j][k];
    }
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    Mat image = Mat::Zero(m, m);
    for (Eigen::Index k = 0; k < m; ++k) image += star[i][k] * left[k];
    if ((image - left[i].adjoint()).norm() > tol * std::max(1.0, image.norm()))
      throw Error(ErrorKind::InvalidAlgebra,
                  "left-regular representation is not a *-representation (basis " +
                      std::to_string(i) + ")");
  }
  return FiniteStarAlgebra(m, std::move(left), std::nullopt, tol);
}

bool FiniteStarAlgebra::contains(const Mat& x, double tol) const {
  if (x.rows() != ambient_dim_ || x.cols() != ambient_dim_) return false;
  return span_.residual(x) <= tol;
}

void FiniteStarAlgebra::require_member(const Mat& x, double tol) const {
  if (x.rows() != ambient_dim_ || x.cols() != ambient_dim_)
    throw Error(ErrorKind::DimensionMismatch, "element is not " + std::to_string(ambient_dim_) +
                                                  "x" + std::to_string(ambient_dim_));
  const double r = span_.residual(x);
  if (r > tol)
    throw Error(ErrorKind::NotInAlgebra, "membership residual " + std::to_string(r) +
                                             " exceeds tolerance");
}

Vec FiniteStarAlgebra::coordinates(const Mat& x) const {
  if (basis_.empty()) return Vec(0);
  return coord_solver_ * vec(x);
}

Mat FiniteStarAlgebra::element(const Vec& coords) const {
  Mat out = Mat::Zero(ambient_dim_, ambient_dim_);
  for (Eigen::Index k = 0; k < coords.size(); ++k) out += coords(k) * basis_[k];
  return out;
}

Mat FiniteStarAlgebra::left_multiplication(const Mat& x) const {
  Mat out(dim(), dim());
  for (Eigen::Index j = 0; j < dim(); ++j) out.col(j) = coordinates(x * basis_[j]);
  return out;
}

FiniteStarAlgebra FiniteStarAlgebra::unitization(bool* adjoined) const {
  if (unit_) {
    if (adjoined) *adjoined = false;
    return *this;
  }
  if (adjoined) *adjoined = true;
  std::vector<Mat> basis = basis_;
  basis.push_back(Mat::Identity(ambient_dim_, ambient_dim_));
  return FiniteStarAlgebra(ambient_dim_, std::move(basis), Mat::Identity(ambient_dim_, ambient_dim_));
}

// ------------------------------------------------------------------- State

State::State(Mat density, double tol) : density_(std::move(density)) {
  if (density_.rows() != density_.cols() || density_.rows() == 0)
    throw Error(ErrorKind::InvalidState, "density must be a non-empty square matrix");
  if (!linalg::is_hermitian(density_, tol))
    throw Error(ErrorKind::InvalidState, "density is not Hermitian");
  const RealVec ev = linalg::hermitian_eigenvalues(density_);
  if (ev.minCoeff() < -tol)
    throw Error(ErrorKind::InvalidState, "density has a negative eigenvalue");
  if (std::abs(density_.trace() - Cx(1.0)) > tol)
    throw Error(ErrorKind::InvalidState, "density does not have unit trace");
}

State State::tracial(Eigen::Index d) {
  return State(Mat::Identity(d, d) / static_cast<double>(d));
}

// -------------------------------------------------------------- operations

double cstar_norm(const FiniteStarAlgebra& alg, const Mat& x, double tol) {
  alg.require_member(x, tol);
  const RealVec ev = linalg::hermitian_eigenvalues(x.adjoint() * x);
  return std::sqrt(std::max(0.0, ev.size() ? ev.maxCoeff() : 0.0));
}

bool is_positive_matrix(const Mat& x, double tol) {
  if (!linalg::is_hermitian(x, tol)) return false;
  const RealVec ev = linalg::hermitian_eigenvalues(x);
  return ev.size() == 0 || ev.minCoeff() >= -tol * std::max(1.0, ev.cwiseAbs().maxCoeff());
}

bool is_positive(const FiniteStarAlgebra& alg, const Mat& x, double tol) {
  alg.require_member(x, tol);
  return is_positive_matrix(x, tol);
}

Subspace commutant(Eigen::Index ambient_dim, const std::vector<Mat>& generators, double tol) {
  const Eigen::Index d = ambient_dim;
  const Eigen::Index n = d * d;
  Mat system(n * static_cast<Eigen::Index>(generators.size()), n);
  const Mat id = Mat::Identity(d, d);
  for (std::size_t k = 0; k < generators.size(); ++k) {
    const Mat& g = generators[k];
    if (g.rows() != d || g.cols() != d)
      throw Error(ErrorKind::DimensionMismatch, "generator " + std::to_string(k) + " is not " +
                                                    std::to_string(d) + "x" + std::to_string(d));
    // vec(X g - g X) = (g^T (x) I - I (x) g) vec(X)
    system.middleRows(static_cast<Eigen::Index>(k) * n, n) =
        linalg::kron(g.transpose(), id) - linalg::kron(id, g);
  }
  return Subspace(d, d, linalg::nullspace(system, tol));
}

Subspace bicommutant(Eigen::Index ambient_dim, const std::vector<Mat>& generators, double tol) {
  return commutant(ambient_dim, commutant(ambient_dim, generators, tol).basis(), tol);
}

Cx state_eval(const FiniteStarAlgebra& alg, const State& omega, const Mat& x, double tol) {
  alg.require_member(x, tol);
  if (omega.ambient_dim() != alg.ambient_dim())
    throw Error(ErrorKind::DimensionMismatch, "state and algebra live on different spaces");
  return omega(x);
}

}  // namespace hcstar

#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace hcstar {

using Cx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RealVec = Eigen::VectorXd;

namespace linalg {

/// Column-major vectorization of a matrix.
Vec vec(const Mat& m);
Mat unvec(const Vec& v, Eigen::Index rows, Eigen::Index cols);

/// Orthonormal basis of the null space of `a`. Singular values at or below
/// tol * max(1, sigma_max) count as zero.
Mat nullspace(const Mat& a, double tol);

/// Orthonormal basis of the column span of `a`, same rank threshold as
/// nullspace().
Mat orthonormal_span(const Mat& a, double tol);

/// Numerical rank with the same threshold convention.
Eigen::Index rank(const Mat& a, double tol);

/// Largest singular value (operator 2-norm).
double operator_norm(const Mat& a);

bool is_hermitian(const Mat& a, double tol);
Mat hermitian_part(const Mat& a);

/// f(h) for Hermitian h via eigendecomposition. The callback receives each
/// eigenvalue and returns the complex image.
template <typename F>
Mat hermitian_function(const Mat& h, F&& f) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(h));
  const RealVec& w = es.eigenvalues();
  Vec fw(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) fw(i) = f(w(i));
  return es.eigenvectors() * fw.asDiagonal() * es.eigenvectors().adjoint();
}

/// Eigenvalues of the Hermitian part, ascending.
RealVec hermitian_eigenvalues(const Mat& h);

/// Kronecker product a (x) b.
Mat kron(const Mat& a, const Mat& b);

/// Residual of `v` after orthogonal projection onto the span of the
/// orthonormal columns of `q`.
double projection_residual(const Mat& q, const Vec& v);

}  // namespace linalg
}  // namespace hcstar

#include "hcstar/linalg.hpp"

#include <algorithm>

namespace hcstar::linalg {
namespace {

Eigen::BDCSVD<Mat> svd_of(const Mat& a, unsigned options) { return Eigen::BDCSVD<Mat>(a, options); }

double rank_threshold(const RealVec& sigma, double tol) {
  const double smax = sigma.size() > 0 ? sigma(0) : 0.0;
  return tol * std::max(1.0, smax);
}

}  // namespace

Vec vec(const Mat& m) { return Eigen::Map<const Vec>(m.data(), m.size()); }

Mat unvec(const Vec& v, Eigen::Index rows, Eigen::Index cols) {
  return Eigen::Map<const Mat>(v.data(), rows, cols);
}

Mat nullspace(const Mat& a, double tol) {
  const Eigen::Index n = a.cols();
  if (n == 0) return Mat(0, 0);
  if (a.rows() == 0) return Mat::Identity(n, n);
  // Tall systems are compressed to their R factor first; the null space is
  // unchanged and the SVD stays n x n.
  Mat work = a;
  if (a.rows() > 2 * n) {
    Eigen::HouseholderQR<Mat> qr(a);
    work = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
  }
  auto svd = svd_of(work, Eigen::ComputeFullV);
  const RealVec& sigma = svd.singularValues();
  const double thr = rank_threshold(sigma, tol);
  Eigen::Index r = 0;
  while (r < sigma.size() && sigma(r) > thr) ++r;
  return svd.matrixV().rightCols(n - r);
}

Mat orthonormal_span(const Mat& a, double tol) {
  if (a.cols() == 0 || a.rows() == 0) return Mat(a.rows(), 0);
  auto svd = svd_of(a, Eigen::ComputeThinU);
  const RealVec& sigma = svd.singularValues();
  const double thr = rank_threshold(sigma, tol);
  Eigen::Index r = 0;
  while (r < sigma.size() && sigma(r) > thr) ++r;
  return svd.matrixU().leftCols(r);
}

Eigen::Index rank(const Mat& a, double tol) {
  if (a.size() == 0) return 0;
  auto svd = svd_of(a, 0);
  const RealVec& sigma = svd.singularValues();
  const double thr = rank_threshold(sigma, tol);
  Eigen::Index r = 0;
  while (r < sigma.size() && sigma(r) > thr) ++r;
  return r;
}

double operator_norm(const Mat& a) {
  if (a.size() == 0) return 0.0;
  auto svd = svd_of(a, 0);
  return svd.singularValues()(0);
}

bool is_hermitian(const Mat& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return (a - a.adjoint()).norm() <= tol * std::max(1.0, a.norm());
}

Mat hermitian_part(const Mat& a) { return (a + a.adjoint()) / 2.0; }

RealVec hermitian_eigenvalues(const Mat& h) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(h), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

double projection_residual(const Mat& q, const Vec& v) {
  if (q.cols() == 0) return v.norm();
  return (v - q * (q.adjoint() * v)).norm();
}

}  // namespace hcstar::linalg

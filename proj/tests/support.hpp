#pragma once

#include <random>

#include "hcstar/linalg.hpp"

namespace testsupport {

using hcstar::Cx;
using hcstar::Mat;
using hcstar::Vec;

inline Mat random_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> g;
  Mat m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = Cx(g(rng), g(rng));
  return m;
}

inline Vec random_vector(std::mt19937_64& rng, Eigen::Index n) { return random_matrix(rng, n, 1).col(0); }

/// Full-rank density matrix with a random eigenbasis.
inline Mat random_density(std::mt19937_64& rng, Eigen::Index d) {
  const Mat a = random_matrix(rng, d, d);
  Mat rho = a * a.adjoint() + 0.1 * Mat::Identity(d, d);
  return rho / rho.trace();
}

inline Mat unit_matrix(Eigen::Index d, Eigen::Index i, Eigen::Index j) {
  Mat e = Mat::Zero(d, d);
  e(i, j) = 1.0;
  return e;
}

inline Mat diag(std::initializer_list<double> values) {
  Vec v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return v.asDiagonal();
}

}  // namespace testsupport

#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "hcstar/linalg.hpp"

namespace hcstar {

/// Subset of depths {1..n}, as a bitmask (bit k-1 <-> depth k). Used both
/// for product modes (convolution at depths in the set, Schur elsewhere) and
/// involution modes (index swap at depths in the set).
struct Mode {
  std::uint32_t mask = 0;

  static Mode from_depths(const std::vector<int>& depths);
  static Mode all(int depth) { return Mode{(depth >= 32) ? ~0u : ((1u << depth) - 1u)}; }
  bool has(int depth) const { return (mask >> (depth - 1)) & 1u; }
  std::vector<int> depths(int max_depth) const;

  auto operator<=>(const Mode&) const = default;
};

/// Depth-n complex array indexed by ((i_1, j_1), ..., (i_n, j_n)) with
/// 0 <= i_k, j_k < N_k. Flat layout: depth 1 is most significant and each
/// depth contributes the digit i_k * N_k + j_k in base N_k^2.
class Hypermatrix {
 public:
  explicit Hypermatrix(std::vector<int> factor_sizes);
  Hypermatrix(std::vector<int> factor_sizes, Vec entries);

  static Hypermatrix from_matrix(const Mat& m);
  /// Tensor product of one matrix per depth.
  static Hypermatrix rank_one(const std::vector<Mat>& factors);

  int depth() const { return static_cast<int>(sizes_.size()); }
  const std::vector<int>& factor_sizes() const { return sizes_; }
  Eigen::Index size() const { return entries_.size(); }
  const Vec& entries() const { return entries_; }
  Vec& entries() { return entries_; }

  /// Flat index of ((i_1, j_1), ..., (i_n, j_n)).
  Eigen::Index index(const std::vector<int>& rows, const std::vector<int>& cols) const;
  Cx operator()(const std::vector<int>& rows, const std::vector<int>& cols) const {
    return entries_(index(rows, cols));
  }
  Cx& operator()(const std::vector<int>& rows, const std::vector<int>& cols) {
    return entries_(index(rows, cols));
  }

  /// Reshape as a (prod N_k) x (prod N_k) matrix with row multi-index
  /// (i_1..i_n) and column multi-index (j_1..j_n); the Kronecker ordering.
  Mat to_kronecker_matrix() const;
  /// Depth 1 only.
  Mat to_matrix() const;

 private:
  std::vector<int> sizes_;
  Vec entries_;
};

/// Product acting as matrix multiplication at the depths in `mode` and
/// entrywise elsewhere. Output entries are computed in parallel.
Hypermatrix hypermatrix_product(const Hypermatrix& a, const Hypermatrix& b, Mode mode);

/// Swaps (i_k, j_k) at the depths in `mode`; conjugates every entry once.
Hypermatrix hypermatrix_involution(const Hypermatrix& a, Mode mode);

/// Identity pattern at the depths in `mode`, all-ones elsewhere.
Hypermatrix unit_for_mode(const std::vector<int>& factor_sizes, Mode mode);

namespace reference {
/// Definition-level product: sums a_u * b_v over every pair of entries whose
/// index pairs compose at each depth. Quadratic in the entry count; serial.
Hypermatrix hypermatrix_product_serial(const Hypermatrix& a, const Hypermatrix& b, Mode mode);
}  // namespace reference

}  // namespace hcstar

#include "hcstar/hypermatrix.hpp"

#include <array>
#include <string>

#include "hcstar/error.hpp"

namespace hcstar {

Mode Mode::from_depths(const std::vector<int>& depths) {
  Mode m;
  for (int d : depths) {
    if (d < 1 || d > 32) throw Error(ErrorKind::ShapeMismatch, "mode depth out of range: " + std::to_string(d));
    m.mask |= 1u << (d - 1);
  }
  return m;
}

std::vector<int> Mode::depths(int max_depth) const {
  std::vector<int> out;
  for (int k = 1; k <= max_depth; ++k)
    if (has(k)) out.push_back(k);
  return out;
}

namespace {

Eigen::Index entry_count(const std::vector<int>& sizes) {
  Eigen::Index n = 1;
  for (int s : sizes) {
    if (s <= 0) throw Error(ErrorKind::ShapeMismatch, "factor sizes must be positive");
    n *= static_cast<Eigen::Index>(s) * s;
  }
  return n;
}

// stride of depth k (0-based) in the flat layout
std::vector<Eigen::Index> strides(const std::vector<int>& sizes) {
  std::vector<Eigen::Index> st(sizes.size());
  Eigen::Index s = 1;
  for (std::size_t k = sizes.size(); k-- > 0;) {
    st[k] = s;
    s *= static_cast<Eigen::Index>(sizes[k]) * sizes[k];
  }
  return st;
}

void require_same_shape(const Hypermatrix& a, const Hypermatrix& b) {
  if (a.factor_sizes() != b.factor_sizes())
    throw Error(ErrorKind::ShapeMismatch, "hypermatrices have different factor sizes");
}

}  // namespace

Hypermatrix::Hypermatrix(std::vector<int> factor_sizes)
    : sizes_(std::move(factor_sizes)), entries_(Vec::Zero(entry_count(sizes_))) {
  if (sizes_.empty()) throw Error(ErrorKind::ShapeMismatch, "depth must be at least 1");
}

Hypermatrix::Hypermatrix(std::vector<int> factor_sizes, Vec entries)
    : sizes_(std::move(factor_sizes)), entries_(std::move(entries)) {
  if (sizes_.empty()) throw Error(ErrorKind::ShapeMismatch, "depth must be at least 1");
  if (entries_.size() != entry_count(sizes_))
    throw Error(ErrorKind::ShapeMismatch, "entry count does not match factor sizes");
}

Hypermatrix Hypermatrix::from_matrix(const Mat& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::ShapeMismatch, "matrix must be square");
  Hypermatrix h({static_cast<int>(m.rows())});
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) h.entries_(i * m.rows() + j) = m(i, j);
  return h;
}

Hypermatrix Hypermatrix::rank_one(const std::vector<Mat>& factors) {
  std::vector<int> sizes;
  for (const auto& f : factors) {
    if (f.rows() != f.cols()) throw Error(ErrorKind::ShapeMismatch, "factor must be square");
    sizes.push_back(static_cast<int>(f.rows()));
  }
  Hypermatrix h(sizes);
  const auto st = strides(sizes);
  for (Eigen::Index flat = 0; flat < h.size(); ++flat) {
    Cx v = 1.0;
    for (std::size_t k = 0; k < sizes.size(); ++k) {
      const Eigen::Index digit = (flat / st[k]) % (static_cast<Eigen::Index>(sizes[k]) * sizes[k]);
      v *= factors[k](digit / sizes[k], digit % sizes[k]);
    }
    h.entries_(flat) = v;
  }
  return h;
}

Eigen::Index Hypermatrix::index(const std::vector<int>& rows, const std::vector<int>& cols) const {
  if (rows.size() != sizes_.size() || cols.size() != sizes_.size())
    throw Error(ErrorKind::ShapeMismatch, "index tuple has wrong depth");
  const auto st = strides(sizes_);
  Eigen::Index flat = 0;
  for (std::size_t k = 0; k < sizes_.size(); ++k) {
    if (rows[k] < 0 || rows[k] >= sizes_[k] || cols[k] < 0 || cols[k] >= sizes_[k])
      throw Error(ErrorKind::ShapeMismatch, "index out of range at depth " + std::to_string(k + 1));
    flat += (static_cast<Eigen::Index>(rows[k]) * sizes_[k] + cols[k]) * st[k];
  }
  return flat;
}

Mat Hypermatrix::to_kronecker_matrix() const {
  Eigen::Index dim = 1;
  for (int s : sizes_) dim *= s;
  Mat out(dim, dim);
  const auto st = strides(sizes_);
  for (Eigen::Index flat = 0; flat < size(); ++flat) {
    Eigen::Index r = 0, c = 0;
    for (std::size_t k = 0; k < sizes_.size(); ++k) {
      const Eigen::Index n = sizes_[k];
      const Eigen::Index digit = (flat / st[k]) % (n * n);
      r = r * n + digit / n;
      c = c * n + digit % n;
    }
    out(r, c) = entries_(flat);
  }
  return out;
}

Mat Hypermatrix::to_matrix() const {
  if (depth() != 1) throw Error(ErrorKind::ShapeMismatch, "to_matrix needs depth 1");
  return to_kronecker_matrix();
}

Hypermatrix hypermatrix_product(const Hypermatrix& a, const Hypermatrix& b, Mode mode) {
  require_same_shape(a, b);
  const auto& sizes = a.factor_sizes();
  const std::size_t depth = sizes.size();
  const auto st = strides(sizes);

  // Contraction runs over one middle index per convolution depth; the
  // strides of those indices do not depend on the output entry.
  std::vector<Eigen::Index> a_step, b_step, extent;
  Eigen::Index contractions = 1;
  for (std::size_t k = 0; k < depth; ++k)
    if (mode.has(static_cast<int>(k) + 1)) {
      a_step.push_back(st[k]);
      b_step.push_back(sizes[k] * st[k]);
      extent.push_back(sizes[k]);
      contractions *= sizes[k];
    }
  const std::size_t conv = extent.size();

  Hypermatrix out(sizes);
  const Vec& av = a.entries();
  const Vec& bv = b.entries();
  Vec& ov = out.entries();
  const Eigen::Index total = out.size();

#pragma omp parallel for schedule(static)
  for (Eigen::Index flat = 0; flat < total; ++flat) {
    // Offsets with the contracted digits zeroed: a at (i, 0), b at (0, j).
    Eigen::Index a_base = 0, b_base = 0;
    for (std::size_t k = 0; k < depth; ++k) {
      const Eigen::Index n = sizes[k];
      const Eigen::Index digit = (flat / st[k]) % (n * n);
      if (mode.has(static_cast<int>(k) + 1)) {
        a_base += (digit / n) * n * st[k];
        b_base += (digit % n) * st[k];
      } else {
        a_base += digit * st[k];
        b_base += digit * st[k];
      }
    }
    Cx acc = 0.0;
    std::array<Eigen::Index, 32> m{};
    Eigen::Index ai = a_base, bi = b_base;
    for (Eigen::Index c = 0; c < contractions; ++c) {
      acc += av(ai) * bv(bi);
      for (std::size_t t = conv; t-- > 0;) {
        if (++m[t] < extent[t]) {
          ai += a_step[t];
          bi += b_step[t];
          break;
        }
        ai -= (extent[t] - 1) * a_step[t];
        bi -= (extent[t] - 1) * b_step[t];
        m[t] = 0;
      }
    }
    ov(flat) = acc;
  }
  return out;
}

Hypermatrix hypermatrix_involution(const Hypermatrix& a, Mode mode) {
  const auto& sizes = a.factor_sizes();
  const auto st = strides(sizes);
  Hypermatrix out(sizes);
  for (Eigen::Index flat = 0; flat < a.size(); ++flat) {
    Eigen::Index dest = 0;
    for (std::size_t k = 0; k < sizes.size(); ++k) {
      const Eigen::Index n = sizes[k];
      const Eigen::Index digit = (flat / st[k]) % (n * n);
      const Eigen::Index i = digit / n, j = digit % n;
      dest += (mode.has(static_cast<int>(k) + 1) ? j * n + i : digit) * st[k];
    }
    out.entries()(dest) = std::conj(a.entries()(flat));
  }
  return out;
}

Hypermatrix unit_for_mode(const std::vector<int>& factor_sizes, Mode mode) {
  std::vector<Mat> factors;
  for (std::size_t k = 0; k < factor_sizes.size(); ++k) {
    const int n = factor_sizes[k];
    factors.push_back(mode.has(static_cast<int>(k) + 1) ? Mat(Mat::Identity(n, n))
                                                        : Mat(Mat::Ones(n, n)));
  }
  return Hypermatrix::rank_one(factors);
}

namespace reference {

Hypermatrix hypermatrix_product_serial(const Hypermatrix& a, const Hypermatrix& b, Mode mode) {
  require_same_shape(a, b);
  const auto& sizes = a.factor_sizes();
  const auto st = strides(sizes);
  const auto digits = [&](Eigen::Index flat, std::size_t k) {
    const Eigen::Index n = sizes[k];
    const Eigen::Index d = (flat / st[k]) % (n * n);
    return std::pair<Eigen::Index, Eigen::Index>{d / n, d % n};
  };
  Hypermatrix out(sizes);
  for (Eigen::Index u = 0; u < a.size(); ++u) {
    if (a.entries()(u) == Cx(0.0)) continue;
    for (Eigen::Index v = 0; v < b.size(); ++v) {
      bool composable = true;
      Eigen::Index dest = 0;
      for (std::size_t k = 0; k < sizes.size() && composable; ++k) {
        const auto [ai, aj] = digits(u, k);
        const auto [bi, bj] = digits(v, k);
        const Eigen::Index n = sizes[k];
        if (mode.has(static_cast<int>(k) + 1)) {
          composable = aj == bi;  // pair groupoid: (i, m) o (m, j) = (i, j)
          dest += (ai * n + bj) * st[k];
        } else {
          composable = ai == bi && aj == bj;  // discrete: x o x = x
          dest += (ai * n + aj) * st[k];
        }
      }
      if (composable) out.entries()(dest) += a.entries()(u) * b.entries()(v);
    }
  }
  return out;
}

}  // namespace reference
}  // namespace hcstar

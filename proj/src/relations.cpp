#include "hcstar/relations.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "hcstar/error.hpp"
#include "hcstar/json_io.hpp"

namespace hcstar {

namespace {

double rel(double diff, double scale) { return diff / std::max(1.0, scale); }

Mat combine(const FiniteStarAlgebra& alg, const std::vector<Mat>& images, const Mat& x) {
  const Vec c = alg.coordinates(x);
  Mat out = Mat::Zero(images.front().rows(), images.front().cols());
  for (std::size_t k = 0; k < images.size(); ++k) out += c(static_cast<Eigen::Index>(k)) * images[k];
  return out;
}

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b, double tol) {
  if (a == b) return true;
  return a->ambient_dim() == b->ambient_dim() && a->dim() == b->dim() && a->span().same_as(b->span(), tol);
}

std::string pair_text(Eigen::Index i, Eigen::Index j) {
  return "(" + std::to_string(i) + ", " + std::to_string(j) + ")";
}

}  // namespace

CheckReport check_star_homomorphism(const AlgebraMap& phi, double tol) {
  CheckReport r;
  const auto& b = phi.source->basis();
  for (std::size_t i = 0; i < b.size(); ++i) {
    const Mat fi = phi(b[i]);
    for (std::size_t j = 0; j < b.size(); ++j) {
      const Mat lhs = phi(b[i] * b[j]);
      const Mat rhs = fi * phi(b[j]);
      const double res = rel((lhs - rhs).norm(), rhs.norm());
      r.count("pairs");
      r.observe(res);
      if (res > tol) r.add("multiplicative", {static_cast<std::int64_t>(i), static_cast<std::int64_t>(j)}, res);
    }
    const double res = rel((phi(b[i].adjoint()) - fi.adjoint()).norm(), fi.norm());
    r.observe(res);
    if (res > tol) r.add("star_preserving", {static_cast<std::int64_t>(i)}, res);
  }
  r.canonicalize();
  return r;
}

Mat right_multiplication(const FiniteStarAlgebra& alg, const Mat& x) {
  Mat r(alg.dim(), alg.dim());
  for (Eigen::Index k = 0; k < alg.dim(); ++k) r.col(k) = alg.coordinates(alg.basis()[k] * x);
  return r;
}

Mat Bimodule::left_of(const Mat& a) const { return combine(*left, left_action, a); }
Mat Bimodule::right_of(const Mat& b) const { return combine(*right, right_action, b); }

Mat Bimodule::inner(const Vec& x, const Vec& y) const {
  if (!gram) throw Error(ErrorKind::PreconditionViolated, "bimodule has no inner product");
  const Eigen::Index d = right->ambient_dim();
  Mat out = Mat::Zero(d, d);
  for (Eigen::Index i = 0; i < carrier_dim; ++i)
    for (Eigen::Index j = 0; j < carrier_dim; ++j)
      out += std::conj(x(i)) * y(j) * (*gram)[static_cast<std::size_t>(i * carrier_dim + j)];
  return out;
}

CheckReport check_bimodule(const Bimodule& m, double tol) {
  CheckReport r;
  const auto& la = m.left->basis();
  const auto& rb = m.right->basis();
  for (std::size_t i = 0; i < la.size(); ++i)
    for (std::size_t j = 0; j < la.size(); ++j) {
      const Mat rhs = m.left_action[i] * m.left_action[j];
      const double res = rel((m.left_of(la[i] * la[j]) - rhs).norm(), rhs.norm());
      r.count("left_pairs");
      r.observe(res);
      if (res > tol) r.add("left_homomorphism", {static_cast<std::int64_t>(i), static_cast<std::int64_t>(j)}, res);
    }
  for (std::size_t i = 0; i < rb.size(); ++i)
    for (std::size_t j = 0; j < rb.size(); ++j) {
      const Mat rhs = m.right_action[j] * m.right_action[i];
      const double res = rel((m.right_of(rb[i] * rb[j]) - rhs).norm(), rhs.norm());
      r.count("right_pairs");
      r.observe(res);
      if (res > tol) r.add("right_antihomomorphism", {static_cast<std::int64_t>(i), static_cast<std::int64_t>(j)}, res);
    }
  for (std::size_t i = 0; i < la.size(); ++i)
    for (std::size_t j = 0; j < rb.size(); ++j) {
      const Mat a = m.left_action[i] * m.right_action[j];
      const double res = rel((a - m.right_action[j] * m.left_action[i]).norm(), a.norm());
      r.observe(res);
      if (res > tol) r.add("actions_commute", {static_cast<std::int64_t>(i), static_cast<std::int64_t>(j)}, res);
    }

  if (m.gram) {
    const Eigen::Index n = m.carrier_dim;
    for (Eigen::Index i = 0; i < n; ++i) {
      const Vec ei = Vec::Unit(n, i);
      const Mat self = m.inner(ei, ei);
      if (!is_positive(*m.right, self, tol)) r.add("inner_positive", {i}, 0.0);
      for (Eigen::Index j = 0; j < n; ++j) {
        const Vec ej = Vec::Unit(n, j);
        const Mat base = m.inner(ei, ej);
        for (std::size_t k = 0; k < rb.size(); ++k) {
          const Mat rhs = base * rb[k];
          const double res = rel((m.inner(ei, m.right_action[k] * ej) - rhs).norm(), rhs.norm());
          r.observe(res);
          if (res > tol) r.add("inner_right_linear", {i, j, static_cast<std::int64_t>(k)}, res);
        }
        for (std::size_t k = 0; k < la.size(); ++k) {
          const Mat lhs = m.inner(m.left_action[k] * ei, ej);
          const double res = rel((lhs - m.inner(ei, m.left_of(la[k].adjoint()) * ej)).norm(), lhs.norm());
          r.observe(res);
          if (res > tol) r.add("left_adjointable", {i, j, static_cast<std::int64_t>(k)}, res);
        }
      }
    }
  }
  r.canonicalize();
  return r;
}

Bimodule twisted_bimodule(const AlgebraMap& phi, TwistSide side, double tol) {
  const CheckReport hom = check_star_homomorphism(phi, tol);
  if (!hom.passed()) {
    const auto& v = hom.violations.front();
    std::string w;
    for (auto x : v.witness) w += (w.empty() ? "" : ", ") + std::to_string(x);
    throw Error(ErrorKind::NotStarHomomorphism, "map is not " + v.axiom + " at basis (" + w + ")");
  }
  const FiniteStarAlgebra& b = *phi.target;
  Bimodule m;
  m.carrier_dim = b.dim();
  if (side == TwistSide::Left) {
    m.left = phi.source;
    m.right = phi.target;
    for (const auto& a : phi.source->basis()) m.left_action.push_back(b.left_multiplication(phi(a)));
    for (const auto& y : b.basis()) m.right_action.push_back(right_multiplication(b, y));
    std::vector<Mat> gram;
    for (const auto& x : b.basis())
      for (const auto& y : b.basis()) gram.push_back(x.adjoint() * y);
    m.gram = std::move(gram);
  } else {
    m.left = phi.target;
    m.right = phi.source;
    for (const auto& y : b.basis()) m.left_action.push_back(b.left_multiplication(y));
    for (const auto& a : phi.source->basis()) m.right_action.push_back(right_multiplication(b, phi(a)));
  }
  return m;
}

Bimodule gns_bimodule(AlgebraPtr alg, const State& omega, double tol) {
  const GnsData g = gns(*alg, omega, tol);
  Bimodule m;
  m.left = alg;
  m.right = std::make_shared<const FiniteStarAlgebra>(FiniteStarAlgebra::scalars(1));
  m.carrier_dim = g.space_dim();
  for (const auto& a : alg->basis()) m.left_action.push_back(g.represent(a));
  m.right_action.push_back(Mat::Identity(m.carrier_dim, m.carrier_dim));
  std::vector<Mat> gram;
  for (Eigen::Index i = 0; i < m.carrier_dim; ++i)
    for (Eigen::Index j = 0; j < m.carrier_dim; ++j) gram.push_back(Mat::Constant(1, 1, i == j ? 1.0 : 0.0));
  m.gram = std::move(gram);
  return m;
}

void verify_conditional_expectation(const ConditionalExpectation& e, double tol) {
  const auto& phi = e.expectation;
  const auto& inc = e.inclusion;
  const auto fail = [](const std::string& what) { throw Error(ErrorKind::NotConditionalExpectation, what); };
  if (phi.source != inc.target && !same_algebra(phi.source, inc.target, tol))
    fail("expectation and inclusion do not share the large algebra");
  if (phi.target != inc.source && !same_algebra(phi.target, inc.source, tol))
    fail("expectation and inclusion do not share the small algebra");
  if (!check_star_homomorphism(inc, tol).passed()) fail("inclusion is not a *-homomorphism");

  const auto& a = phi.source->basis();
  const auto& b = inc.source->basis();
  for (std::size_t i = 0; i < b.size(); ++i)
    if (rel((phi(inc(b[i])) - b[i]).norm(), b[i].norm()) > tol)
      fail("not idempotent onto the subalgebra at basis " + std::to_string(i));
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t k = 0; k < a.size(); ++k) {
      const Mat fa = phi(a[k]);
      if (rel((phi(inc(b[i]) * a[k]) - b[i] * fa).norm(), fa.norm()) > tol)
        fail("not left B-linear at " + pair_text(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)));
      if (rel((phi(a[k] * inc(b[i])) - fa * b[i]).norm(), fa.norm()) > tol)
        fail("not right B-linear at " + pair_text(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)));
    }

  std::vector<Mat> probes = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      probes.push_back(a[i] + a[j]);
      probes.push_back(a[i] + Cx(0.0, 1.0) * a[j]);
    }
  std::mt19937_64 rng(0);
  std::normal_distribution<double> gauss;
  for (int s = 0; s < 32; ++s) {
    Vec c(phi.source->dim());
    for (Eigen::Index k = 0; k < c.size(); ++k) c(k) = Cx(gauss(rng), gauss(rng));
    probes.push_back(phi.source->element(c));
  }
  for (std::size_t i = 0; i < probes.size(); ++i) {
    const Mat p = phi(probes[i].adjoint() * probes[i]);
    if (!is_positive_matrix(p / std::max(1.0, p.norm()), tol)) fail("not positive on probe " + std::to_string(i));
  }
}

Bimodule ce_bimodule(const ConditionalExpectation& e, double tol) {
  verify_conditional_expectation(e, tol);
  const FiniteStarAlgebra& a = *e.expectation.source;
  const auto m = a.dim();

  // a is null for the B-valued form iff tr(Phi(a^* a)) = 0.
  Mat h(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) h(i, j) = e.expectation(a.basis()[i].adjoint() * a.basis()[j]).trace();
  const Mat v = linalg::orthonormal_span(linalg::hermitian_part(h), tol);

  Bimodule out;
  out.left = e.expectation.source;
  out.right = e.expectation.target;
  out.carrier_dim = v.cols();
  for (const auto& x : a.basis()) out.left_action.push_back(v.adjoint() * a.left_multiplication(x) * v);
  for (const auto& y : e.inclusion.source->basis())
    out.right_action.push_back(v.adjoint() * right_multiplication(a, e.inclusion(y)) * v);
  std::vector<Mat> lifts;
  for (Eigen::Index k = 0; k < v.cols(); ++k) lifts.push_back(a.element(v.col(k)));
  std::vector<Mat> gram;
  for (const auto& x : lifts)
    for (const auto& y : lifts) gram.push_back(e.expectation(x.adjoint() * y));
  out.gram = std::move(gram);
  return out;
}

Bimodule compose_bimodules(const Bimodule& m, const Bimodule& n, double tol) {
  if (!same_algebra(m.right, n.left, tol))
    throw Error(ErrorKind::AlgebraMismatch, "right algebra of the first bimodule differs from left algebra of the second");
  const Eigen::Index p = m.carrier_dim, q = n.carrier_dim;
  const Mat ip = Mat::Identity(p, p), iq = Mat::Identity(q, q);
  const auto& mid = m.right->basis();

  // (x . b) (x) y - x (x) (b . y), for b over the middle basis.
  Mat relations(p * q, p * q * static_cast<Eigen::Index>(mid.size()));
  for (std::size_t k = 0; k < mid.size(); ++k)
    relations.middleCols(static_cast<Eigen::Index>(k) * p * q, p * q) =
        linalg::kron(m.right_action[k], iq) - linalg::kron(ip, n.left_of(mid[k]));
  const Mat complement = mid.empty() ? Mat(Mat::Identity(p * q, p * q)) : linalg::nullspace(relations.adjoint(), tol);

  Bimodule out;
  out.left = m.left;
  out.right = n.right;
  out.carrier_dim = complement.cols();
  for (const auto& l : m.left_action) out.left_action.push_back(complement.adjoint() * linalg::kron(l, iq) * complement);
  for (const auto& r : n.right_action) out.right_action.push_back(complement.adjoint() * linalg::kron(ip, r) * complement);
  return out;
}

CheckReport check_intertwiner(const Intertwiner& t, double tol) {
  const Bimodule& s = *t.source;
  const Bimodule& g = *t.target;
  if (!same_algebra(s.left, g.left, tol) || !same_algebra(s.right, g.right, tol))
    throw Error(ErrorKind::AlgebraMismatch, "intertwiner endpoints act by different algebras");
  if (t.map.rows() != g.carrier_dim || t.map.cols() != s.carrier_dim)
    throw Error(ErrorKind::DimensionMismatch, "intertwiner map has the wrong shape");
  CheckReport r;
  const double tn = linalg::operator_norm(t.map);
  const auto run = [&](const char* label, const std::vector<Mat>& src, const std::vector<Mat>& dst) {
    for (std::size_t k = 0; k < src.size(); ++k) {
      const double res = rel((t.map * src[k] - dst[k] * t.map).norm(), tn * std::max(linalg::operator_norm(src[k]), 1.0));
      r.count("equations");
      r.observe(res);
      if (res > tol) r.add(label, {static_cast<std::int64_t>(k)}, res);
    }
  };
  std::vector<Mat> gl, gr;
  for (const auto& a : s.left->basis()) gl.push_back(g.left_of(a));
  for (const auto& b : s.right->basis()) gr.push_back(g.right_of(b));
  run("left_intertwining", s.left_action, gl);
  run("right_intertwining", s.right_action, gr);
  r.canonicalize();
  return r;
}

std::vector<Mat> intertwiner_space(const Bimodule& source, const Bimodule& target, double tol) {
  if (!same_algebra(source.left, target.left, tol) || !same_algebra(source.right, target.right, tol))
    throw Error(ErrorKind::AlgebraMismatch, "bimodules act by different algebras");
  const Eigen::Index p = source.carrier_dim, q = target.carrier_dim;
  const Mat ip = Mat::Identity(p, p), iq = Mat::Identity(q, q);
  std::vector<Mat> blocks;
  // vec(T S - G T) = (S^T (x) I - I (x) G) vec(T)
  for (const auto& a : source.left->basis())
    blocks.push_back(linalg::kron(source.left_of(a).transpose(), iq) - linalg::kron(ip, target.left_of(a)));
  for (const auto& b : source.right->basis())
    blocks.push_back(linalg::kron(source.right_of(b).transpose(), iq) - linalg::kron(ip, target.right_of(b)));
  Mat system(static_cast<Eigen::Index>(blocks.size()) * p * q, p * q);
  for (std::size_t k = 0; k < blocks.size(); ++k) system.middleRows(static_cast<Eigen::Index>(k) * p * q, p * q) = blocks[k];
  const Mat null = linalg::nullspace(system, tol);
  std::vector<Mat> out;
  for (Eigen::Index c = 0; c < null.cols(); ++c) out.push_back(linalg::unvec(null.col(c), q, p));
  return out;
}

std::optional<Mat> find_isomorphism(const Bimodule& source, const Bimodule& target, std::uint64_t seed, double tol) {
  if (source.carrier_dim != target.carrier_dim) return std::nullopt;
  const auto space = intertwiner_space(source, target, tol);
  if (space.empty()) return std::nullopt;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  Mat t = Mat::Zero(target.carrier_dim, source.carrier_dim);
  for (const auto& s : space) t += Cx(gauss(rng), gauss(rng)) * s;
  if (linalg::rank(t, tol) != t.rows()) return std::nullopt;
  return t;
}

Json bimodule_to_json(const Bimodule& m) {
  Json out;
  out["left_dim"] = m.left->dim();
  out["right_dim"] = m.right->dim();
  out["carrier_dim"] = m.carrier_dim;
  Json la = Json::array(), ra = Json::array();
  for (const auto& l : m.left_action) la.push_back(vector_to_json(linalg::vec(l)));
  for (const auto& r : m.right_action) ra.push_back(vector_to_json(linalg::vec(r)));
  out["left_action"] = std::move(la);
  out["right_action"] = std::move(ra);
  out["has_inner_product"] = m.gram.has_value();
  return out;
}

}  // namespace hcstar

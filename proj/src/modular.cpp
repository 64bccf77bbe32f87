#include "hcstar/modular.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <random>
#include <string>

#include "hcstar/error.hpp"
#include "hcstar/json_io.hpp"

namespace hcstar {

namespace {

Mat pinv(const Mat& a) { return a.completeOrthogonalDecomposition().pseudoInverse(); }

double rel(double diff, double scale) { return diff / std::max(1.0, scale); }

Subspace subspace_from_coordinates(const FiniteStarAlgebra& alg, const Mat& coords, double tol) {
  std::vector<Mat> elements;
  for (Eigen::Index c = 0; c < coords.cols(); ++c) elements.push_back(alg.element(coords.col(c)));
  if (elements.empty()) return Subspace::zero(alg.ambient_dim(), alg.ambient_dim());
  return Subspace::spanned_by(alg.ambient_dim(), alg.ambient_dim(), elements, tol);
}

void require_inside(const FiniteStarAlgebra& ambient, const FiniteStarAlgebra& sub, double tol) {
  if (ambient.ambient_dim() != sub.ambient_dim())
    throw Error(ErrorKind::NotSubalgebra, "subalgebra acts on a different space");
  for (std::size_t i = 0; i < sub.basis().size(); ++i)
    if (!ambient.contains(sub.basis()[i], tol))
      throw Error(ErrorKind::NotSubalgebra, "basis element " + std::to_string(i) + " lies outside the ambient algebra");
}

}  // namespace

Mat GnsData::represent(const Mat& x) const { return quotient * algebra.left_multiplication(x) * coefficients; }

Cx GnsData::expectation(const Mat& x) const { return cyclic_vector.dot(represent(x) * cyclic_vector); }

Mat orbit_matrix(const GnsData& g) {
  Mat v(g.space_dim(), static_cast<Eigen::Index>(g.basis_images.size()));
  for (std::size_t i = 0; i < g.basis_images.size(); ++i)
    v.col(static_cast<Eigen::Index>(i)) = g.basis_images[i] * g.cyclic_vector;
  return v;
}

GnsData gns(const FiniteStarAlgebra& alg, const State& omega, double tol) {
  if (omega.ambient_dim() != alg.ambient_dim())
    throw Error(ErrorKind::DimensionMismatch, "state and algebra live on different spaces");
  bool adjoined = false;
  FiniteStarAlgebra a = alg.unitization(&adjoined);
  const Cx norm = omega(*a.unit());
  if (std::abs(norm - Cx(1.0)) > tol)
    throw Error(ErrorKind::InvalidState, "state does not take the value 1 on the unit of the algebra");

  const auto m = a.dim();
  Mat gram(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) gram(i, j) = omega(a.basis()[i].adjoint() * a.basis()[j]);
  gram = linalg::hermitian_part(gram);
  const double mu_max = std::max(0.0, linalg::hermitian_eigenvalues(gram).maxCoeff());

  // Modified Gram-Schmidt for <u, v> = u^* G v, in basis order.
  std::vector<Vec> fs;
  for (Eigen::Index i = 0; i < m; ++i) {
    Vec v = Vec::Unit(m, i);
    for (const auto& f : fs) v -= f * f.dot(gram * v);
    const double n2 = std::real(v.dot(gram * v));
    if (n2 > tol * mu_max) fs.push_back(v / std::sqrt(n2));
  }
  Mat c(m, static_cast<Eigen::Index>(fs.size()));
  for (std::size_t k = 0; k < fs.size(); ++k) c.col(static_cast<Eigen::Index>(k)) = fs[k];

  GnsData g{a, adjoined, gram, c, c.adjoint() * gram, {}, {}};
  for (const auto& b : g.algebra.basis()) g.basis_images.push_back(g.represent(b));
  g.cyclic_vector = g.quotient * g.algebra.coordinates(*g.algebra.unit());
  return g;
}

bool is_separating(const GnsData& g, double tol) {
  Mat ops(g.space_dim() * g.space_dim(), static_cast<Eigen::Index>(g.basis_images.size()));
  for (std::size_t i = 0; i < g.basis_images.size(); ++i)
    ops.col(static_cast<Eigen::Index>(i)) = linalg::vec(g.basis_images[i]);
  return linalg::rank(orbit_matrix(g), tol) == linalg::rank(ops, tol);
}

RealVec ModularTuple::delta_eigenvalues() const {
  RealVec w = linalg::hermitian_eigenvalues(delta);
  std::sort(w.data(), w.data() + w.size(), std::greater<double>());
  return w;
}

Json ModularTuple::to_json() const {
  Json out;
  out["gns_dim"] = gns.space_dim();
  Json eig = Json::array();
  const RealVec w = delta_eigenvalues();
  for (Eigen::Index i = 0; i < w.size(); ++i) eig.push_back(w(i));
  out["delta_eigenvalues"] = std::move(eig);
  out["condition_number"] = condition_number;
  out["delta"] = matrix_to_json(delta);
  out["K"] = matrix_to_json(k);
  out["J"] = matrix_to_json(j.u);
  out["cyclic_vector"] = vector_to_json(gns.cyclic_vector);
  Json res;
  for (const auto& [key, value] : residuals) res[key] = value;
  out["residuals"] = std::move(res);
  out["notes"] = notes;
  return out;
}

ModularTuple modular_tuple(const FiniteStarAlgebra& alg, const State& omega, double tol) {
  GnsData g = gns(alg, omega, tol);
  if (!is_separating(g, tol))
    throw Error(ErrorKind::NotSeparating,
                "cyclic vector is not separating; restrict the state to its support projection first");

  const Mat v = orbit_matrix(g);
  Mat w(v.rows(), v.cols());
  for (std::size_t i = 0; i < g.basis_images.size(); ++i)
    w.col(static_cast<Eigen::Index>(i)) = g.represent(g.algebra.basis()[i].adjoint()) * g.cyclic_vector;

  ModularTuple mt{std::move(g), {}, {}, {}, {}, 1.0, {}, {}};
  mt.s.u = w * pinv(v.conjugate());
  mt.delta = linalg::hermitian_part(mt.s.u.transpose() * mt.s.u.conjugate());
  const RealVec ev = linalg::hermitian_eigenvalues(mt.delta);
  if (ev.minCoeff() <= 0.0) throw Error(ErrorKind::NotSeparating, "modular operator is not positive definite");
  mt.condition_number = ev.maxCoeff() / ev.minCoeff();
  if (mt.condition_number > 1e12)
    mt.notes.push_back("modular operator condition number " + std::to_string(mt.condition_number));

  const Mat inv_sqrt = linalg::hermitian_function(mt.delta, [](double x) { return Cx(1.0 / std::sqrt(x)); });
  const Mat sqrt_delta = linalg::hermitian_function(mt.delta, [](double x) { return Cx(std::sqrt(x)); });
  const Mat inv = linalg::hermitian_function(mt.delta, [](double x) { return Cx(1.0 / x); });
  mt.k = linalg::hermitian_function(mt.delta, [](double x) { return Cx(std::log(x)); });
  mt.j.u = mt.s.u * inv_sqrt.conjugate();

  const auto& gd = mt.gns;
  const Eigen::Index n = gd.space_dim();
  const Mat id = Mat::Identity(n, n);
  const Vec& xi = gd.cyclic_vector;

  double s_identity = 0.0;
  for (Eigen::Index i = 0; i < v.cols(); ++i)
    s_identity = std::max(s_identity, (mt.j.u * (sqrt_delta * v.col(i)).conjugate() - w.col(i)).norm());
  mt.residuals["s_identity"] = s_identity;
  mt.residuals["j_squared"] = (mt.j.then_linear(mt.j) - id).norm();
  mt.residuals["j_delta_j"] = rel((mt.j.sandwich(mt.delta) - inv).norm(), inv.norm());
  mt.residuals["j_xi"] = (mt.j.apply(xi) - xi).norm();
  mt.residuals["delta_xi"] = (mt.delta * xi - xi).norm();

  const Subspace comm = commutant(n, gd.basis_images, tol);
  double comm_res = 0.0;
  for (const auto& p : gd.basis_images) comm_res = std::max(comm_res, comm.residual(mt.j.sandwich(p)));
  mt.residuals["j_pi_j_commutant"] = comm_res;

  double state_res = 0.0;
  for (const auto& b : gd.algebra.basis()) state_res = std::max(state_res, std::abs(gd.expectation(b) - omega(b)));
  mt.residuals["state"] = state_res;
  return mt;
}

Mat modular_flow_operator(const ModularTuple& mt, const Mat& a, Cx z) {
  const Cx i(0.0, 1.0);
  const Mat fwd = linalg::hermitian_function(mt.delta, [&](double x) { return std::exp(i * z * std::log(x)); });
  const Mat bwd = linalg::hermitian_function(mt.delta, [&](double x) { return std::exp(-i * z * std::log(x)); });
  return fwd * a * bwd;
}

Mat modular_flow(const ModularTuple& mt, const Mat& a, Cx z) {
  return modular_flow_operator(mt, mt.gns.represent(a), z);
}

CheckReport kms_check(const GnsData& g, const Mat& generator, const KmsOptions& options) {
  const Eigen::Index n = g.space_dim();
  if (generator.rows() != n || generator.cols() != n)
    throw Error(ErrorKind::DimensionMismatch, "flow generator does not act on the GNS space");
  if (linalg::hermitian_eigenvalues(generator).minCoeff() <= 0.0)
    throw Error(ErrorKind::PreconditionViolated, "flow generator must be positive definite");
  const double beta = options.beta;
  const Mat up = linalg::hermitian_function(generator, [beta](double x) { return Cx(std::pow(x, beta)); });
  const Mat down = linalg::hermitian_function(generator, [beta](double x) { return Cx(std::pow(x, -beta)); });
  const Vec& xi = g.cyclic_vector;

  CheckReport report;
  const auto check = [&](const Mat& pa, const Mat& pb, std::vector<std::int64_t> witness) {
    const Cx lhs = xi.dot(pa * up * pb * down * xi);
    const Cx rhs = xi.dot(pb * pa * xi);
    const double r = std::abs(lhs - rhs) / std::max(1.0, linalg::operator_norm(pa) * linalg::operator_norm(pb));
    report.count("pairs_checked");
    report.observe(r);
    if (r > options.tol) report.add("kms", std::move(witness), r);
  };

  const auto m = static_cast<std::int64_t>(g.basis_images.size());
  for (std::int64_t i = 0; i < m; ++i)
    for (std::int64_t j = 0; j < m; ++j)
      check(g.basis_images[static_cast<std::size_t>(i)], g.basis_images[static_cast<std::size_t>(j)], {i, j});

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> gauss;
  const auto sample = [&] {
    Mat x = Mat::Zero(n, n);
    for (const auto& p : g.basis_images) x += Cx(gauss(rng), gauss(rng)) * p;
    return x;
  };
  for (int k = 0; k < options.samples; ++k) {
    const Mat a = sample();
    const Mat b = sample();
    check(a, b, {-1, k});
  }
  report.canonicalize();
  return report;
}

CheckReport kms_check(const ModularTuple& mt, const KmsOptions& options) {
  return kms_check(mt.gns, mt.delta, options);
}

Subspace centralizer(const FiniteStarAlgebra& alg, const State& omega, double tol) {
  if (omega.ambient_dim() != alg.ambient_dim())
    throw Error(ErrorKind::DimensionMismatch, "state and algebra live on different spaces");
  const auto m = alg.dim();
  const auto& b = alg.basis();
  Mat system(m, m);
  for (Eigen::Index j = 0; j < m; ++j)
    for (Eigen::Index i = 0; i < m; ++i) system(j, i) = omega(b[i] * b[j]) - omega(b[j] * b[i]);
  return subspace_from_coordinates(alg, linalg::nullspace(system, tol), tol);
}

Subspace flow_fixed_points(const ModularTuple& mt, const FiniteStarAlgebra& alg, double t, double tol) {
  const Eigen::Index n = mt.gns.space_dim();
  Mat system(n * n, alg.dim());
  for (Eigen::Index i = 0; i < alg.dim(); ++i) {
    const Mat p = mt.gns.represent(alg.basis()[i]);
    system.col(i) = linalg::vec(modular_flow_operator(mt, p, Cx(t)) - p);
  }
  return subspace_from_coordinates(alg, linalg::nullspace(system, tol), tol);
}

Subspace a_omega(const FiniteStarAlgebra& ambient, const FiniteStarAlgebra& sub, const State& omega, double tol) {
  require_inside(ambient, sub, tol);
  const ModularTuple mt = modular_tuple(sub, omega, tol);
  const Eigen::Index n = mt.gns.space_dim();
  const Subspace bic = bicommutant(n, mt.gns.basis_images, tol);
  Mat system(n * n, sub.dim());
  for (Eigen::Index i = 0; i < sub.dim(); ++i) {
    const Mat p = mt.gns.represent(sub.basis()[i]);
    const Mat c = mt.k * p - p * mt.k;
    system.col(i) = linalg::vec(c - bic.project(c));
  }
  return subspace_from_coordinates(sub, linalg::nullspace(system, tol), tol);
}

SupportRestriction restrict_to_support(const FiniteStarAlgebra& alg, const State& omega, double tol) {
  if (omega.ambient_dim() != alg.ambient_dim())
    throw Error(ErrorKind::DimensionMismatch, "state and algebra live on different spaces");
  const Mat rho = linalg::hermitian_part(alg.span().project(omega.density()));
  Eigen::SelfAdjointEigenSolver<Mat> es(rho);
  const RealVec& w = es.eigenvalues();
  const double cut = tol * std::max(1.0, w.maxCoeff());
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < w.size(); ++i)
    if (w(i) > cut) keep.push_back(i);
  Mat iso(rho.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) iso.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(keep[k]);

  std::vector<Mat> compressed;
  for (const auto& b : alg.basis()) compressed.push_back(iso.adjoint() * b * iso);
  const Eigen::Index r = iso.cols();
  return {rho, iso * iso.adjoint(), iso, FiniteStarAlgebra::generated_by(r, compressed, tol),
          State(iso.adjoint() * rho * iso, tol)};
}

std::vector<NetEntry> modular_geometry_net(const FiniteStarAlgebra& ambient, const State& omega,
                                           const std::vector<std::pair<std::string, FiniteStarAlgebra>>& subalgebras,
                                           const KmsOptions& options, double tol) {
  for (const auto& [name, sub] : subalgebras) require_inside(ambient, sub, tol);
  std::vector<NetEntry> out(subalgebras.size());
  std::vector<std::exception_ptr> errors(subalgebras.size());
  const auto count = static_cast<std::int64_t>(subalgebras.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < count; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    try {
      const auto& [name, sub] = subalgebras[idx];
      NetEntry e;
      e.name = name;
      e.algebra_dim = sub.dim();
      const GnsData g = gns(sub, omega, tol);
      e.faithful = is_separating(g, tol);
      if (e.faithful) {
        e.tuple = modular_tuple(sub, omega, tol);
        e.kms = kms_check(*e.tuple, options);
        e.a_omega_dim = a_omega(ambient, sub, omega, tol).dim();
      } else {
        e.support = restrict_to_support(sub, omega, tol).support;
      }
      out[idx] = std::move(e);
    } catch (...) {
      errors[idx] = std::current_exception();
    }
  }
  for (const auto& err : errors)
    if (err) std::rethrow_exception(err);
  return out;
}

Json gns_to_json(const GnsData& g, double tol) {
  Json out;
  out["space_dim"] = g.space_dim();
  out["null_space_dim"] = g.null_space_dim();
  out["unit_adjoined"] = g.unit_adjoined;
  out["separating"] = is_separating(g, tol);
  out["cyclic_vector"] = vector_to_json(g.cyclic_vector);
  Json reps = Json::array();
  for (const auto& p : g.basis_images) reps.push_back(matrix_to_json(p));
  out["representation"] = std::move(reps);
  return out;
}

Json net_entry_to_json(const NetEntry& e) {
  Json out;
  out["name"] = e.name;
  out["algebra_dim"] = e.algebra_dim;
  out["faithful"] = e.faithful;
  if (e.faithful) {
    out["a_omega_dim"] = e.a_omega_dim;
    out["modular_tuple"] = e.tuple->to_json();
    out["kms"] = e.kms->to_json();
  } else {
    out["support"] = matrix_to_json(e.support);
  }
  return out;
}

}  // namespace hcstar

#include "hcstar/hyperconv.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "hcstar/error.hpp"
#include "hcstar/fixtures.hpp"

namespace hcstar {

namespace {

Mat left_matrix(const BilinearStructure& s, const Vec& a) {
  Mat l(s.carrier_dim, s.carrier_dim);
  for (Eigen::Index j = 0; j < s.carrier_dim; ++j) l.col(j) = s.product(a, Vec::Unit(s.carrier_dim, j));
  return l;
}

double rel(double diff, double scale) { return diff / std::max(1.0, scale); }

}  // namespace

StructureResiduals structure_residuals(const BilinearStructure& s) {
  std::vector<Mat> ls;
  for (const auto& e : s.element_basis) ls.push_back(left_matrix(s, e));
  StructureResiduals r;
  for (std::size_t i = 0; i < ls.size(); ++i) {
    for (std::size_t j = 0; j < ls.size(); ++j) {
      const Mat lab = left_matrix(s, s.product(s.element_basis[i], s.element_basis[j]));
      const Mat prod = ls[i] * ls[j];
      r.associativity = std::max(r.associativity, rel((prod - lab).norm(), prod.norm()));
    }
    if (!s.involution) continue;
    const Mat lstar = left_matrix(s, s.involution(s.element_basis[i]));
    r.star = std::max(r.star, rel((lstar - ls[i].adjoint()).norm(), ls[i].norm()));
  }
  return r;
}

RegularRepresentation regular_representation(const BilinearStructure& s, double tol,
                                             bool require_star) {
  if (require_star && !s.involution) throw Error(ErrorKind::MissingInvolution, "structure has no involution");
  const StructureResiduals r = structure_residuals(s);
  if (r.associativity > tol)
    throw Error(ErrorKind::NonAssociative,
                "left multiplication is not multiplicative, residual " + std::to_string(r.associativity));
  if (require_star && r.star > tol)
    throw Error(ErrorKind::NonStarRepresentation,
                "left multiplication is not a *-representation, residual " + std::to_string(r.star));
  std::vector<Mat> ls;
  for (const auto& e : s.element_basis) ls.push_back(left_matrix(s, e));
  return {FiniteStarAlgebra(s.carrier_dim, std::move(ls), std::nullopt, tol), r.associativity, r.star};
}

BilinearStructure hypermatrix_structure(const std::vector<int>& factor_sizes, Mode product,
                                        Mode involution) {
  const Hypermatrix shape(factor_sizes);
  BilinearStructure s;
  s.carrier_dim = shape.size();
  for (Eigen::Index k = 0; k < s.carrier_dim; ++k) s.element_basis.push_back(Vec::Unit(s.carrier_dim, k));
  s.product = [factor_sizes, product](const Vec& a, const Vec& b) {
    return hypermatrix_product(Hypermatrix(factor_sizes, a), Hypermatrix(factor_sizes, b), product).entries();
  };
  s.involution = [factor_sizes, involution](const Vec& a) {
    return hypermatrix_involution(Hypermatrix(factor_sizes, a), involution).entries();
  };
  return s;
}

ConvolutionAlgebra::ConvolutionAlgebra(std::shared_ptr<const GlobularCategory> base,
                                       InvolutionFamily involutions,
                                       std::shared_ptr<const FiniteStarAlgebra> coefficients)
    : base_(std::move(base)), involutions_(std::move(involutions)), coefficients_(std::move(coefficients)) {
  if (!base_ || !coefficients_) throw Error(ErrorKind::InvalidBase, "convolution algebra needs a base and coefficients");
}

HyperSection::HyperSection(std::shared_ptr<const ConvolutionAlgebra> algebra) : algebra_(std::move(algebra)) {}

HyperSection HyperSection::delta(std::shared_ptr<const ConvolutionAlgebra> algebra, CellId cell,
                                 const Mat& coefficient) {
  HyperSection s(std::move(algebra));
  s.set(cell, coefficient);
  return s;
}

HyperSection HyperSection::unit(std::shared_ptr<const ConvolutionAlgebra> algebra, int level) {
  const auto& unit = algebra->coefficients().unit();
  if (!unit) throw Error(ErrorKind::PreconditionViolated, "coefficient algebra has no unit");
  if (level < 0 || level >= algebra->base().depth())
    throw Error(ErrorKind::PreconditionViolated, "level out of range");
  HyperSection s(algebra);
  for (CellId i : algebra->base().identities(level)) s.add(i, *unit);
  return s;
}

HyperSection HyperSection::from_vector(std::shared_ptr<const ConvolutionAlgebra> algebra, const Vec& v) {
  const Eigen::Index d = algebra->coefficient_dim();
  if (v.size() != algebra->carrier_dim()) throw Error(ErrorKind::DimensionMismatch, "vector length does not match the carrier");
  HyperSection s(algebra);
  for (CellId x = 0; x < algebra->base().size(); ++x) {
    const Vec block = v.segment(static_cast<Eigen::Index>(x) * d * d, d * d);
    if (block.norm() > 0.0) s.coeffs_[x] = linalg::unvec(block, d, d);
  }
  return s;
}

Mat HyperSection::at(CellId cell) const {
  const auto it = coeffs_.find(cell);
  if (it != coeffs_.end()) return it->second;
  const Eigen::Index d = algebra_->coefficient_dim();
  return Mat::Zero(d, d);
}

void HyperSection::set(CellId cell, const Mat& coefficient, double tol) {
  if (cell < 0 || cell >= algebra_->base().size()) throw Error(ErrorKind::InvalidCategory, "cell out of range");
  const Eigen::Index d = algebra_->coefficient_dim();
  if (coefficient.rows() != d || coefficient.cols() != d)
    throw Error(ErrorKind::DimensionMismatch, "coefficient has the wrong size");
  algebra_->coefficients().require_member(coefficient, tol);
  if (coefficient.norm() == 0.0)
    coeffs_.erase(cell);
  else
    coeffs_[cell] = coefficient;
}

void HyperSection::add(CellId cell, const Mat& coefficient) {
  auto [it, inserted] = coeffs_.try_emplace(cell, coefficient);
  if (!inserted) it->second += coefficient;
}

Vec HyperSection::to_vector() const {
  const Eigen::Index d = algebra_->coefficient_dim();
  Vec v = Vec::Zero(algebra_->carrier_dim());
  for (const auto& [x, m] : coeffs_) v.segment(static_cast<Eigen::Index>(x) * d * d, d * d) = linalg::vec(m);
  return v;
}

double HyperSection::distance(const HyperSection& other) const { return (to_vector() - other.to_vector()).norm(); }

HyperSection HyperSection::operator+(const HyperSection& other) const {
  if (algebra_ != other.algebra_) throw Error(ErrorKind::BaseMismatch, "sections live over different algebras");
  HyperSection out = *this;
  for (const auto& [x, m] : other.coeffs_) out.add(x, m);
  return out;
}

HyperSection HyperSection::operator*(Cx scalar) const {
  HyperSection out = *this;
  for (auto& [x, m] : out.coeffs_) m *= scalar;
  return out;
}

HyperSection hyper_convolve(const HyperSection& sigma, const HyperSection& rho, int level) {
  if (sigma.algebra_ptr() != rho.algebra_ptr())
    throw Error(ErrorKind::BaseMismatch, "sections live over different algebras");
  const auto& cat = sigma.algebra().base();
  if (level < 0 || level >= cat.depth()) throw Error(ErrorKind::PreconditionViolated, "level out of range");
  HyperSection out(sigma.algebra_ptr());
  for (const auto& [x, a] : sigma.coefficients())
    for (const auto& [y, b] : rho.coefficients())
      if (const auto z = cat.try_compose(level, x, y)) out.add(*z, a * b);
  return out;
}

HyperSection hyper_involute(const HyperSection& sigma, int level) {
  const Involution* inv = sigma.algebra().involutions().for_level(level);
  if (!inv) throw Error(ErrorKind::MissingInvolution, "no involution for level " + std::to_string(level));
  HyperSection out(sigma.algebra_ptr());
  for (const auto& [x, a] : sigma.coefficients()) out.add(inv->map[static_cast<std::size_t>(x)], a.adjoint());
  return out;
}

BilinearStructure convolution_structure(std::shared_ptr<const ConvolutionAlgebra> algebra, int level) {
  BilinearStructure s;
  s.carrier_dim = algebra->carrier_dim();
  for (CellId x = 0; x < algebra->base().size(); ++x)
    for (const auto& b : algebra->coefficients().basis())
      s.element_basis.push_back(HyperSection::delta(algebra, x, b).to_vector());
  s.product = [algebra, level](const Vec& a, const Vec& b) {
    return hyper_convolve(HyperSection::from_vector(algebra, a), HyperSection::from_vector(algebra, b), level)
        .to_vector();
  };
  if (algebra->involutions().for_level(level))
    s.involution = [algebra, level](const Vec& a) {
      return hyper_involute(HyperSection::from_vector(algebra, a), level).to_vector();
    };
  return s;
}

Mat left_regular(const HyperSection& sigma, int level) {
  const auto& alg = sigma.algebra();
  const auto& cat = alg.base();
  const Eigen::Index d = alg.coefficient_dim();
  const Eigen::Index b = d * d;
  Mat l = Mat::Zero(alg.carrier_dim(), alg.carrier_dim());
  const Mat id = Mat::Identity(d, d);
  for (const auto& [x, a] : sigma.coefficients()) {
    const Mat block = linalg::kron(id, a);  // vec(a m) = (I (x) a) vec(m)
    for (const auto& e : cat.entries(level))
      if (e.x == x) l.block(static_cast<Eigen::Index>(e.result) * b, static_cast<Eigen::Index>(e.y) * b, b, b) += block;
  }
  return l;
}

bool HyperCStarReport::passed() const {
  return std::all_of(results.begin(), results.end(), [](const AxiomResult& r) { return r.report.passed(); });
}

const AxiomResult* HyperCStarReport::find(const std::string& axiom, int level) const {
  for (const auto& r : results)
    if (r.axiom == axiom && r.level == level) return &r;
  return nullptr;
}

Json HyperCStarReport::to_json() const {
  Json out;
  out["passed"] = passed();
  out["tolerance"] = tolerance;
  Json items = Json::array();
  for (const auto& r : results) {
    Json item;
    item["axiom"] = r.axiom;
    item["level"] = r.level;
    item["report"] = r.report.to_json();
    items.push_back(std::move(item));
  }
  out["results"] = std::move(items);
  return out;
}

namespace {

class SectionSampler {
 public:
  SectionSampler(std::shared_ptr<const ConvolutionAlgebra> alg, std::uint64_t seed) : alg_(std::move(alg)), rng_(seed) {}

  Cx scalar() { return {gauss_(rng_), gauss_(rng_)}; }

  HyperSection section() {
    const auto& coeffs = alg_->coefficients();
    HyperSection s(alg_);
    for (CellId x = 0; x < alg_->base().size(); ++x) {
      Vec c(coeffs.dim());
      for (Eigen::Index k = 0; k < c.size(); ++k) c(k) = scalar();
      s.add(x, coeffs.element(c));
    }
    return s;
  }

 private:
  std::shared_ptr<const ConvolutionAlgebra> alg_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> gauss_;
};

std::vector<std::int64_t> cell_witness(const HyperSection& s, std::int64_t index) {
  std::vector<std::int64_t> w{index};
  if (s.coefficients().size() == 1) w.push_back(s.coefficients().begin()->first);
  return w;
}

void check_level(int level,
                 const std::vector<HyperSection>& elements, const std::vector<Cx>& scalars,
                 double tol, HyperCStarReport& out) {
  CheckReport star_rep, fiber, bilinear, submult, cstar, positive;
  std::vector<Mat> regs;
  std::vector<double> norms;
  regs.reserve(elements.size());
  for (const auto& e : elements) {
    regs.push_back(left_regular(e, level));
    norms.push_back(linalg::operator_norm(regs.back()));
  }

  const std::size_t n = elements.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = elements[i];
    const auto idx = static_cast<std::int64_t>(i);
    const HyperSection st = hyper_involute(s, level);
    const Mat lst = left_regular(st, level);

    const double sr = rel((lst - regs[i].adjoint()).norm(), regs[i].norm());
    star_rep.count("elements");
    star_rep.observe(sr);
    if (sr > tol) star_rep.add("star_representation", cell_witness(s, idx), sr);

    double fmax = 0.0;
    for (const auto& [x, a] : s.coefficients()) fmax = std::max(fmax, linalg::operator_norm(a));
    const double fr = std::max(0.0, fmax - norms[i]) / (1.0 + norms[i]);
    fiber.count("elements");
    fiber.observe(fr);
    if (fr > tol || (fmax > tol && norms[i] <= tol)) fiber.add("fiber_norm", cell_witness(s, idx), fr);

    const double ir = rel(hyper_involute(st, level).distance(s), s.to_vector().norm());
    bilinear.observe(ir);
    if (ir > tol) bilinear.add("involutive", cell_witness(s, idx), ir);

    const HyperSection sts = hyper_convolve(st, s, level);
    const Mat l = left_regular(sts, level);
    const double cr = std::abs(linalg::operator_norm(l) - norms[i] * norms[i]) / (1.0 + norms[i] * norms[i]);
    cstar.count("elements");
    cstar.observe(cr);
    if (cr > tol) cstar.add("cstar_identity", cell_witness(s, idx), cr);

    const double scale = std::max(1.0, norms[i] * norms[i]);
    positive.count("elements");
    if (!is_positive_matrix(l / scale, tol)) {
      const double low = -linalg::hermitian_eigenvalues(l).minCoeff() / scale;
      positive.observe(low);
      positive.add("positivity", cell_witness(s, idx), low);
    }
  }

  // Pairs (i, i + 1) cycle through all elements.
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n, k = (i + 2) % n;
    const auto &a = elements[i], &b = elements[j], &c = elements[k];
    const Cx lambda = scalars[i % scalars.size()];
    const std::vector<std::int64_t> w{static_cast<std::int64_t>(i), static_cast<std::int64_t>(j)};

    const HyperSection ab = hyper_convolve(a, b, level);
    const double nab = linalg::operator_norm(left_regular(ab, level));
    const double mr = std::max(0.0, nab - norms[i] * norms[j]) / (1.0 + norms[i] * norms[j]);
    submult.count("pairs");
    submult.observe(mr);
    if (mr > tol) submult.add("submultiplicativity", w, mr);

    const HyperSection lhs_l = hyper_convolve(a * lambda + b, c, level);
    const HyperSection rhs_l = hyper_convolve(a, c, level) * lambda + hyper_convolve(b, c, level);
    const HyperSection lhs_r = hyper_convolve(c, a * lambda + b, level);
    const HyperSection rhs_r = hyper_convolve(c, a, level) * lambda + hyper_convolve(c, b, level);
    const HyperSection lhs_s = hyper_involute(a * lambda + b, level);
    const HyperSection rhs_s = hyper_involute(a, level) * std::conj(lambda) + hyper_involute(b, level);
    const HyperSection lhs_m = hyper_involute(ab, level);
    const HyperSection rhs_m = hyper_convolve(hyper_involute(b, level), hyper_involute(a, level), level);
    const double scale = std::max(1.0, lhs_l.to_vector().norm() + lhs_r.to_vector().norm());
    const struct {
      const char* label;
      double r;
    } checks[] = {{"linear_left", lhs_l.distance(rhs_l) / scale},
                  {"linear_right", lhs_r.distance(rhs_r) / scale},
                  {"conjugate_linear", rel(lhs_s.distance(rhs_s), lhs_s.to_vector().norm())},
                  {"anti_multiplicative", rel(lhs_m.distance(rhs_m), lhs_m.to_vector().norm())}};
    bilinear.count("pairs");
    for (const auto& ch : checks) {
      bilinear.observe(ch.r);
      if (ch.r > tol) bilinear.add(ch.label, w, ch.r);
    }
  }

  for (auto* r : {&star_rep, &fiber, &bilinear, &submult, &cstar, &positive}) r->canonicalize();
  out.results.push_back({"star_representation", level, std::move(star_rep)});
  out.results.push_back({"fiber_norm", level, std::move(fiber)});
  out.results.push_back({"bilinearity", level, std::move(bilinear)});
  out.results.push_back({"submultiplicativity", level, std::move(submult)});
  out.results.push_back({"cstar_identity", level, std::move(cstar)});
  out.results.push_back({"positivity", level, std::move(positive)});
}

}  // namespace

HyperCStarReport verify_hyper_cstar(std::shared_ptr<const ConvolutionAlgebra> algebra,
                                    const VerifyOptions& options) {
  const auto& cat = algebra->base();
  HyperCStarReport out;
  out.tolerance = options.tol;

  CheckReport axioms = check_category_axioms(cat);
  if (!axioms.passed())
    throw Error(ErrorKind::InvalidBase, "base fails the category axioms (" + axioms.violations.front().axiom + ")");
  CheckReport nc = check_noncommutative_exchange(cat);
  if (!nc.passed())
    throw Error(ErrorKind::InvalidBase, "base fails the non-commutative exchange law (" + nc.violations.front().axiom + ")");
  out.results.push_back({"category_axioms", -1, std::move(axioms)});
  out.results.push_back({"noncommutative_exchange", -1, std::move(nc)});
  out.results.push_back({"involutions", -1, check_involutions(cat, algebra->involutions())});

  CheckReport full;
  const auto fi = check_fully_involutive(algebra->involutions(), cat.depth());
  full.count("generated_sets", fi.generated.size());
  if (!fi.fully_involutive) full.notes.push_back("involution index sets do not generate every subset");
  out.results.push_back({"fully_involutive", -1, std::move(full)});

  std::vector<HyperSection> elements;
  for (CellId x = 0; x < cat.size(); ++x)
    for (const auto& b : algebra->coefficients().basis()) elements.push_back(HyperSection::delta(algebra, x, b));
  SectionSampler sampler(algebra, options.seed);
  for (int i = 0; i < options.samples; ++i) elements.push_back(sampler.section());
  std::vector<Cx> scalars;
  for (int i = 0; i < 16; ++i) scalars.push_back(sampler.scalar());

  for (int level = 0; level < cat.depth(); ++level)
    if (algebra->involutions().for_level(level)) check_level(level, elements, scalars, options.tol, out);
  return out;
}

HyperCStarReport verify_hypermatrix_mode(const std::vector<int>& factor_sizes, Mode mode,
                                         const VerifyOptions& options) {
  auto ic = fixtures::hypermatrix_index_category(factor_sizes, mode);
  auto alg = std::make_shared<const ConvolutionAlgebra>(
      std::make_shared<const GlobularCategory>(std::move(ic.category)), std::move(ic.involutions),
      std::make_shared<const FiniteStarAlgebra>(FiniteStarAlgebra::scalars(1)));
  HyperCStarReport out = verify_hyper_cstar(alg, options);

  // The o_0 convolution of the index category is the mode product.
  CheckReport agree;
  SectionSampler sampler(alg, options.seed ^ 0x9e3779b97f4a7c15ULL);
  for (int i = 0; i < options.samples; ++i) {
    const HyperSection a = sampler.section(), b = sampler.section();
    const Vec conv = hyper_convolve(a, b, 0).to_vector();
    const Vec kern = hypermatrix_product(Hypermatrix(factor_sizes, a.to_vector()),
                                         Hypermatrix(factor_sizes, b.to_vector()), mode)
                         .entries();
    const double r = rel((conv - kern).norm(), kern.norm());
    agree.count("samples");
    agree.observe(r);
    if (r > options.tol) agree.add("mode_product", {i}, r);
  }
  out.results.push_back({"mode_product", 0, std::move(agree)});
  return out;
}

}  // namespace hcstar

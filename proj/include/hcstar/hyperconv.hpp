#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "hcstar/algebra.hpp"
#include "hcstar/globular.hpp"
#include "hcstar/hypermatrix.hpp"
#include "hcstar/report.hpp"

namespace hcstar {

/// A bilinear product with an involution on a finite-dimensional carrier,
/// together with the vectors spanning the algebra inside the carrier. This is
/// the common input of regular_representation() for hypermatrix modes and
/// convolution levels.
struct BilinearStructure {
  Eigen::Index carrier_dim = 0;
  std::vector<Vec> element_basis;
  std::function<Vec(const Vec&, const Vec&)> product;
  std::function<Vec(const Vec&)> involution;  // empty when the level has none
};

struct RegularRepresentation {
  FiniteStarAlgebra algebra;  // basis[k] = left multiplication by element_basis[k]
  double associativity_residual = 0.0;
  double star_residual = 0.0;

  /// Left multiplication by sum_k coords[k] * element_basis[k].
  Mat represent(const Vec& coords) const { return algebra.element(coords); }
};

struct StructureResiduals {
  double associativity = 0.0;  // max over basis pairs of ||L_a L_b - L_{ab}||
  double star = 0.0;           // max over the basis of ||L_{a*} - L_a^dagger||; 0 without involution
};
StructureResiduals structure_residuals(const BilinearStructure& s);

/// Left-multiplication representation on the carrier with its standard inner
/// product. Throws NonAssociative when L_a L_b != L_{ab} on basis pairs and,
/// if `require_star`, NonStarRepresentation when L_{a*} != (L_a)^dagger.
RegularRepresentation regular_representation(const BilinearStructure& s,
                                             double tol = default_tolerance(),
                                             bool require_star = true);

BilinearStructure hypermatrix_structure(const std::vector<int>& factor_sizes, Mode product,
                                        Mode involution);

/// M_X(A): sections of the trivial A-bundle over a finite involutive
/// n-category X. Coefficients are d x d matrices of A's representation.
class ConvolutionAlgebra {
 public:
  ConvolutionAlgebra(std::shared_ptr<const GlobularCategory> base, InvolutionFamily involutions,
                     std::shared_ptr<const FiniteStarAlgebra> coefficients);

  const GlobularCategory& base() const { return *base_; }
  const InvolutionFamily& involutions() const { return involutions_; }
  const FiniteStarAlgebra& coefficients() const { return *coefficients_; }
  Eigen::Index coefficient_dim() const { return coefficients_->ambient_dim(); }
  /// Carrier of the regular representation: one d x d block per cell.
  Eigen::Index carrier_dim() const {
    return static_cast<Eigen::Index>(base_->size()) * coefficient_dim() * coefficient_dim();
  }
  /// Dimension of M_X(A) as a vector space.
  Eigen::Index dim() const { return static_cast<Eigen::Index>(base_->size()) * coefficients_->dim(); }

 private:
  std::shared_ptr<const GlobularCategory> base_;
  InvolutionFamily involutions_;
  std::shared_ptr<const FiniteStarAlgebra> coefficients_;
};

/// Sparse section sigma: cell -> coefficient (absent cells are zero).
class HyperSection {
 public:
  explicit HyperSection(std::shared_ptr<const ConvolutionAlgebra> algebra);

  static HyperSection delta(std::shared_ptr<const ConvolutionAlgebra> algebra, CellId cell,
                            const Mat& coefficient);
  /// Sum of delta_iota (x) 1_A over the o_level identities. Needs a unital A.
  static HyperSection unit(std::shared_ptr<const ConvolutionAlgebra> algebra, int level);
  /// Inverse of to_vector(); blocks are vec(sigma_x), cell-major.
  static HyperSection from_vector(std::shared_ptr<const ConvolutionAlgebra> algebra, const Vec& v);

  const ConvolutionAlgebra& algebra() const { return *algebra_; }
  const std::shared_ptr<const ConvolutionAlgebra>& algebra_ptr() const { return algebra_; }
  const std::map<CellId, Mat>& coefficients() const { return coeffs_; }
  Mat at(CellId cell) const;
  /// Checks membership of the coefficient in A; zero coefficients are dropped.
  void set(CellId cell, const Mat& coefficient, double tol = default_tolerance());
  void add(CellId cell, const Mat& coefficient);

  Vec to_vector() const;
  double distance(const HyperSection& other) const;

  HyperSection operator+(const HyperSection& other) const;
  HyperSection operator*(Cx scalar) const;

 private:
  std::shared_ptr<const ConvolutionAlgebra> algebra_;
  std::map<CellId, Mat> coeffs_;
};

/// (sigma o_p rho)_z = sum over x o_p y = z of sigma_x rho_y.
HyperSection hyper_convolve(const HyperSection& sigma, const HyperSection& rho, int level);
/// (sigma^{*_p})_z = (sigma_{z^{*_p}})^*.
HyperSection hyper_involute(const HyperSection& sigma, int level);

BilinearStructure convolution_structure(std::shared_ptr<const ConvolutionAlgebra> algebra, int level);
/// Left multiplication by sigma under o_level on the carrier.
Mat left_regular(const HyperSection& sigma, int level);

struct VerifyOptions {
  int samples = 64;
  std::uint64_t seed = 0;
  double tol = default_tolerance();
};

/// One entry per checked axiom and level (level -1 for level-independent
/// preconditions).
struct AxiomResult {
  std::string axiom;
  int level = -1;
  CheckReport report;
};

struct HyperCStarReport {
  std::vector<AxiomResult> results;
  double tolerance = 0.0;

  bool passed() const;
  const AxiomResult* find(const std::string& axiom, int level) const;
  Json to_json() const;
};

/// Builds M_X(A) and checks the quantum n-C*-category axioms numerically:
/// fiber norms, bilinearity, submultiplicativity, the C*-identity and
/// positivity, on every delta element and on seeded random sections, for
/// each level carrying an involution. Throws InvalidBase when the base fails
/// the category axioms or the non-commutative exchange property.
HyperCStarReport verify_hyper_cstar(std::shared_ptr<const ConvolutionAlgebra> algebra,
                                    const VerifyOptions& options = {});

/// The same battery for the hyper-C*-algebra of depth-n hypermatrices, for
/// the matched product/involution mode pair (S, S).
HyperCStarReport verify_hypermatrix_mode(const std::vector<int>& factor_sizes, Mode mode,
                                         const VerifyOptions& options = {});

}  // namespace hcstar

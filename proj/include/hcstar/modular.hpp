#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hcstar/algebra.hpp"
#include "hcstar/report.hpp"

namespace hcstar {

/// GNS data of a state. H_omega has an orthonormal basis f_k whose elements
/// are classes of algebra elements with coefficient columns `coefficients`.
struct GnsData {
  FiniteStarAlgebra algebra;  // the (possibly unitized) algebra that was represented
  bool unit_adjoined = false;
  Mat gram;                   // omega(b_i^* b_j)
  Mat coefficients;           // dim(A) x dim(H)
  Mat quotient;               // class of x in H: quotient * coords(x)
  std::vector<Mat> basis_images;  // pi(b_i)
  Vec cyclic_vector;

  Eigen::Index space_dim() const { return coefficients.cols(); }
  Eigen::Index null_space_dim() const { return algebra.dim() - space_dim(); }
  Mat represent(const Mat& x) const;
  /// <xi, pi(x) xi>.
  Cx expectation(const Mat& x) const;
};

/// pi(a)xi for a ranging over a basis, as columns.
Mat orbit_matrix(const GnsData& g);

GnsData gns(const FiniteStarAlgebra& alg, const State& omega, double tol = default_tolerance());
bool is_separating(const GnsData& g, double tol = default_tolerance());

/// Conjugate-linear map v -> u * conj(v).
struct AntiLinear {
  Mat u;

  Vec apply(const Vec& v) const { return u * v.conjugate(); }
  /// The conjugate-linear map (this) o (other) is linear; its matrix.
  Mat then_linear(const AntiLinear& other) const { return u * other.u.conjugate(); }
  /// J A J for a linear A.
  Mat sandwich(const Mat& a) const { return u * a.conjugate() * u.conjugate(); }
};

struct ModularTuple {
  GnsData gns;
  AntiLinear s;
  Mat delta;
  Mat k;  // log delta
  AntiLinear j;
  double condition_number = 1.0;
  std::map<std::string, double> residuals;
  std::vector<std::string> notes;

  /// Eigenvalues of delta, descending.
  RealVec delta_eigenvalues() const;
  Json to_json() const;
};

/// Polar decomposition S = J Delta^{1/2} of S: pi(a)xi -> pi(a^*)xi. Throws
/// NotSeparating unless xi is separating.
ModularTuple modular_tuple(const FiniteStarAlgebra& alg, const State& omega, double tol = default_tolerance());

/// Delta^{iz} A Delta^{-iz} for an operator A on H_omega.
Mat modular_flow_operator(const ModularTuple& mt, const Mat& a, Cx z);
/// The same with A = pi(a).
Mat modular_flow(const ModularTuple& mt, const Mat& a, Cx z);

struct KmsOptions {
  double beta = 1.0;
  int samples = 64;
  std::uint64_t seed = 0;
  double tol = 1e-8;
};

/// KMS boundary condition omega(a alpha_{-i beta}(b)) = omega(b a) for the
/// flow alpha_t(x) = D^{it} x D^{-it}, i.e. alpha_{-i beta}(x) = D^beta x
/// D^{-beta}, where D is a positive operator on H_omega. Checks all basis
/// pairs and `samples` random pairs; witnesses are (i, j) for basis pairs
/// and (-1, k) for the k-th random pair.
CheckReport kms_check(const GnsData& g, const Mat& generator, const KmsOptions& options = {});
/// The modular flow: D = Delta.
CheckReport kms_check(const ModularTuple& mt, const KmsOptions& options = {});

/// {a : omega(ab) = omega(ba) for all b in A}, as a subspace of the ambient
/// matrices.
Subspace centralizer(const FiniteStarAlgebra& alg, const State& omega, double tol = default_tolerance());

/// {a : sigma_t(pi(a)) = pi(a)}.
Subspace flow_fixed_points(const ModularTuple& mt, const FiniteStarAlgebra& alg, double t,
                           double tol = default_tolerance());

/// {a in sub : [K, pi(a)] in pi(sub)''} for the modular tuple of omega
/// restricted to sub. Throws NotSubalgebra unless sub lies inside ambient.
Subspace a_omega(const FiniteStarAlgebra& ambient, const FiniteStarAlgebra& sub, const State& omega,
                 double tol = default_tolerance());

/// omega restricted to alg, cut down to its support: the compression pAp onto
/// the range of the support projection p of the density of omega|_A.
struct SupportRestriction {
  Mat density;     // Hilbert-Schmidt projection of the density onto A
  Mat support;     // projection p in A
  Mat isometry;    // columns: orthonormal basis of range(p)
  FiniteStarAlgebra algebra;  // V^* A V
  State state;
};
SupportRestriction restrict_to_support(const FiniteStarAlgebra& alg, const State& omega,
                                       double tol = default_tolerance());

struct NetEntry {
  std::string name;
  bool faithful = false;
  Eigen::Index algebra_dim = 0;
  std::optional<ModularTuple> tuple;
  std::optional<CheckReport> kms;
  Eigen::Index a_omega_dim = 0;
  Mat support;  // set when not faithful
};

/// Per-subalgebra modular data and beta = 1 KMS report. Subalgebras on which
/// omega is not faithful are flagged with their support projection.
std::vector<NetEntry> modular_geometry_net(const FiniteStarAlgebra& ambient, const State& omega,
                                           const std::vector<std::pair<std::string, FiniteStarAlgebra>>& subalgebras,
                                           const KmsOptions& options = {}, double tol = default_tolerance());

Json gns_to_json(const GnsData& g, double tol = default_tolerance());
Json net_entry_to_json(const NetEntry& e);

}  // namespace hcstar

// Acceptance criteria; one PASS/FAIL line each, exit status 0 iff all pass.
#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "hcstar/commands.hpp"
#include "hcstar/fixtures.hpp"
#include "hcstar/hyperconv.hpp"
#include "hcstar/modular.hpp"
#include "hcstar/relations.hpp"
#include "hcstar/workspace.hpp"

using namespace hcstar;

namespace {

constexpr double kNormTol = 1e-9;
constexpr double kCStarTol = 1e-9;
constexpr double kKroneckerTol = 1e-10;
constexpr double kModularTol = 1e-9;
constexpr double kKmsTol = 1e-8;
constexpr double kKmsSeconds = 5.0;
constexpr int kSamples = 64;
constexpr int kRankOneInputs = 20;
constexpr int kMaxExchangeCells = 30;

const std::string fixtures_dir = HCSTAR_FIXTURES_DIR;
const std::string hcstar_bin = HCSTAR_BIN;

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      detail << (detail.tellp() > 0 ? "; " : "") << what;
    }
  }
};

Mat random_matrix(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> g;
  Mat m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = Cx(g(rng), g(rng));
  return m;
}

Mat diag(std::initializer_list<double> values) {
  Vec v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return v.asDiagonal();
}

AlgebraPtr share(FiniteStarAlgebra a) { return std::make_shared<const FiniteStarAlgebra>(std::move(a)); }

void pair_groupoid(Outcome& out) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> small(-5, 5);
  for (int n : {2, 3}) {
    auto pg = fixtures::pair_groupoid(n);
    const auto alg = std::make_shared<const ConvolutionAlgebra>(
        std::make_shared<const GlobularCategory>(std::move(pg.category)), std::move(pg.involutions),
        share(FiniteStarAlgebra::scalars(1)));
    for (int t = 0; t < 10; ++t) {
      Mat a(n, n), b(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          a(i, j) = Cx(small(rng), small(rng));
          b(i, j) = Cx(small(rng), small(rng));
        }
      HyperSection sa(alg), sb(alg);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          sa.add(i * n + j, Mat::Constant(1, 1, a(i, j)));
          sb.add(i * n + j, Mat::Constant(1, 1, b(i, j)));
        }
      const auto c = hyper_convolve(sa, sb, 0);
      const auto s = hyper_involute(sa, 0);
      const Mat ab = a * b, as = a.adjoint();
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          out.require(c.at(i * n + j)(0, 0) == ab(i, j), "convolution differs from the matrix product");
          out.require(s.at(i * n + j)(0, 0) == as(i, j), "involution differs from the conjugate transpose");
        }
      Eigen::JacobiSVD<Mat> svd(a);
      out.require(std::abs(linalg::operator_norm(left_regular(sa, 0)) - svd.singularValues()(0)) <= kNormTol,
                  "norm differs from the largest singular value");
    }
  }
}

void eckmann_hilton(Outcome& out) {
  const auto ws = Workspace::load(fixtures_dir + "/eckmann_hilton.json");
  const auto& z2 = *ws.categories.at("Z2").category;
  out.require(check_exchange(z2).passed(), "Z2 fails exchange");
  out.require(detect_eckmann_hilton(z2, 0, 1).passed(), "Z2 collapse not confirmed");
  for (CellId x = 0; x < z2.size(); ++x)
    for (CellId y = 0; y < z2.size(); ++y)
      out.require(z2.compose(0, x, y) == z2.compose(1, x, y) && z2.compose(0, x, y) == z2.compose(0, y, x),
                  "Z2 operations differ or do not commute");
  const auto& s3 = *ws.categories.at("S3").category;
  const auto eh = detect_eckmann_hilton(s3, 0, 1);
  out.require(eh.has_violation("eh_commute_p"), "S3 commutativity failure not reported");
  if (!eh.violations.empty()) {
    const auto& w = eh.violations.front().witness;
    out.detail << "S3 witness (" << s3.name(static_cast<CellId>(w[1])) << ", " << s3.name(static_cast<CellId>(w[2]))
               << ")";
  }
}

void hypermatrices(Outcome& out) {
  VerifyOptions opts;
  opts.samples = kSamples;
  opts.tol = kCStarTol;
  std::mt19937_64 rng(3);
  for (std::uint32_t m = 0; m < 4; ++m) {
    const Mode mode{m};
    const auto rep = verify_hypermatrix_mode({2, 2}, mode, opts);
    const auto* c = rep.find("cstar_identity", 0);
    out.require(c && c->report.passed() && c->report.max_residual <= kCStarTol,
                "mode " + std::to_string(m) + " fails the C*-identity");
    out.require(c && c->report.statistics.at("elements") == static_cast<std::uint64_t>(16 + kSamples),
                "mode " + std::to_string(m) + " checked the wrong number of elements");
    out.require(rep.passed(), "mode " + std::to_string(m) + " fails the axiom battery");
    for (int t = 0; t < kRankOneInputs; ++t) {
      const std::array<Mat, 2> a{random_matrix(rng, 2), random_matrix(rng, 2)};
      const std::array<Mat, 2> b{random_matrix(rng, 2), random_matrix(rng, 2)};
      std::vector<Mat> c;
      for (int k = 0; k < 2; ++k) c.push_back(mode.has(k + 1) ? Mat(a[k] * b[k]) : Mat(a[k].cwiseProduct(b[k])));
      const auto got = hypermatrix_product(Hypermatrix::rank_one({a[0], a[1]}), Hypermatrix::rank_one({b[0], b[1]}), mode);
      const Vec expected = linalg::vec(linalg::kron(c[0], c[1]));
      const Vec actual = linalg::vec(got.to_kronecker_matrix());
      out.require((actual - expected).norm() <= kKroneckerTol * std::max(1.0, expected.norm()),
                  "mode " + std::to_string(m) + " disagrees with the Kronecker oracle");
    }
  }
}

void tomita_takesaki(Outcome& out) {
  const auto m2 = FiniteStarAlgebra::full_matrix(2);
  const std::vector<double> lambda = {1.0 / 3, 2.0 / 3};
  const auto mt = modular_tuple(m2, State(diag({lambda[0], lambda[1]})), kModularTol);
  std::vector<double> expected;
  for (double a : lambda)
    for (double b : lambda) expected.push_back(a / b);
  std::sort(expected.rbegin(), expected.rend());
  const RealVec ev = mt.delta_eigenvalues();
  out.require(ev.size() == 4, "wrong GNS dimension");
  for (Eigen::Index k = 0; k < ev.size() && k < 4; ++k)
    out.require(std::abs(ev(k) - expected[static_cast<std::size_t>(k)]) <= kModularTol,
                "Delta spectrum differs from the ratio oracle");
  for (const char* key : {"s_identity", "j_squared", "j_delta_j", "j_xi", "delta_xi", "j_pi_j_commutant"})
    out.require(mt.residuals.at(key) <= kModularTol, std::string(key) + " residual too large");
  std::vector<Mat> images;
  for (const auto& b : m2.basis()) images.push_back(mt.gns.represent(b));
  const Subspace comm = commutant(mt.gns.space_dim(), images, kModularTol);
  for (const auto& img : images)
    out.require(comm.residual(mt.j.sandwich(img)) <= kModularTol, "J pi(a) J outside the commutant");
}

void kms(Outcome& out) {
  KmsOptions opts;
  opts.samples = kSamples;
  opts.tol = kKmsTol;
  opts.beta = 1.0;
  const std::vector<std::pair<FiniteStarAlgebra, Mat>> cases = {
      {FiniteStarAlgebra::full_matrix(2), diag({1.0 / 3, 2.0 / 3})},
      {FiniteStarAlgebra::full_matrix(3), diag({1.0 / 6, 1.0 / 3, 1.0 / 2})}};
  for (const auto& [alg, rho] : cases) {
    const auto mt = modular_tuple(alg, State(rho));
    const auto rep = kms_check(mt, opts);
    out.require(rep.passed() && rep.max_residual < kKmsTol, "modular flow fails KMS on M_" + std::to_string(alg.ambient_dim()));
    const auto wrong = kms_check(mt.gns, Mat::Identity(mt.gns.space_dim(), mt.gns.space_dim()), opts);
    out.require(!wrong.passed() && !wrong.violations.front().witness.empty(),
                "trivial flow passes KMS on M_" + std::to_string(alg.ambient_dim()));
  }
}

void centralizers(Outcome& out) {
  const auto m2 = FiniteStarAlgebra::full_matrix(2);
  const State omega(diag({1.0 / 3, 2.0 / 3}));
  const auto c = centralizer(m2, omega);
  out.require(c.same_as(FiniteStarAlgebra::diagonal(2).span()), "centralizer is not the diagonal subalgebra");
  out.require(a_omega(m2, m2, omega).same_as(m2.span()), "A_omega is not all of M_2");
  const auto mt = modular_tuple(m2, omega);
  for (double t : {0.5, 1.0, 2.0})
    out.require(flow_fixed_points(mt, m2, t).same_as(c), "flow fixed points differ at t=" + std::to_string(t));
}

void bimodules(Outcome& out) {
  const auto m2 = share(FiniteStarAlgebra::full_matrix(2));
  const auto d2 = share(FiniteStarAlgebra::diagonal(2));
  const auto id = AlgebraMap::from_function(m2, m2, [](const Mat& a) { return a; });
  const auto standard = twisted_bimodule(id, TwistSide::Left);
  out.require(check_bimodule(standard).passed(), "twisted bimodule fails its invariants");
  out.require(check_bimodule(gns_bimodule(m2, State(diag({1.0 / 3, 2.0 / 3})))).passed(),
              "GNS bimodule fails its invariants");
  const ConditionalExpectation e{
      AlgebraMap::from_function(m2, d2, [](const Mat& a) { return Mat(a.diagonal().asDiagonal()); }),
      AlgebraMap::from_function(d2, m2, [](const Mat& a) { return a; })};
  verify_conditional_expectation(e);
  out.require(check_bimodule(ce_bimodule(e)).passed(), "CE bimodule fails its invariants");
  const auto sq = compose_bimodules(standard, standard);
  out.require(sq.carrier_dim == 4, "composite has dimension " + std::to_string(sq.carrier_dim));
  const auto iso = find_isomorphism(sq, standard);
  out.require(iso.has_value(), "no intertwiner isomorphism found");
  if (iso) {
    const Intertwiner t{std::make_shared<const Bimodule>(sq), std::make_shared<const Bimodule>(standard), *iso};
    out.require(check_intertwiner(t).passed(), "isomorphism is not an intertwiner");
  }
}

void exchange_oracle(Outcome& out) {
  std::vector<std::pair<std::string, std::shared_ptr<const GlobularCategory>>> cats;
  for (const char* file : {"pair_groupoids.json", "eckmann_hilton.json", "hypermatrices.json", "invalid_categories.json"}) {
    const auto ws = Workspace::load(fixtures_dir + "/" + file);
    for (const auto& [name, entry] : ws.categories.items()) cats.emplace_back(name, entry.category);
  }
  int checked = 0;
  for (const auto& [name, cat] : cats) {
    if (cat->size() > kMaxExchangeCells) continue;
    ++checked;
    out.require(check_exchange(*cat).violations == reference::check_exchange_bruteforce(*cat).violations,
                name + " differs from the brute-force oracle");
  }
  out.detail << (out.detail.tellp() > 0 ? "; " : "") << checked << " categories";
}

std::string run_capture(const std::string& cmd) {
  std::string output;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return output;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) output.append(buf.data(), n);
  pclose(pipe);
  return output;
}

void determinism(Outcome& out) {
  const std::vector<std::string> files = {"pair_groupoids.json", "eckmann_hilton.json", "hypermatrices.json",
                                          "invalid_categories.json", "modular.json", "bimodules.json"};
  std::vector<std::string> runs;
  for (const auto& f : files)
    for (const auto& cmd : command_names()) runs.push_back(cmd + " " + fixtures_dir + "/" + f + " --parallel 4");
  runs.push_back("hypermatrix-product " + fixtures_dir + "/hypermatrices.json --left A --right B");
  runs.push_back("bimodule-compose " + fixtures_dir + "/bimodules.json --left standard --right standard --bimodule standard");
  runs.push_back("net " + fixtures_dir + "/modular.json --ambient M2 --state diag13 --sub M2,D2,C2");
  runs.push_back("kms " + fixtures_dir + "/modular.json --state diag13 --trivial-flow");
  for (const auto& args : runs) {
    const std::string cmd = "\"" + hcstar_bin + "\" " + args + " 2>/dev/null";
    const auto first = run_capture(cmd), second = run_capture(cmd);
    out.require(!first.empty() && first == second, "output differs for: " + args);
  }
  out.detail << (out.detail.tellp() > 0 ? "; " : "") << runs.size() << " runs";
}

}  // namespace

int main() {
  struct Criterion {
    std::string name;
    std::function<void(Outcome&)> run;
    double budget_seconds;
  };
  const std::vector<Criterion> criteria = {
      {"1 pair groupoid convolution", pair_groupoid, 1.0},
      {"2 Eckmann-Hilton", eckmann_hilton, 5.0},
      {"3 depth-2 hypermatrix modes", hypermatrices, 10.0},
      {"4 Tomita-Takesaki", tomita_takesaki, 1.0},
      {"5 KMS", kms, kKmsSeconds},
      {"6 centralizer and A_omega", centralizers, 0.0},
      {"7 bimodules", bimodules, 0.0},
      {"8 exchange oracle", exchange_oracle, 0.0},
      {"9 CLI determinism", determinism, 0.0}};
  int failed = 0;
  for (const auto& [name, run, budget] : criteria) {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
      run(out);
    } catch (const std::exception& e) {
      out.passed = false;
      out.detail << "error: " << e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (budget > 0.0) out.require(seconds < budget, "exceeded " + std::to_string(budget) + " s");
    if (!out.passed) ++failed;
    std::cout << (out.passed ? "PASS " : "FAIL ") << name;
    if (out.detail.tellp() > 0) std::cout << " (" << out.detail.str() << ")";
    std::cout << "\n";
  }
  return failed == 0 ? 0 : 1;
}

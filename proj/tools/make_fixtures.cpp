// Writes the shipped workspace fixtures into the directory given as argv[1].
#include <fstream>
#include <iostream>
#include <string>

#include "hcstar/fixtures.hpp"
#include "hcstar/json_io.hpp"
#include "hcstar/relations.hpp"
#include "hcstar/workspace.hpp"

using namespace hcstar;

namespace {

Json workspace() {
  Json j;
  j["version"] = "1";
  return j;
}

Json category(const GlobularCategory& c, const InvolutionFamily& inv = {}) {
  return category_to_json({std::make_shared<const GlobularCategory>(c), inv});
}

Mat diag(std::initializer_list<double> values) {
  Vec v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return v.asDiagonal();
}

Json state(const std::string& algebra, const Mat& density) {
  return {{"algebra", algebra}, {"density", matrix_to_json(density)}};
}

// Matrix of a -> f(a) on column-major vectorized d_s x d_s matrices.
template <typename F>
Mat vec_matrix(Eigen::Index ds, Eigen::Index dt, F&& f) {
  Mat m(dt * dt, ds * ds);
  for (Eigen::Index k = 0; k < ds * ds; ++k) {
    Mat e = Mat::Zero(ds, ds);
    e(k % ds, k / ds) = 1.0;
    m.col(k) = linalg::vec(f(e));
  }
  return m;
}

Json hom(const std::string& s, const std::string& t, const Mat& m) {
  return {{"source", s}, {"target", t}, {"matrix", matrix_to_json(m)}};
}

Hypermatrix sample_hypermatrix(const std::vector<int>& sizes, int shift) {
  Hypermatrix h(sizes);
  for (Eigen::Index k = 0; k < h.size(); ++k)
    h.entries()(k) = Cx(static_cast<double>((3 * k + shift) % 7) - 3.0, static_cast<double>((5 * k + shift) % 4) - 1.5);
  return h;
}

void write(const std::string& dir, const std::string& name, const Json& j) {
  std::ofstream out(dir + "/" + name);
  out << j.dump(1) << "\n";
  std::cout << dir << "/" << name << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixtures <output-dir>\n";
    return 2;
  }
  const std::string dir = argv[1];

  {
    Json j = workspace();
    for (int n : {2, 3}) {
      const auto pg = fixtures::pair_groupoid(n);
      j["categories"]["pair" + std::to_string(n)] = category(pg.category, pg.involutions);
    }
    j["algebras"]["M2"] = algebra_to_json(FiniteStarAlgebra::full_matrix(2));
    write(dir, "pair_groupoids.json", j);
  }
  {
    Json j = workspace();
    j["categories"]["Z2"] = category(fixtures::cyclic_two_category(2));
    j["categories"]["S3"] = category(fixtures::symmetric3_two_category());
    write(dir, "eckmann_hilton.json", j);
  }
  {
    Json j = workspace();
    for (std::uint32_t m = 0; m < 4; ++m) {
      const auto ic = fixtures::hypermatrix_index_category({2, 2}, Mode{m});
      std::string name = "hyper22_mode";
      for (int d : Mode{m}.depths(2)) name += std::to_string(d);
      if (m == 0) name += "0";
      j["categories"][name] = category(ic.category, ic.involutions);
    }
    j["hypermatrices"]["A"] = hypermatrix_to_json(sample_hypermatrix({2, 2}, 1));
    j["hypermatrices"]["B"] = hypermatrix_to_json(sample_hypermatrix({2, 2}, 4));
    write(dir, "hypermatrices.json", j);
  }
  {
    Json j = workspace();
    j["categories"]["broken_associativity"] = category(fixtures::broken_associativity_category());
    j["categories"]["nonfunctorial_whiskering"] = category(fixtures::nonfunctorial_whiskering_category());
    write(dir, "invalid_categories.json", j);
  }
  {
    Json j = workspace();
    j["algebras"]["M2"] = algebra_to_json(FiniteStarAlgebra::full_matrix(2));
    j["algebras"]["D2"] = algebra_to_json(FiniteStarAlgebra::diagonal(2));
    j["algebras"]["C2"] = algebra_to_json(FiniteStarAlgebra::scalars(2));
    j["algebras"]["M3"] = algebra_to_json(FiniteStarAlgebra::full_matrix(3));
    j["states"]["diag13"] = state("M2", diag({1.0 / 3, 2.0 / 3}));
    j["states"]["tracial"] = state("M2", diag({0.5, 0.5}));
    j["states"]["pure"] = state("M2", diag({1.0, 0.0}));
    j["states"]["m3_faithful"] = state("M3", diag({1.0 / 6, 1.0 / 3, 1.0 / 2}));
    write(dir, "modular.json", j);
  }
  {
    auto m2 = std::make_shared<const FiniteStarAlgebra>(FiniteStarAlgebra::full_matrix(2));
    auto d2 = std::make_shared<const FiniteStarAlgebra>(FiniteStarAlgebra::diagonal(2));
    auto c1 = std::make_shared<const FiniteStarAlgebra>(FiniteStarAlgebra::scalars(1));
    const Mat rho = diag({1.0 / 3, 2.0 / 3});
    Mat u(2, 2);
    u << 1.0, 1.0, 1.0, -1.0;
    u /= std::sqrt(2.0);

    Json j = workspace();
    j["algebras"]["M2"] = algebra_to_json(*m2);
    j["algebras"]["D2"] = algebra_to_json(*d2);
    j["algebras"]["C"] = algebra_to_json(*c1);
    j["states"]["diag13"] = state("M2", rho);
    j["homomorphisms"]["id"] = hom("M2", "M2", vec_matrix(2, 2, [](const Mat& a) { return a; }));
    j["homomorphisms"]["ad_u"] = hom("M2", "M2", vec_matrix(2, 2, [&](const Mat& a) { return Mat(u * a * u.adjoint()); }));
    j["homomorphisms"]["diag_part"] =
        hom("M2", "D2", vec_matrix(2, 2, [](const Mat& a) { return Mat(a.diagonal().asDiagonal()); }));
    j["homomorphisms"]["diag_incl"] = hom("D2", "M2", vec_matrix(2, 2, [](const Mat& a) { return a; }));
    j["homomorphisms"]["omega"] =
        hom("M2", "C", vec_matrix(2, 1, [&](const Mat& a) { return Mat::Constant(1, 1, (rho * a).trace()); }));
    j["homomorphisms"]["unit_incl"] =
        hom("C", "M2", vec_matrix(1, 2, [](const Mat& a) { return Mat(a(0, 0) * Mat::Identity(2, 2)); }));
    j["bimodules"]["standard"] = {{"kind", "twisted"}, {"map", "id"}, {"side", "left"}};
    j["bimodules"]["standard_right"] = {{"kind", "twisted"}, {"map", "id"}, {"side", "right"}};
    j["bimodules"]["twisted_u"] = {{"kind", "twisted"}, {"map", "ad_u"}, {"side", "left"}};
    j["bimodules"]["gns"] = {{"kind", "gns"}, {"algebra", "M2"}, {"state", "diag13"}};
    j["bimodules"]["ce_diag"] = {{"kind", "ce"}, {"expectation", "diag_part"}, {"inclusion", "diag_incl"}};
    j["bimodules"]["ce_state"] = {{"kind", "ce"}, {"expectation", "omega"}, {"inclusion", "unit_incl"}};
    j["bimodules"]["standard_squared"] = {{"kind", "compose"}, {"left", "standard"}, {"right", "standard"}};

    const auto id = AlgebraMap::from_function(m2, m2, [](const Mat& a) { return a; });
    const Bimodule standard = twisted_bimodule(id, TwistSide::Left);
    const Bimodule squared = compose_bimodules(standard, standard);
    const auto iso = find_isomorphism(squared, standard);
    if (!iso) {
      std::cerr << "no isomorphism found for the composite fixture\n";
      return 1;
    }
    Mat wrong = Mat::Zero(4, 4);
    wrong(0, 1) = 1.0;
    wrong(2, 3) = 1.0;
    j["intertwiners"]["identity"] = {{"source", "standard"}, {"target", "standard"}, {"map", matrix_to_json(Mat::Identity(4, 4))}};
    j["intertwiners"]["zero"] = {{"source", "standard"}, {"target", "standard"}, {"map", matrix_to_json(Mat::Zero(4, 4))}};
    j["intertwiners"]["composite_to_standard"] = {
        {"source", "standard_squared"}, {"target", "standard"}, {"map", matrix_to_json(*iso)}};
    j["intertwiners"]["not_an_intertwiner"] = {{"source", "standard"}, {"target", "standard"}, {"map", matrix_to_json(wrong)}};
    write(dir, "bimodules.json", j);
  }
  return 0;
}

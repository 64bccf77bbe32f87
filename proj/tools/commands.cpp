#include "hcstar/commands.hpp"

#include <algorithm>
#include <exception>
#include <functional>
#include <map>

#include "hcstar/error.hpp"
#include "hcstar/hyperconv.hpp"
#include "hcstar/json_io.hpp"
#include "hcstar/modular.hpp"
#include "hcstar/relations.hpp"

namespace hcstar {

namespace {

struct Outcome {
  bool passed = true;
  Json body = Json::object();
};

struct Target {
  std::string name;
  std::function<Outcome()> run;
};

std::vector<std::string> select(const std::vector<std::string>& all, const std::string& wanted) {
  if (wanted.empty()) return all;
  return {wanted};
}

template <typename T>
std::vector<std::string> names_of(const Section<T>& s) {
  std::vector<std::string> out;
  for (const auto& item : s.items()) out.push_back(item.first);
  return out;
}

Json subspace_to_json(const Subspace& s) {
  Json out;
  out["dim"] = s.dim();
  Json basis = Json::array();
  for (const auto& b : s.basis()) basis.push_back(matrix_to_json(b));
  out["basis"] = std::move(basis);
  return out;
}

Outcome from_report(const CheckReport& r) {
  Outcome o;
  o.passed = r.passed();
  o.body["report"] = r.to_json();
  return o;
}

std::string mode_text(const std::vector<int>& depths) {
  std::string s = "{";
  for (std::size_t i = 0; i < depths.size(); ++i) s += (i ? "," : "") + std::to_string(depths[i]);
  return s + "}";
}

std::vector<Target> category_targets(const Workspace& ws, const RunOptions& o,
                                     const std::function<Outcome(const CategoryEntry&)>& f) {
  std::vector<Target> out;
  for (const auto& name : select(names_of(ws.categories), o.category))
    out.push_back({name, [&ws, name, f] { return f(ws.categories.at(name)); }});
  return out;
}

std::vector<Target> state_targets(const Workspace& ws, const RunOptions& o,
                                  const std::function<Outcome(const AlgebraPtr&, const StateEntry&)>& f) {
  std::vector<Target> out;
  for (const auto& name : select(names_of(ws.states), o.state))
    out.push_back({name, [&ws, &o, name, f] {
                     const StateEntry& s = ws.states.at(name);
                     const AlgebraPtr& alg = ws.algebras.at(o.algebra.empty() ? s.algebra : o.algebra);
                     return f(alg, s);
                   }});
  return out;
}

AlgebraPtr coefficients(const Workspace& ws, const RunOptions& o) {
  if (o.algebra.empty()) return std::make_shared<const FiniteStarAlgebra>(FiniteStarAlgebra::scalars(1));
  return ws.algebras.at(o.algebra);
}

std::vector<Target> build_targets(const std::string& command, const Workspace& ws, const RunOptions& o) {
  const double tol = o.tol;
  if (command == "check-category")
    return category_targets(ws, o, [](const CategoryEntry& c) { return from_report(check_category_axioms(*c.category)); });
  if (command == "check-exchange")
    return category_targets(ws, o, [](const CategoryEntry& c) { return from_report(check_exchange(*c.category)); });
  if (command == "check-nc-exchange")
    return category_targets(ws, o, [](const CategoryEntry& c) {
      return from_report(check_noncommutative_exchange(*c.category));
    });
  if (command == "check-involutions")
    return category_targets(ws, o, [](const CategoryEntry& c) {
      Outcome out = from_report(check_involutions(*c.category, c.involutions));
      const auto fi = check_fully_involutive(c.involutions, c.category->depth());
      out.body["fully_involutive"] = fi.fully_involutive;
      Json sets = Json::array();
      for (auto mask : fi.generated) {
        Json levels = Json::array();
        for (int l = 0; l < c.category->depth(); ++l)
          if ((mask >> l) & 1u) levels.push_back(l);
        sets.push_back(std::move(levels));
      }
      out.body["generated"] = std::move(sets);
      return out;
    });
  if (command == "detect-eh")
    return category_targets(ws, o, [&o](const CategoryEntry& c) {
      return from_report(detect_eckmann_hilton(*c.category, o.q, o.p));
    });
  if (command == "build-convolution")
    return category_targets(ws, o, [&ws, &o, tol](const CategoryEntry& c) {
      auto alg = std::make_shared<const ConvolutionAlgebra>(c.category, c.involutions, coefficients(ws, o));
      Outcome out;
      out.body["dim"] = alg->dim();
      out.body["carrier_dim"] = alg->carrier_dim();
      Json levels = Json::array();
      for (int level = 0; level < c.category->depth(); ++level) {
        const StructureResiduals r = structure_residuals(convolution_structure(alg, level));
        const bool has_inv = alg->involutions().for_level(level) != nullptr;
        Json l;
        l["level"] = level;
        l["associativity_residual"] = r.associativity;
        l["has_involution"] = has_inv;
        if (has_inv) l["star_residual"] = r.star;
        const bool ok = r.associativity <= tol && (!has_inv || r.star <= tol);
        l["passed"] = ok;
        out.passed = out.passed && ok;
        levels.push_back(std::move(l));
      }
      out.body["levels"] = std::move(levels);
      return out;
    });
  if (command == "check-hyper-cstar") {
    const VerifyOptions vo{o.samples, o.seed, tol};
    if (!o.sizes.empty()) {
      std::vector<Mode> modes;
      if (!o.mode.empty())
        modes.push_back(Mode::from_depths(o.mode));
      else
        for (std::uint32_t m = 0; m < (1u << o.sizes.size()); ++m) modes.push_back(Mode{m});
      std::vector<Target> out;
      for (Mode m : modes) {
        const int depth = static_cast<int>(o.sizes.size());
        out.push_back({"mode " + mode_text(m.depths(depth)), [&o, m, vo, depth] {
                         const HyperCStarReport r = verify_hypermatrix_mode(o.sizes, m, vo);
                         Outcome res;
                         res.passed = r.passed();
                         res.body["mode"] = m.depths(depth);
                         res.body["verification"] = r.to_json();
                         return res;
                       }});
      }
      return out;
    }
    return category_targets(ws, o, [&ws, &o, vo](const CategoryEntry& c) {
      auto alg = std::make_shared<const ConvolutionAlgebra>(c.category, c.involutions, coefficients(ws, o));
      const HyperCStarReport r = verify_hyper_cstar(alg, vo);
      Outcome out;
      out.passed = r.passed();
      out.body["verification"] = r.to_json();
      return out;
    });
  }
  if (command == "hypermatrix-product") {
    if (o.left.empty() || o.right.empty())
      throw Error(ErrorKind::PreconditionViolated, "hypermatrix-product needs --left and --right");
    return {{o.left + " * " + o.right, [&ws, &o, tol] {
               const Hypermatrix& a = ws.hypermatrices.at(o.left);
               const Hypermatrix& b = ws.hypermatrices.at(o.right);
               const Mode m = o.mode.empty() ? Mode::all(a.depth()) : Mode::from_depths(o.mode);
               const Hypermatrix prod = hypermatrix_product(a, b, m);
               const Hypermatrix ref = reference::hypermatrix_product_serial(a, b, m);
               const double r = (prod.entries() - ref.entries()).norm() / std::max(1.0, ref.entries().norm());
               Outcome out;
               out.passed = r <= tol;
               out.body["mode"] = m.depths(a.depth());
               out.body["result"] = hypermatrix_to_json(prod);
               out.body["reference_residual"] = r;
               return out;
             }}};
  }
  if (command == "gns")
    return state_targets(ws, o, [tol](const AlgebraPtr& alg, const StateEntry& s) {
      const GnsData g = gns(*alg, s.state, tol);
      double state_res = 0.0, hom_res = 0.0, star_res = 0.0;
      const auto& b = g.algebra.basis();
      for (std::size_t i = 0; i < b.size(); ++i) {
        state_res = std::max(state_res, std::abs(g.expectation(b[i]) - s.state(b[i])));
        star_res = std::max(star_res, (g.represent(b[i].adjoint()) - g.basis_images[i].adjoint()).norm());
        for (std::size_t j = 0; j < b.size(); ++j)
          hom_res = std::max(hom_res, (g.represent(b[i] * b[j]) - g.basis_images[i] * g.basis_images[j]).norm());
      }
      Outcome out;
      out.body["gns"] = gns_to_json(g, tol);
      out.body["residuals"] = {{"state", state_res}, {"homomorphism", hom_res}, {"star", star_res}};
      out.passed = state_res <= tol && hom_res <= tol && star_res <= tol;
      return out;
    });
  if (command == "modular")
    return state_targets(ws, o, [tol](const AlgebraPtr& alg, const StateEntry& s) {
      const ModularTuple mt = modular_tuple(*alg, s.state, tol);
      Outcome out;
      out.body["modular_tuple"] = mt.to_json();
      for (const auto& [key, value] : mt.residuals) out.passed = out.passed && value <= tol;
      return out;
    });
  if (command == "kms")
    return state_targets(ws, o, [&o, tol](const AlgebraPtr& alg, const StateEntry& s) {
      const KmsOptions ko{o.beta, o.samples, o.seed, tol};
      Outcome out;
      if (o.trivial_flow) {
        const GnsData g = gns(*alg, s.state, tol);
        out = from_report(kms_check(g, Mat::Identity(g.space_dim(), g.space_dim()), ko));
        out.body["flow"] = "trivial";
      } else {
        out = from_report(kms_check(modular_tuple(*alg, s.state, tol), ko));
        out.body["flow"] = "modular";
      }
      out.body["beta"] = o.beta;
      return out;
    });
  if (command == "centralizer")
    return state_targets(ws, o, [tol](const AlgebraPtr& alg, const StateEntry& s) {
      const Subspace c = centralizer(*alg, s.state, tol);
      Outcome out;
      out.body["centralizer"] = subspace_to_json(c);
      const GnsData g = gns(*alg, s.state, tol);
      if (is_separating(g, tol)) {
        const ModularTuple mt = modular_tuple(*alg, s.state, tol);
        Json checks = Json::array();
        for (double t : {0.5, 1.0, 2.0}) {
          const bool same = flow_fixed_points(mt, *alg, t, tol).same_as(c, tol);
          checks.push_back({{"t", t}, {"equals_centralizer", same}});
          out.passed = out.passed && same;
        }
        out.body["flow_fixed_points"] = std::move(checks);
      } else {
        out.body["flow_fixed_points"] = "skipped: state is not faithful";
      }
      return out;
    });
  if (command == "a-omega")
    return state_targets(ws, o, [&ws, &o, tol](const AlgebraPtr& sub, const StateEntry& s) {
      const AlgebraPtr& ambient = ws.algebras.at(o.ambient.empty() ? s.algebra : o.ambient);
      const Subspace a = a_omega(*ambient, *sub, s.state, tol);
      Outcome out;
      out.body["algebra_dim"] = sub->dim();
      out.body["a_omega"] = subspace_to_json(a);
      out.body["equals_algebra"] = a.same_as(sub->span(), tol);
      return out;
    });
  if (command == "net") {
    if (o.subalgebras.empty()) throw Error(ErrorKind::PreconditionViolated, "net needs --sub");
    return state_targets(ws, o, [&ws, &o, tol](const AlgebraPtr&, const StateEntry& s) {
      const AlgebraPtr& ambient = ws.algebras.at(o.ambient.empty() ? s.algebra : o.ambient);
      std::vector<std::pair<std::string, FiniteStarAlgebra>> subs;
      for (const auto& name : o.subalgebras) subs.emplace_back(name, *ws.algebras.at(name));
      const auto net = modular_geometry_net(*ambient, s.state, subs, {1.0, o.samples, o.seed, tol}, tol);
      Outcome out;
      Json entries = Json::array();
      for (const auto& e : net) {
        entries.push_back(net_entry_to_json(e));
        if (e.faithful) out.passed = out.passed && e.kms->passed();
      }
      out.body["net"] = std::move(entries);
      return out;
    });
  }
  if (command == "bimodule-build") {
    std::vector<Target> out;
    for (const auto& name : select(names_of(ws.bimodules), o.bimodule))
      out.push_back({name, [&ws, name, tol] {
                       const auto b = ws.build_bimodule(name, tol);
                       Outcome res = from_report(check_bimodule(*b, tol));
                       res.body["kind"] = ws.bimodules.at(name).kind;
                       res.body["bimodule"] = bimodule_to_json(*b);
                       return res;
                     }});
    return out;
  }
  if (command == "bimodule-compose") {
    if (o.left.empty() || o.right.empty())
      throw Error(ErrorKind::PreconditionViolated, "bimodule-compose needs --left and --right");
    return {{o.left + " . " + o.right, [&ws, &o, tol] {
               const auto m = ws.build_bimodule(o.left, tol);
               const auto n = ws.build_bimodule(o.right, tol);
               const Bimodule c = compose_bimodules(*m, *n, tol);
               Outcome out = from_report(check_bimodule(c, tol));
               const bool bound = c.carrier_dim <= m->carrier_dim * n->carrier_dim;
               out.passed = out.passed && bound;
               out.body["factor_dims"] = {m->carrier_dim, n->carrier_dim};
               out.body["dimension_bound"] = bound;
               out.body["bimodule"] = bimodule_to_json(c);
               if (!o.bimodule.empty()) {
                 const auto iso = find_isomorphism(c, *ws.build_bimodule(o.bimodule, tol), o.seed, tol);
                 out.body["isomorphic_to"] = {{"bimodule", o.bimodule}, {"found", iso.has_value()}};
                 if (iso) out.body["isomorphism"] = matrix_to_json(*iso);
                 out.passed = out.passed && iso.has_value();
               }
               return out;
             }}};
  }
  if (command == "check-intertwiner") {
    std::vector<Target> out;
    for (const auto& name : select(names_of(ws.intertwiners), o.intertwiner))
      out.push_back({name, [&ws, name, tol] {
                       const IntertwinerEntry& e = ws.intertwiners.at(name);
                       const auto s = ws.build_bimodule(e.source, tol);
                       const auto t = ws.build_bimodule(e.target, tol);
                       Outcome res = from_report(check_intertwiner({s, t, e.map}, tol));
                       res.body["space_dim"] = intertwiner_space(*s, *t, tol).size();
                       return res;
                     }});
    return out;
  }
  throw Error(ErrorKind::UnknownCommand, "unknown command \"" + command + "\"");
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {
      "check-category", "check-involutions", "check-exchange", "check-nc-exchange", "detect-eh",
      "build-convolution", "check-hyper-cstar", "hypermatrix-product", "gns", "modular",
      "kms", "centralizer", "a-omega", "net", "bimodule-build", "bimodule-compose", "check-intertwiner"};
  return names;
}

RunResult run_command(const std::string& command, const Workspace& ws, const RunOptions& options) {
  const std::vector<Target> targets = build_targets(command, ws, options);
  const auto n = static_cast<std::int64_t>(targets.size());
  std::vector<Json> results(targets.size());
  std::vector<int> status(targets.size(), 0);

#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(1, options.parallel))
  for (std::int64_t i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    Json entry;
    entry["target"] = targets[idx].name;
    try {
      Outcome out = targets[idx].run();
      entry["passed"] = out.passed;
      for (auto& [key, value] : out.body.items()) entry[key] = value;
      status[idx] = out.passed ? 0 : 1;
    } catch (const Error& e) {
      entry["passed"] = false;
      entry["error"] = {{"kind", to_string(e.kind())}, {"message", e.what()}};
      status[idx] = 2;
    } catch (const std::exception& e) {
      entry["passed"] = false;
      entry["error"] = {{"kind", "Internal"}, {"message", e.what()}};
      status[idx] = 2;
    }
    results[idx] = std::move(entry);
  }

  RunResult rr;
  rr.exit_code = status.empty() ? 0 : *std::max_element(status.begin(), status.end());
  rr.report["command"] = command;
  rr.report["tolerance"] = options.tol;
  rr.report["seed"] = options.seed;
  rr.report["samples"] = options.samples;
  rr.report["passed"] = rr.exit_code == 0;
  rr.report["results"] = results;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    static const char* const labels[] = {"PASS", "FAIL", "ERROR"};
    std::string line = command + " " + targets[i].name + ": " + labels[status[i]];
    if (status[i] == 2) line += " (" + results[i]["error"]["message"].get<std::string>() + ")";
    if (status[i] == 1 && results[i].contains("report") && !results[i]["report"]["violations"].empty()) {
      const Json& v = results[i]["report"]["violations"][0];
      line += " (first violation: " + v["axiom"].get<std::string>() + " at " + v["witness"].dump() + ")";
    }
    rr.summary.push_back(std::move(line));
  }
  if (targets.empty()) rr.summary.push_back(command + ": no targets in workspace");
  return rr;
}

}  // namespace hcstar

#include "hcstar/workspace.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "hcstar/json_io.hpp"

namespace hcstar {

namespace {

[[noreturn]] void parse_fail(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::ParseError, path + ": " + what);
}

const Json& field(const Json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) parse_fail(path, "missing field \"" + key + "\"");
  return obj.at(key);
}

template <typename T>
T get_as(const Json& j, const std::string& path) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception& e) {
    parse_fail(path, e.what());
  }
}

Mat get_matrix(const Json& j, const std::string& path) {
  try {
    return matrix_from_json(j);
  } catch (const Error& e) {
    parse_fail(path, e.what());
  }
}

std::vector<Mat> get_matrices(const Json& j, const std::string& path) {
  if (!j.is_array()) parse_fail(path, "expected an array of matrices");
  std::vector<Mat> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_matrix(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

const Json& section(const Json& root, const char* key) {
  static const Json empty = Json::object();
  if (!root.contains(key)) return empty;
  const Json& s = root.at(key);
  if (!s.is_object()) parse_fail(key, "section must be an object");
  return s;
}

CellId cell_ref(const Json& j, const std::vector<std::string>& names, const std::string& path) {
  if (j.is_string()) {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == j.get<std::string>()) return static_cast<CellId>(i);
    throw Error(ErrorKind::UnresolvedReference, path + ": unresolved reference \"" + j.get<std::string>() + "\"");
  }
  const auto id = get_as<long long>(j, path);
  if (id < 0 || id >= static_cast<long long>(names.size())) parse_fail(path, "cell index out of range");
  return static_cast<CellId>(id);
}

std::vector<CellId> cell_list(const Json& j, const std::vector<std::string>& names, const std::string& path) {
  if (!j.is_array()) parse_fail(path, "expected an array of cells");
  std::vector<CellId> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(cell_ref(j[i], names, path + "[" + std::to_string(i) + "]"));
  return out;
}

CategoryEntry parse_category(const Json& j, const std::string& path) {
  CategoryData d;
  d.depth = get_as<int>(field(j, "depth", path), path + ".depth");
  if (d.depth < 1) parse_fail(path + ".depth", "depth must be at least 1");
  d.cell_names = get_as<std::vector<std::string>>(field(j, "cells", path), path + ".cells");
  for (const char* key : {"source", "target", "identities"}) {
    const Json& arr = field(j, key, path);
    if (!arr.is_array() || static_cast<int>(arr.size()) != d.depth)
      parse_fail(path + "." + key, "expected one list per level");
    auto& dest = std::string(key) == "source" ? d.source : std::string(key) == "target" ? d.target : d.identities;
    for (std::size_t l = 0; l < arr.size(); ++l)
      dest.push_back(cell_list(arr[l], d.cell_names, path + "." + key + "[" + std::to_string(l) + "]"));
  }
  const Json& comps = field(j, "compositions", path);
  if (!comps.is_array()) parse_fail(path + ".compositions", "expected an array");
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const std::string p = path + ".compositions[" + std::to_string(i) + "]";
    const Json& q = comps[i];
    if (!q.is_array() || q.size() != 4) parse_fail(p, "expected [p, x, y, z]");
    d.compositions.push_back({get_as<int>(q[0], p), cell_ref(q[1], d.cell_names, p), cell_ref(q[2], d.cell_names, p),
                              cell_ref(q[3], d.cell_names, p)});
  }
  std::vector<Involution> invs;
  if (j.contains("involutions")) {
    const Json& arr = j.at("involutions");
    if (!arr.is_array()) parse_fail(path + ".involutions", "expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string p = path + ".involutions[" + std::to_string(i) + "]";
      if (!arr[i].is_array() || arr[i].size() != 2) parse_fail(p, "expected [alpha, permutation]");
      invs.push_back({get_as<std::vector<int>>(arr[i][0], p + "[0]"), cell_list(arr[i][1], d.cell_names, p + "[1]")});
    }
  }
  try {
    auto cat = std::make_shared<const GlobularCategory>(std::move(d));
    InvolutionFamily family(*cat, std::move(invs));
    return {std::move(cat), std::move(family)};
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::InvalidCategory || e.kind() == ErrorKind::InvalidInvolution) parse_fail(path, e.what());
    throw;
  }
}

std::vector<std::vector<std::vector<Cx>>> parse_constants(const Json& j, const std::string& path) {
  std::vector<std::vector<std::vector<Cx>>> c;
  if (!j.is_array()) parse_fail(path, "expected a 3-index array");
  for (std::size_t a = 0; a < j.size(); ++a) {
    c.emplace_back();
    for (std::size_t b = 0; b < j[a].size(); ++b) {
      c[a].emplace_back();
      for (std::size_t k = 0; k < j[a][b].size(); ++k) {
        try {
          c[a][b].push_back(complex_from_json(j[a][b][k]));
        } catch (const Error& e) {
          parse_fail(path, e.what());
        }
      }
    }
  }
  return c;
}

AlgebraPtr parse_algebra(const Json& j, const std::string& path) {
  if (j.contains("structure_constants")) {
    const auto c = parse_constants(j.at("structure_constants"), path + ".structure_constants");
    const Json& sj = field(j, "star", path);
    std::vector<std::vector<Cx>> star;
    for (std::size_t i = 0; i < sj.size(); ++i) {
      star.emplace_back();
      for (const auto& z : sj[i]) star.back().push_back(complex_from_json(z));
    }
    return std::make_shared<const FiniteStarAlgebra>(FiniteStarAlgebra::from_structure_constants(c, star));
  }
  const auto basis = get_matrices(field(j, "basis", path), path + ".basis");
  if (basis.empty()) parse_fail(path + ".basis", "basis must be non-empty");
  std::optional<Mat> unit;
  if (j.contains("unit")) unit = get_matrix(j.at("unit"), path + ".unit");
  return std::make_shared<const FiniteStarAlgebra>(basis.front().rows(), basis, unit);
}

std::string name_ref(const Json& obj, const std::string& key, const std::string& path) {
  return get_as<std::string>(field(obj, key, path), path + "." + key);
}

Hypermatrix parse_hypermatrix(const Json& j, const std::string& path) {
  const auto sizes = get_as<std::vector<int>>(field(j, "sizes", path), path + ".sizes");
  Hypermatrix h = [&] {
    try {
      return Hypermatrix(sizes);
    } catch (const Error& e) {
      parse_fail(path + ".sizes", e.what());
    }
  }();
  const Json& entries = field(j, "entries", path);
  if (!entries.is_array()) parse_fail(path + ".entries", "expected an array");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string p = path + ".entries[" + std::to_string(i) + "]";
    const Json& e = entries[i];
    if (!e.is_array() || e.size() != 3 || !e[0].is_array()) parse_fail(p, "expected [index-tuple, re, im]");
    std::vector<int> rows, cols;
    for (const auto& pair : e[0]) {
      const auto ij = get_as<std::vector<int>>(pair, p);
      if (ij.size() != 2) parse_fail(p, "index pairs must have two entries");
      rows.push_back(ij[0]);
      cols.push_back(ij[1]);
    }
    try {
      h(rows, cols) = Cx(get_as<double>(e[1], p), get_as<double>(e[2], p));
    } catch (const Error& err) {
      parse_fail(p, err.what());
    }
  }
  return h;
}

const std::set<std::string> kBimoduleKinds = {"explicit", "twisted", "gns", "ce", "compose"};

}  // namespace

Workspace Workspace::parse(const Json& root) {
  if (!root.is_object()) parse_fail("$", "workspace must be a JSON object");
  const Json& version = field(root, "version", "$");
  if (!version.is_string() || version.get<std::string>() != "1") parse_fail("version", "unsupported version, expected \"1\"");

  Workspace ws;
  const auto unique = [](bool exists, const std::string& path) {
    if (exists) parse_fail(path, "duplicate name");
  };
  for (const auto& [name, j] : section(root, "categories").items()) {
    unique(ws.categories.has(name), "categories." + name);
    ws.categories.add(name, parse_category(j, "categories." + name));
  }
  for (const auto& [name, j] : section(root, "algebras").items()) {
    unique(ws.algebras.has(name), "algebras." + name);
    ws.algebras.add(name, parse_algebra(j, "algebras." + name));
  }
  for (const auto& [name, j] : section(root, "states").items()) {
    const std::string path = "states." + name;
    unique(ws.states.has(name), path);
    const std::string alg = name_ref(j, "algebra", path);
    const AlgebraPtr& a = ws.algebras.at(alg);
    const Mat density = get_matrix(field(j, "density", path), path + ".density");
    if (density.rows() != a->ambient_dim()) parse_fail(path + ".density", "size does not match algebra " + alg);
    ws.states.add(name, {alg, State(density)});
  }
  for (const auto& [name, j] : section(root, "homomorphisms").items()) {
    const std::string path = "homomorphisms." + name;
    unique(ws.homomorphisms.has(name), path);
    const std::string src = name_ref(j, "source", path), tgt = name_ref(j, "target", path);
    const AlgebraPtr s = ws.algebras.at(src), t = ws.algebras.at(tgt);
    const Mat m = get_matrix(field(j, "matrix", path), path + ".matrix");
    const Eigen::Index ds = s->ambient_dim(), dt = t->ambient_dim();
    if (m.rows() != dt * dt || m.cols() != ds * ds) parse_fail(path + ".matrix", "matrix must be target_dim^2 x source_dim^2");
    AlgebraMap map = AlgebraMap::from_function(s, t, [&](const Mat& a) { return linalg::unvec(m * linalg::vec(a), dt, dt); });
    ws.homomorphisms.add(name, {src, tgt, m, std::move(map)});
  }
  for (const auto& [name, j] : section(root, "bimodules").items()) {
    const std::string path = "bimodules." + name;
    unique(ws.bimodules.has(name), path);
    const std::string kind = name_ref(j, "kind", path);
    if (!kBimoduleKinds.count(kind)) parse_fail(path + ".kind", "unknown bimodule kind \"" + kind + "\"");
    if (kind == "explicit") {
      ws.algebras.at(name_ref(j, "left", path));
      ws.algebras.at(name_ref(j, "right", path));
      get_as<int>(field(j, "carrier_dim", path), path + ".carrier_dim");
      get_matrices(field(j, "left_action", path), path + ".left_action");
      get_matrices(field(j, "right_action", path), path + ".right_action");
    } else if (kind == "twisted") {
      ws.homomorphisms.at(name_ref(j, "map", path));
      const std::string side = name_ref(j, "side", path);
      if (side != "left" && side != "right") parse_fail(path + ".side", "side must be left or right");
    } else if (kind == "gns") {
      ws.algebras.at(name_ref(j, "algebra", path));
      ws.states.at(name_ref(j, "state", path));
    } else if (kind == "ce") {
      ws.homomorphisms.at(name_ref(j, "expectation", path));
      ws.homomorphisms.at(name_ref(j, "inclusion", path));
    } else {
      // Compositions may only refer to earlier bimodules, which rules out cycles.
      ws.bimodules.at(name_ref(j, "left", path));
      ws.bimodules.at(name_ref(j, "right", path));
    }
    ws.bimodules.add(name, {kind, j});
  }
  for (const auto& [name, j] : section(root, "hypermatrices").items()) {
    unique(ws.hypermatrices.has(name), "hypermatrices." + name);
    ws.hypermatrices.add(name, parse_hypermatrix(j, "hypermatrices." + name));
  }
  for (const auto& [name, j] : section(root, "intertwiners").items()) {
    const std::string path = "intertwiners." + name;
    unique(ws.intertwiners.has(name), path);
    const std::string src = name_ref(j, "source", path), tgt = name_ref(j, "target", path);
    ws.bimodules.at(src);
    ws.bimodules.at(tgt);
    ws.intertwiners.add(name, {src, tgt, get_matrix(field(j, "map", path), path + ".map")});
  }
  return ws;
}

Workspace Workspace::parse_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  return parse(j);
}

Workspace Workspace::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str());
}

std::shared_ptr<const Bimodule> Workspace::build_bimodule(const std::string& name, double tol) const {
  std::lock_guard<std::recursive_mutex> guard(*build_lock_);
  if (const auto it = built_.find(name); it != built_.end()) return it->second;
  const BimoduleEntry& e = bimodules.at(name);
  const Json& j = e.definition;
  const std::string path = "bimodules." + name;
  Bimodule b;
  if (e.kind == "explicit") {
    b.left = algebras.at(j.at("left").get<std::string>());
    b.right = algebras.at(j.at("right").get<std::string>());
    b.carrier_dim = j.at("carrier_dim").get<int>();
    b.left_action = get_matrices(j.at("left_action"), path + ".left_action");
    b.right_action = get_matrices(j.at("right_action"), path + ".right_action");
    if (b.left_action.size() != static_cast<std::size_t>(b.left->dim()) ||
        b.right_action.size() != static_cast<std::size_t>(b.right->dim()))
      parse_fail(path, "one action matrix per basis element is required");
    for (const auto* acts : {&b.left_action, &b.right_action})
      for (const auto& m : *acts)
        if (m.rows() != b.carrier_dim || m.cols() != b.carrier_dim) parse_fail(path, "action matrix has the wrong size");
  } else if (e.kind == "twisted") {
    const auto side = j.at("side").get<std::string>() == "left" ? TwistSide::Left : TwistSide::Right;
    b = twisted_bimodule(homomorphisms.at(j.at("map").get<std::string>()).map, side, tol);
  } else if (e.kind == "gns") {
    b = gns_bimodule(algebras.at(j.at("algebra").get<std::string>()), states.at(j.at("state").get<std::string>()).state, tol);
  } else if (e.kind == "ce") {
    b = ce_bimodule({homomorphisms.at(j.at("expectation").get<std::string>()).map,
                     homomorphisms.at(j.at("inclusion").get<std::string>()).map},
                    tol);
  } else {
    b = compose_bimodules(*build_bimodule(j.at("left").get<std::string>(), tol),
                          *build_bimodule(j.at("right").get<std::string>(), tol), tol);
  }
  auto ptr = std::make_shared<const Bimodule>(std::move(b));
  built_[name] = ptr;
  return ptr;
}

Json category_to_json(const CategoryEntry& c) {
  const CategoryData& d = c.category->data();
  Json out;
  out["depth"] = d.depth;
  out["cells"] = d.cell_names;
  out["source"] = d.source;
  out["target"] = d.target;
  out["identities"] = d.identities;
  Json comps = Json::array();
  for (int level = 0; level < d.depth; ++level)
    for (const auto& e : c.category->entries(level)) comps.push_back({e.level, e.x, e.y, e.result});
  out["compositions"] = std::move(comps);
  Json invs = Json::array();
  for (const auto& inv : c.involutions.items()) invs.push_back({inv.alpha, inv.map});
  out["involutions"] = std::move(invs);
  return out;
}

Json algebra_to_json(const FiniteStarAlgebra& a) {
  Json out;
  Json basis = Json::array();
  for (const auto& b : a.basis()) basis.push_back(matrix_to_json(b));
  out["basis"] = std::move(basis);
  if (a.unit()) out["unit"] = matrix_to_json(*a.unit());
  return out;
}

Json hypermatrix_to_json(const Hypermatrix& h) {
  Json out;
  out["sizes"] = h.factor_sizes();
  Json entries = Json::array();
  const auto& sizes = h.factor_sizes();
  std::vector<int> rows(sizes.size()), cols(sizes.size());
  for (Eigen::Index flat = 0; flat < h.size(); ++flat) {
    const Cx v = h.entries()(flat);
    if (v == Cx(0.0)) continue;
    Eigen::Index rest = flat;
    for (std::size_t k = sizes.size(); k-- > 0;) {
      const Eigen::Index n = sizes[k];
      const Eigen::Index digit = rest % (n * n);
      rest /= n * n;
      rows[k] = static_cast<int>(digit / n);
      cols[k] = static_cast<int>(digit % n);
    }
    Json idx = Json::array();
    for (std::size_t k = 0; k < sizes.size(); ++k) idx.push_back({rows[k], cols[k]});
    entries.push_back({idx, v.real(), v.imag()});
  }
  out["entries"] = std::move(entries);
  return out;
}

Json Workspace::to_json() const {
  Json out;
  out["version"] = "1";
  Json cats = Json::object(), algs = Json::object(), sts = Json::object(), homs = Json::object(), bims = Json::object(),
       hyps = Json::object(), ints = Json::object();
  for (const auto& [name, c] : categories.items()) cats[name] = category_to_json(c);
  for (const auto& [name, a] : algebras.items()) algs[name] = algebra_to_json(*a);
  for (const auto& [name, s] : states.items()) sts[name] = {{"algebra", s.algebra}, {"density", matrix_to_json(s.state.density())}};
  for (const auto& [name, h] : homomorphisms.items())
    homs[name] = {{"source", h.source}, {"target", h.target}, {"matrix", matrix_to_json(h.matrix)}};
  for (const auto& [name, b] : bimodules.items()) bims[name] = b.definition;
  for (const auto& [name, h] : hypermatrices.items()) hyps[name] = hypermatrix_to_json(h);
  for (const auto& [name, t] : intertwiners.items())
    ints[name] = {{"source", t.source}, {"target", t.target}, {"map", matrix_to_json(t.map)}};
  out["categories"] = std::move(cats);
  out["algebras"] = std::move(algs);
  out["states"] = std::move(sts);
  out["homomorphisms"] = std::move(homs);
  out["bimodules"] = std::move(bims);
  out["hypermatrices"] = std::move(hyps);
  out["intertwiners"] = std::move(ints);
  return out;
}

}  // namespace hcstar

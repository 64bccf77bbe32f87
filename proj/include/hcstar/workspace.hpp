#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "hcstar/algebra.hpp"
#include "hcstar/error.hpp"
#include "hcstar/globular.hpp"
#include "hcstar/hypermatrix.hpp"
#include "hcstar/relations.hpp"
#include "hcstar/report.hpp"

namespace hcstar {

/// Name -> object in declaration order.
template <typename T>
class Section {
 public:
  void add(const std::string& name, T value) {
    index_[name] = items_.size();
    items_.emplace_back(name, std::move(value));
  }
  bool has(const std::string& name) const { return index_.count(name) != 0; }
  /// Throws UnresolvedReference naming the missing object.
  const T& at(const std::string& name) const {
    const auto it = index_.find(name);
    if (it == index_.end()) throw Error(ErrorKind::UnresolvedReference, "unresolved reference \"" + name + "\"");
    return items_[it->second].second;
  }
  const std::vector<std::pair<std::string, T>>& items() const { return items_; }
  bool empty() const { return items_.empty(); }

 private:
  std::vector<std::pair<std::string, T>> items_;
  std::map<std::string, std::size_t> index_;
};

struct CategoryEntry {
  std::shared_ptr<const GlobularCategory> category;
  InvolutionFamily involutions;
};

struct StateEntry {
  std::string algebra;
  State state;
};

struct HomomorphismEntry {
  std::string source;
  std::string target;
  Mat matrix;  // acts on column-major vectorized matrices
  AlgebraMap map;
};

/// Bimodules are stored as their defining recipe and built on demand.
struct BimoduleEntry {
  std::string kind;  // explicit | twisted | gns | ce | compose
  Json definition;
};

struct IntertwinerEntry {
  std::string source;
  std::string target;
  Mat map;
};

/// Parsed workspace file, schema version "1". Parsing validates structure
/// and cross-references; axioms are left to the commands.
class Workspace {
 public:
  static Workspace parse(const Json& j);
  static Workspace parse_text(const std::string& text);
  static Workspace load(const std::string& path);

  Json to_json() const;

  Section<CategoryEntry> categories;
  Section<AlgebraPtr> algebras;
  Section<StateEntry> states;
  Section<HomomorphismEntry> homomorphisms;
  Section<BimoduleEntry> bimodules;
  Section<Hypermatrix> hypermatrices;
  Section<IntertwinerEntry> intertwiners;

  /// Builds a bimodule from its recipe, recursively for compositions.
  std::shared_ptr<const Bimodule> build_bimodule(const std::string& name, double tol = default_tolerance()) const;

 private:
  std::shared_ptr<std::recursive_mutex> build_lock_ = std::make_shared<std::recursive_mutex>();
  mutable std::map<std::string, std::shared_ptr<const Bimodule>> built_;
};

Json category_to_json(const CategoryEntry& c);
Json algebra_to_json(const FiniteStarAlgebra& a);
Json hypermatrix_to_json(const Hypermatrix& h);

}  // namespace hcstar

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hcstar/report.hpp"

namespace hcstar {

using CellId = std::int32_t;

/// One entry of a composition table: x o_level y = result.
struct Composition {
  int level;
  CellId x;
  CellId y;
  CellId result;

  auto operator<=>(const Composition&) const = default;
};

/// Raw, explicit description of a finite strict globular n-category. Nothing
/// is inferred: identities and every composite are listed.
struct CategoryData {
  int depth = 1;
  std::vector<std::string> cell_names;       // one per cell
  std::vector<std::vector<CellId>> source;   // [level][cell]
  std::vector<std::vector<CellId>> target;   // [level][cell]
  std::vector<std::vector<CellId>> identities;  // [level] -> cells of C^level
  std::vector<Composition> compositions;
};

/// Finite strict globular n-category with dense composition lookup. The
/// constructor only validates the shape of the data (indices in range, no
/// conflicting table entries); the axioms are checked by
/// check_category_axioms().
class GlobularCategory {
 public:
  explicit GlobularCategory(CategoryData data);

  int depth() const { return data_.depth; }
  CellId size() const { return static_cast<CellId>(data_.cell_names.size()); }
  const CategoryData& data() const { return data_; }
  const std::string& name(CellId x) const { return data_.cell_names[static_cast<std::size_t>(x)]; }
  std::optional<CellId> find(const std::string& name) const;

  CellId source(int level, CellId x) const { return data_.source[level][x]; }
  CellId target(int level, CellId x) const { return data_.target[level][x]; }
  bool is_identity(int level, CellId x) const {
    return identity_flags_[level][static_cast<std::size_t>(x)] != 0;
  }
  const std::vector<CellId>& identities(int level) const { return data_.identities[level]; }

  /// Table lookup; nullopt when no entry exists.
  std::optional<CellId> try_compose(int level, CellId x, CellId y) const {
    const CellId r = table_[level][static_cast<std::size_t>(x) * n_ + static_cast<std::size_t>(y)];
    if (r < 0) return std::nullopt;
    return r;
  }
  /// Throws NotComposable unless source(level, x) == target(level, y).
  CellId compose(int level, CellId x, CellId y) const;

  /// All table entries of one level, sorted by (x, y).
  const std::vector<Composition>& entries(int level) const { return entries_[level]; }
  /// Pairs (x, y) with x o_level y == z.
  const std::vector<std::pair<CellId, CellId>>& factorizations(int level, CellId z) const {
    return factorizations_[level][static_cast<std::size_t>(z)];
  }

 private:
  CategoryData data_;
  std::size_t n_ = 0;
  std::vector<std::vector<char>> identity_flags_;
  std::vector<std::vector<CellId>> table_;
  std::vector<std::vector<Composition>> entries_;
  std::vector<std::vector<std::vector<std::pair<CellId, CellId>>>> factorizations_;
};

/// A duality map *_alpha, alpha a non-empty subset of {0..n-1}.
struct Involution {
  std::vector<int> alpha;  // sorted, unique
  std::vector<CellId> map;

  int min_level() const { return alpha.front(); }
  bool flips(int level) const;
};

/// Family of total involution maps; ingestion rejects partial maps.
class InvolutionFamily {
 public:
  InvolutionFamily() = default;
  InvolutionFamily(const GlobularCategory& cat, std::vector<Involution> items);

  const std::vector<Involution>& items() const { return items_; }
  bool empty() const { return items_.empty(); }
  /// The involution used for level p: *_{p} if present, otherwise the first
  /// *_alpha with min(alpha) == p.
  const Involution* for_level(int level) const;

 private:
  std::vector<Involution> items_;
};

CheckReport check_category_axioms(const GlobularCategory& cat);

/// Interchange law (x o_p y) o_q (w o_p z) == (x o_q w) o_p (y o_q z) for all
/// q < p. Pruned by fibering p-composable pairs over q-sources/q-targets;
/// the outer loop runs under OpenMP. Witnesses are (q, p, x, y, w, z).
CheckReport check_exchange(const GlobularCategory& cat);

/// Functoriality of whiskering by identities: for iota in C^p and q < p the
/// partial maps iota o_q - and - o_q iota preserve o_p and o_p-identities.
CheckReport check_noncommutative_exchange(const GlobularCategory& cat);

CheckReport check_involutions(const GlobularCategory& cat, const InvolutionFamily& inv);

struct FullyInvolutiveResult {
  bool fully_involutive = false;
  /// Generated index sets as bitmasks over levels, sorted.
  std::vector<std::uint32_t> generated;
};
/// Closure of the index sets under symmetric difference.
FullyInvolutiveResult check_fully_involutive(const InvolutionFamily& inv, int depth);

/// Eckmann-Hilton collapse on the q-loops around each q-identity: checks
/// x o_p y == x o_q y == y o_p x wherever both sides are defined. Throws
/// PreconditionViolated when q >= p.
CheckReport detect_eckmann_hilton(const GlobularCategory& cat, int q, int p);

namespace reference {
/// Unpruned serial O(|cells|^4) exchange check, kept as the oracle for the
/// pruned parallel kernel.
CheckReport check_exchange_bruteforce(const GlobularCategory& cat);
}  // namespace reference

}  // namespace hcstar

#include "hcstar/globular.hpp"

#include <algorithm>
#include <set>

#include "hcstar/error.hpp"

namespace hcstar {
namespace {

using W = std::vector<std::int64_t>;

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::InvalidCategory, what);
}

}  // namespace

GlobularCategory::GlobularCategory(CategoryData data) : data_(std::move(data)) {
  const int n = data_.depth;
  require(n >= 1, "depth must be at least 1");
  n_ = data_.cell_names.size();
  const auto in_range = [&](CellId c) { return c >= 0 && static_cast<std::size_t>(c) < n_; };
  require(data_.source.size() == static_cast<std::size_t>(n) &&
              data_.target.size() == static_cast<std::size_t>(n),
          "source/target must have one row per level");
  require(data_.identities.size() == static_cast<std::size_t>(n),
          "identities must have one list per level");
  for (int p = 0; p < n; ++p) {
    require(data_.source[p].size() == n_ && data_.target[p].size() == n_,
            "source/target maps must be total on cells (level " + std::to_string(p) + ")");
    for (std::size_t x = 0; x < n_; ++x)
      require(in_range(data_.source[p][x]) && in_range(data_.target[p][x]),
              "source/target out of range at level " + std::to_string(p));
  }

  identity_flags_.assign(static_cast<std::size_t>(n), std::vector<char>(n_, 0));
  for (int p = 0; p < n; ++p) {
    auto& ids = data_.identities[p];
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    for (CellId c : ids) {
      require(in_range(c), "identity cell out of range");
      identity_flags_[p][static_cast<std::size_t>(c)] = 1;
    }
  }

  table_.assign(static_cast<std::size_t>(n), std::vector<CellId>(n_ * n_, -1));
  entries_.assign(static_cast<std::size_t>(n), {});
  factorizations_.assign(static_cast<std::size_t>(n),
                         std::vector<std::vector<std::pair<CellId, CellId>>>(n_));
  std::sort(data_.compositions.begin(), data_.compositions.end());
  data_.compositions.erase(std::unique(data_.compositions.begin(), data_.compositions.end()),
                           data_.compositions.end());
  for (const auto& c : data_.compositions) {
    require(c.level >= 0 && c.level < n, "composition level out of range");
    require(in_range(c.x) && in_range(c.y) && in_range(c.result),
            "composition cell out of range");
    CellId& slot = table_[c.level][static_cast<std::size_t>(c.x) * n_ + static_cast<std::size_t>(c.y)];
    require(slot < 0, "conflicting composition entries for (" + name(c.x) + ", " + name(c.y) +
                          ") at level " + std::to_string(c.level));
    slot = c.result;
    entries_[c.level].push_back(c);
    factorizations_[c.level][static_cast<std::size_t>(c.result)].emplace_back(c.x, c.y);
  }
}

std::optional<CellId> GlobularCategory::find(const std::string& cell) const {
  for (std::size_t i = 0; i < n_; ++i)
    if (data_.cell_names[i] == cell) return static_cast<CellId>(i);
  return std::nullopt;
}

CellId GlobularCategory::compose(int level, CellId x, CellId y) const {
  if (level < 0 || level >= depth())
    throw Error(ErrorKind::PreconditionViolated, "level out of range");
  if (source(level, x) != target(level, y))
    throw Error(ErrorKind::NotComposable, name(x) + " o_" + std::to_string(level) + " " + name(y) +
                                              ": source(x) != target(y)");
  auto r = try_compose(level, x, y);
  if (!r)
    throw Error(ErrorKind::NotComposable, "composition table has no entry for " + name(x) +
                                              " o_" + std::to_string(level) + " " + name(y));
  return *r;
}

// ------------------------------------------------------------- involutions

bool Involution::flips(int level) const {
  return std::binary_search(alpha.begin(), alpha.end(), level);
}

InvolutionFamily::InvolutionFamily(const GlobularCategory& cat, std::vector<Involution> items)
    : items_(std::move(items)) {
  for (auto& inv : items_) {
    std::sort(inv.alpha.begin(), inv.alpha.end());
    inv.alpha.erase(std::unique(inv.alpha.begin(), inv.alpha.end()), inv.alpha.end());
    if (inv.alpha.empty())
      throw Error(ErrorKind::InvalidInvolution, "involution index set must be non-empty");
    if (inv.alpha.front() < 0 || inv.alpha.back() >= cat.depth())
      throw Error(ErrorKind::InvalidInvolution, "involution index out of range");
    if (inv.map.size() != static_cast<std::size_t>(cat.size()))
      throw Error(ErrorKind::InvalidInvolution, "involution map must be total on cells");
    for (CellId c : inv.map)
      if (c < 0 || c >= cat.size())
        throw Error(ErrorKind::InvalidInvolution, "involution image out of range");
  }
}

const Involution* InvolutionFamily::for_level(int level) const {
  for (const auto& inv : items_)
    if (inv.alpha.size() == 1 && inv.alpha.front() == level) return &inv;
  for (const auto& inv : items_)
    if (inv.min_level() == level) return &inv;
  return nullptr;
}

// ------------------------------------------------------------------ checks

CheckReport check_category_axioms(const GlobularCategory& cat) {
  CheckReport rep;
  const int n = cat.depth();
  const CellId size = cat.size();

  for (int p = 0; p < n; ++p) {
    for (CellId x = 0; x < size; ++x) {
      const CellId s = cat.source(p, x), t = cat.target(p, x);
      if (!cat.is_identity(p, s) || !cat.is_identity(p, t)) rep.add("source_target_identity", {p, x});
      if (cat.is_identity(p, x) && (s != x || t != x)) rep.add("identity_endpoints", {p, x});
      // identity laws
      auto r = cat.try_compose(p, x, s);
      if (!r || *r != x) rep.add("right_identity", {p, x});
      auto l = cat.try_compose(p, t, x);
      if (!l || *l != x) rep.add("left_identity", {p, x});
      rep.count("identity_laws", 2);
    }
    // definedness matches endpoint matching
    for (CellId x = 0; x < size; ++x)
      for (CellId y = 0; y < size; ++y) {
        const bool composable = cat.source(p, x) == cat.target(p, y);
        const auto z = cat.try_compose(p, x, y);
        if (composable && !z) rep.add("composition_missing", {p, x, y});
        if (!composable && z) rep.add("composition_undefined", {p, x, y});
        if (z && (cat.source(p, *z) != cat.source(p, y) || cat.target(p, *z) != cat.target(p, x)))
          rep.add("composite_endpoints", {p, x, y});
      }
    // associativity over defined triples
    for (const auto& e1 : cat.entries(p)) {
      for (CellId z = 0; z < size; ++z) {
        const auto yz = cat.try_compose(p, e1.y, z);
        if (!yz) continue;
        const auto lhs = cat.try_compose(p, e1.result, z);
        const auto rhs = cat.try_compose(p, e1.x, *yz);
        rep.count("associativity_triples");
        if (lhs != rhs || !lhs) rep.add("associativity", {p, e1.x, e1.y, z});
      }
    }
  }

  for (int p = 0; p < n; ++p)
    for (int q = 0; q < p; ++q) {
      for (CellId c : cat.identities(q))
        if (!cat.is_identity(p, c)) rep.add("identity_inclusion", {q, p, c});
      const auto& ids = cat.identities(p);
      for (CellId a : ids)
        for (CellId b : ids) {
          const auto r = cat.try_compose(q, a, b);
          if (r && !cat.is_identity(p, *r)) rep.add("identity_closure", {q, p, a, b});
        }
      for (CellId x = 0; x < size; ++x) {
        const CellId sp = cat.source(p, x), tp = cat.target(p, x);
        if (cat.source(q, sp) != cat.source(q, x) || cat.source(q, tp) != cat.source(q, x) ||
            cat.target(q, sp) != cat.target(q, x) || cat.target(q, tp) != cat.target(q, x))
          rep.add("globularity", {q, p, x});
        rep.count("globularity_cells");
      }
    }
  rep.canonicalize();
  return rep;
}

namespace {

void exchange_quad(const GlobularCategory& cat, int q, int p, const Composition& e1,
                   const Composition& e2, CheckReport& rep) {
  const auto lhs = cat.try_compose(q, e1.result, e2.result);
  if (!lhs) return;
  rep.count("quadruples_checked");
  // e1 = (x, y), e2 = (w, z)
  const auto xw = cat.try_compose(q, e1.x, e2.x);
  const auto yz = cat.try_compose(q, e1.y, e2.y);
  std::optional<CellId> rhs;
  if (xw && yz) rhs = cat.try_compose(p, *xw, *yz);
  if (!rhs || *rhs != *lhs) rep.add("exchange", {q, p, e1.x, e1.y, e2.x, e2.y});
}

}  // namespace

CheckReport check_exchange(const GlobularCategory& cat) {
  CheckReport rep;
  const int n = cat.depth();
  for (int p = 1; p < n; ++p) {
    const auto& entries = cat.entries(p);
    for (int q = 0; q < p; ++q) {
      // Fiber the right-hand factors by the q-target of their composite.
      std::vector<std::vector<std::size_t>> by_target(static_cast<std::size_t>(cat.size()));
      for (std::size_t k = 0; k < entries.size(); ++k)
        by_target[static_cast<std::size_t>(cat.target(q, entries[k].result))].push_back(k);

      const auto count = static_cast<std::int64_t>(entries.size());
#pragma omp parallel
      {
        CheckReport local;
#pragma omp for schedule(dynamic, 16) nowait
        for (std::int64_t i = 0; i < count; ++i) {
          const auto& e1 = entries[static_cast<std::size_t>(i)];
          for (std::size_t k : by_target[static_cast<std::size_t>(cat.source(q, e1.result))])
            exchange_quad(cat, q, p, e1, entries[k], local);
        }
#pragma omp critical(hcstar_exchange_merge)
        rep.merge(local);
      }
    }
  }
  rep.canonicalize();
  return rep;
}

namespace reference {

CheckReport check_exchange_bruteforce(const GlobularCategory& cat) {
  CheckReport rep;
  const CellId size = cat.size();
  for (int p = 1; p < cat.depth(); ++p)
    for (int q = 0; q < p; ++q)
      for (CellId x = 0; x < size; ++x)
        for (CellId y = 0; y < size; ++y) {
          const auto u = cat.try_compose(p, x, y);
          if (!u) continue;
          for (CellId w = 0; w < size; ++w)
            for (CellId z = 0; z < size; ++z) {
              const auto v = cat.try_compose(p, w, z);
              if (!v) continue;
              exchange_quad(cat, q, p, {p, x, y, *u}, {p, w, z, *v}, rep);
            }
        }
  rep.canonicalize();
  return rep;
}

}  // namespace reference

CheckReport check_noncommutative_exchange(const GlobularCategory& cat) {
  CheckReport rep;
  const int n = cat.depth();
  for (int p = 1; p < n; ++p)
    for (int q = 0; q < p; ++q)
      for (CellId iota : cat.identities(p))
        for (int side = 0; side < 2; ++side) {
          const char* label = side == 0 ? "nc_exchange_left" : "nc_exchange_right";
          const char* id_label = side == 0 ? "nc_identity_left" : "nc_identity_right";
          auto whisker = [&](CellId x) {
            return side == 0 ? cat.try_compose(q, iota, x) : cat.try_compose(q, x, iota);
          };
          for (const auto& e : cat.entries(p)) {
            const auto fx = whisker(e.x), fy = whisker(e.y);
            if (!fx || !fy) continue;
            rep.count("whiskered_pairs");
            const auto fz = whisker(e.result);
            const auto prod = cat.try_compose(p, *fx, *fy);
            if (!fz || !prod || *fz != *prod) rep.add(label, {p, q, iota, e.x, e.y});
          }
          for (CellId kappa : cat.identities(p)) {
            const auto fk = whisker(kappa);
            if (fk && !cat.is_identity(p, *fk)) rep.add(id_label, {p, q, iota, kappa});
          }
        }
  rep.canonicalize();
  return rep;
}

CheckReport check_involutions(const GlobularCategory& cat, const InvolutionFamily& inv) {
  CheckReport rep;
  const auto& items = inv.items();
  for (std::size_t k = 0; k < items.size(); ++k) {
    const auto& star = items[k];
    const auto K = static_cast<std::int64_t>(k);
    const auto& m = star.map;
    for (CellId x = 0; x < cat.size(); ++x) {
      if (m[m[x]] != x) rep.add("involutive", {K, x});
      if (cat.is_identity(star.min_level(), x) && m[x] != x)
        rep.add("hermitian", {K, star.min_level(), x});
    }
    for (int q = 0; q < cat.depth(); ++q) {
      const bool contra = star.flips(q);
      for (CellId x = 0; x < cat.size(); ++x) {
        const bool ok = contra ? (cat.source(q, m[x]) == m[cat.target(q, x)] &&
                                  cat.target(q, m[x]) == m[cat.source(q, x)])
                               : (cat.source(q, m[x]) == m[cat.source(q, x)] &&
                                  cat.target(q, m[x]) == m[cat.target(q, x)]);
        if (!ok) rep.add(contra ? "contravariant_endpoints" : "covariant_endpoints", {K, q, x});
      }
      for (const auto& e : cat.entries(q)) {
        rep.count("functoriality_checks");
        const auto img = contra ? cat.try_compose(q, m[e.y], m[e.x]) : cat.try_compose(q, m[e.x], m[e.y]);
        if (!img || *img != m[e.result])
          rep.add(contra ? "contravariant" : "covariant", {K, q, e.x, e.y});
      }
    }
    for (std::size_t l = k + 1; l < items.size(); ++l) {
      const auto& other = items[l].map;
      for (CellId x = 0; x < cat.size(); ++x)
        if (other[m[x]] != m[other[x]])
          rep.add("commuting", {K, static_cast<std::int64_t>(l), x});
    }
  }
  rep.canonicalize();
  return rep;
}

FullyInvolutiveResult check_fully_involutive(const InvolutionFamily& inv, int depth) {
  std::set<std::uint32_t> closure{0};
  std::vector<std::uint32_t> gens;
  for (const auto& star : inv.items()) {
    std::uint32_t mask = 0;
    for (int a : star.alpha) mask |= (1u << a);
    gens.push_back(mask);
  }
  bool grew = true;
  while (grew) {
    grew = false;
    const std::vector<std::uint32_t> current(closure.begin(), closure.end());
    for (auto s : current)
      for (auto g : gens)
        if (closure.insert(s ^ g).second) grew = true;
  }
  FullyInvolutiveResult out;
  out.generated.assign(closure.begin(), closure.end());
  out.fully_involutive = closure.size() == (std::size_t{1} << depth);
  return out;
}

CheckReport detect_eckmann_hilton(const GlobularCategory& cat, int q, int p) {
  if (q >= p || q < 0 || p >= cat.depth())
    throw Error(ErrorKind::PreconditionViolated, "Eckmann-Hilton detection needs 0 <= q < p < depth");
  CheckReport rep;
  const bool exchange = check_exchange(cat).passed();
  for (CellId iota : cat.identities(q)) {
    std::vector<CellId> loops;
    for (CellId x = 0; x < cat.size(); ++x)
      if (cat.source(q, x) == iota && cat.target(q, x) == iota) loops.push_back(x);
    rep.count("loop_cells", loops.size());
    for (CellId x : loops)
      for (CellId y : loops) {
        rep.count("loop_pairs");
        const auto xp = cat.try_compose(p, x, y), xq = cat.try_compose(q, x, y);
        const auto yp = cat.try_compose(p, y, x), yq = cat.try_compose(q, y, x);
        if (xp && xq && *xp != *xq) rep.add("eh_coincide", {iota, x, y});
        if (xp && yp && *xp != *yp) rep.add("eh_commute_p", {iota, x, y});
        if (xq && yq && *xq != *yq) rep.add("eh_commute_q", {iota, x, y});
      }
  }
  rep.statistics["exchange_holds"] = exchange ? 1 : 0;
  if (exchange)
    rep.notes.push_back(rep.passed() ? "exchange holds; collapse confirmed: o_p = o_q, both commutative"
                                     : "exchange holds but collapse fails; table is inconsistent");
  else
    rep.notes.push_back(rep.passed()
                            ? "exchange fails; loops nevertheless commute"
                            : "exchange fails (non-commutative exchange semantics); commutativity witnesses reported");
  rep.canonicalize();
  return rep;
}

}  // namespace hcstar

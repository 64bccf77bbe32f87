#include "hcstar/fixtures.hpp"

#include <array>
#include <functional>
#include <string>

namespace hcstar::fixtures {
namespace {

std::string pair_name(int i, int j) { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; }

}  // namespace

InvolutiveCategory pair_groupoid(int n) {
  CategoryData d;
  d.depth = 1;
  d.source.assign(1, {});
  d.target.assign(1, {});
  d.identities.assign(1, {});
  const auto cell = [n](int i, int j) { return static_cast<CellId>(i * n + j); };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      d.cell_names.push_back(pair_name(i + 1, j + 1));
      d.source[0].push_back(cell(j, j));
      d.target[0].push_back(cell(i, i));
    }
  for (int i = 0; i < n; ++i) d.identities[0].push_back(cell(i, i));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) d.compositions.push_back({0, cell(i, j), cell(j, k), cell(i, k)});

  GlobularCategory cat(std::move(d));
  Involution transpose{{0}, {}};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) transpose.map.push_back(cell(j, i));
  InvolutionFamily inv(cat, {transpose});
  return {std::move(cat), std::move(inv)};
}

GlobularCategory group_two_category(const std::vector<std::vector<int>>& table,
                                    const std::vector<std::string>& names) {
  const auto n = static_cast<CellId>(table.size());
  CategoryData d;
  d.depth = 2;
  d.cell_names = names;
  d.source.assign(2, std::vector<CellId>(static_cast<std::size_t>(n), 0));
  d.target = d.source;
  d.identities = {{0}, {0}};
  for (int level = 0; level < 2; ++level)
    for (CellId a = 0; a < n; ++a)
      for (CellId b = 0; b < n; ++b) d.compositions.push_back({level, a, b, table[a][b]});
  return GlobularCategory(std::move(d));
}

GlobularCategory cyclic_two_category(int order) {
  std::vector<std::vector<int>> table(static_cast<std::size_t>(order));
  std::vector<std::string> names;
  for (int a = 0; a < order; ++a) {
    names.push_back("g" + std::to_string(a));
    for (int b = 0; b < order; ++b) table[a].push_back((a + b) % order);
  }
  return group_two_category(table, names);
}

GlobularCategory symmetric3_two_category() {
  // Permutations of {0,1,2} as images of (0,1,2); element 0 is the identity.
  const std::vector<std::array<int, 3>> perms = {{0, 1, 2}, {1, 0, 2}, {0, 2, 1},
                                                 {2, 1, 0}, {1, 2, 0}, {2, 0, 1}};
  const std::vector<std::string> names = {"e", "(01)", "(12)", "(02)", "(012)", "(021)"};
  std::vector<std::vector<int>> table(6, std::vector<int>(6));
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      // (a*b)(k) = a(b(k))
      std::array<int, 3> c{};
      for (int k = 0; k < 3; ++k) c[k] = perms[a][perms[b][k]];
      for (int r = 0; r < 6; ++r)
        if (perms[r] == c) table[a][b] = r;
    }
  return group_two_category(table, names);
}

InvolutiveCategory hypermatrix_index_category(const std::vector<int>& factor_sizes, Mode mode) {
  const Hypermatrix shape(factor_sizes);
  const auto cells = static_cast<CellId>(shape.size());
  const std::size_t depth = factor_sizes.size();

  // digits of each cell: (i_k, j_k)
  std::vector<std::vector<std::pair<int, int>>> digits(static_cast<std::size_t>(cells));
  {
    std::vector<int> rows(depth, 0), cols(depth, 0);
    std::function<void(std::size_t)> walk = [&](std::size_t k) {
      if (k == depth) {
        std::vector<std::pair<int, int>> dg;
        for (std::size_t t = 0; t < depth; ++t) dg.emplace_back(rows[t], cols[t]);
        digits[static_cast<std::size_t>(shape.index(rows, cols))] = dg;
        return;
      }
      for (int i = 0; i < factor_sizes[k]; ++i)
        for (int j = 0; j < factor_sizes[k]; ++j) {
          rows[k] = i;
          cols[k] = j;
          walk(k + 1);
        }
    };
    walk(0);
  }
  const auto cell_of = [&](const std::vector<std::pair<int, int>>& dg) {
    std::vector<int> rows, cols;
    for (auto [i, j] : dg) {
      rows.push_back(i);
      cols.push_back(j);
    }
    return static_cast<CellId>(shape.index(rows, cols));
  };
  const auto conv = [&](std::size_t k) { return mode.has(static_cast<int>(k) + 1); };

  CategoryData d;
  d.depth = 2;
  d.source.assign(2, {});
  d.target.assign(2, {});
  d.identities.assign(2, {});
  for (CellId x = 0; x < cells; ++x) {
    const auto& dg = digits[static_cast<std::size_t>(x)];
    std::string name = "(";
    for (std::size_t k = 0; k < depth; ++k)
      name += (k ? "," : "") + pair_name(dg[k].first + 1, dg[k].second + 1);
    d.cell_names.push_back(name + ")");

    auto s = dg, t = dg;
    bool identity0 = true;
    for (std::size_t k = 0; k < depth; ++k)
      if (conv(k)) {
        s[k] = {dg[k].second, dg[k].second};
        t[k] = {dg[k].first, dg[k].first};
        identity0 = identity0 && dg[k].first == dg[k].second;
      }
    d.source[0].push_back(cell_of(s));
    d.target[0].push_back(cell_of(t));
    d.source[1].push_back(x);
    d.target[1].push_back(x);
    if (identity0) d.identities[0].push_back(x);
    d.identities[1].push_back(x);
    d.compositions.push_back({1, x, x, x});
  }
  for (CellId x = 0; x < cells; ++x)
    for (CellId y = 0; y < cells; ++y) {
      const auto& a = digits[static_cast<std::size_t>(x)];
      const auto& b = digits[static_cast<std::size_t>(y)];
      bool ok = true;
      auto r = a;
      for (std::size_t k = 0; k < depth && ok; ++k) {
        if (conv(k)) {
          ok = a[k].second == b[k].first;
          r[k] = {a[k].first, b[k].second};
        } else {
          ok = a[k] == b[k];
        }
      }
      if (ok) d.compositions.push_back({0, x, y, cell_of(r)});
    }

  GlobularCategory cat(std::move(d));
  Involution flip{{0}, {}}, trivial{{1}, {}};
  for (CellId x = 0; x < cells; ++x) {
    auto dg = digits[static_cast<std::size_t>(x)];
    for (std::size_t k = 0; k < depth; ++k)
      if (conv(k)) std::swap(dg[k].first, dg[k].second);
    flip.map.push_back(cell_of(dg));
    trivial.map.push_back(x);
  }
  InvolutionFamily inv(cat, {flip, trivial});
  return {std::move(cat), std::move(inv)};
}

GlobularCategory broken_associativity_category() {
  // Unital magma on {e, a, b}: a*a = b, a*b = a, b*a = b, b*b = a.
  // (a*a)*b = a but a*(a*b) = b.
  CategoryData d;
  d.depth = 1;
  d.cell_names = {"e", "a", "b"};
  d.source = {{0, 0, 0}};
  d.target = {{0, 0, 0}};
  d.identities = {{0}};
  const int table[3][3] = {{0, 1, 2}, {1, 2, 1}, {2, 2, 1}};
  for (CellId x = 0; x < 3; ++x)
    for (CellId y = 0; y < 3; ++y) d.compositions.push_back({0, x, y, table[x][y]});
  return GlobularCategory(std::move(d));
}

GlobularCategory nonfunctorial_whiskering_category() {
  // Cells e = 0, iota = 1, g = 2.
  // o_1: objects {e, iota}; g is a loop at e with g o_1 g = e.
  // o_0: monoid with unit e: iota*iota = e, iota*g = g*iota = g*g = g.
  // Left whiskering by iota sends e o_1 g = g to g, but (iota o_0 e) o_1
  // (iota o_0 g) = iota o_1 g is undefined.
  CategoryData d;
  d.depth = 2;
  d.cell_names = {"e", "iota", "g"};
  d.source = {{0, 0, 0}, {0, 1, 0}};
  d.target = {{0, 0, 0}, {0, 1, 0}};
  d.identities = {{0}, {0, 1}};
  const int monoid[3][3] = {{0, 1, 2}, {1, 0, 2}, {2, 2, 2}};
  for (CellId x = 0; x < 3; ++x)
    for (CellId y = 0; y < 3; ++y) d.compositions.push_back({0, x, y, monoid[x][y]});
  d.compositions.push_back({1, 0, 0, 0});
  d.compositions.push_back({1, 0, 2, 2});
  d.compositions.push_back({1, 2, 0, 2});
  d.compositions.push_back({1, 2, 2, 0});
  d.compositions.push_back({1, 1, 1, 1});
  return GlobularCategory(std::move(d));
}

}  // namespace hcstar::fixtures

#pragma once

#include <vector>

#include "hcstar/globular.hpp"
#include "hcstar/hypermatrix.hpp"

namespace hcstar::fixtures {

struct InvolutiveCategory {
  GlobularCategory category;
  InvolutionFamily involutions;
};

/// Pair groupoid N x N with cells (i,j), i,j = 1..N, stored row-major, and
/// *_{0} = transpose.
InvolutiveCategory pair_groupoid(int n);

/// One object, one 1-cell; 2-cells are the elements of a finite group and
/// both o_0 and o_1 are the group product. `table[a][b]` is the index of a*b,
/// element 0 is the neutral element. No involutions are attached.
GlobularCategory group_two_category(const std::vector<std::vector<int>>& table,
                                    const std::vector<std::string>& names);
GlobularCategory cyclic_two_category(int order);
GlobularCategory symmetric3_two_category();

/// Depth-2 index category of hypermatrices with the given factor sizes: o_0
/// composes as convolution at the depths in `mode` and as Schur product
/// elsewhere, o_1 is the discrete (Schur) composition. *_{0} swaps the index
/// pair at the depths in `mode`, *_{1} is the identity map.
InvolutiveCategory hypermatrix_index_category(const std::vector<int>& factor_sizes, Mode mode);

/// Three cells on one object whose o_0 table is not associative.
GlobularCategory broken_associativity_category();

/// Three cells {e, iota, g}: the category axioms hold but whiskering by the
/// o_1-identity iota along o_0 is not functorial for o_1.
GlobularCategory nonfunctorial_whiskering_category();

}  // namespace hcstar::fixtures

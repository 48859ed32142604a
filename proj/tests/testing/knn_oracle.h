//
// fragtok - Copyright 2026 The fragtok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef FRAGTOK_TESTING_KNN_ORACLE_H_
#define FRAGTOK_TESTING_KNN_ORACLE_H_

#include <string>
#include <tuple>
#include <vector>

#include "fragtok/hiergraph.h"

namespace fragtok::testing {

/// Token edge as (receiver, sender, type name).
using TokenEdgeKey = std::tuple<int, int, std::string>;
/// Atom edge as (receiver atom, sender atom, parent token edge).
using AtomEdgeKey = std::tuple<int, int, TokenEdgeKey>;

struct EdgeSets {
  std::vector<TokenEdgeKey> token_edges;  // sorted
  std::vector<AtomEdgeKey> atom_edges;  // sorted
};

/// Edges of the pocket-ligand graph by exhaustive distance tables. Node
/// numbering: pocket global, pocket tokens, ligand global, ligand tokens;
/// atoms likewise with one global atom before each entity's atoms.
EdgeSets brute_force_edges(const Entity &pocket, const Entity &ligand,
                           int k_token, int k_atom);

EdgeSets edge_sets_of(const HierGraph &g);

}  // namespace fragtok::testing

#endif  // FRAGTOK_TESTING_KNN_ORACLE_H_

//
// fragtok - Copyright 2026 The fragtok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef FRAGTOK_SRC_CANON_INTERNAL_H_
#define FRAGTOK_SRC_CANON_INTERNAL_H_

#include <span>
#include <vector>

#include "fragtok/molecule.h"

namespace fragtok::internal {

struct LocalEdge {
  int to;
  int bond;  // local bond id
  BondOrder order;
};

// View of the subgraph induced by a sorted atom set, in local numbering.
struct LocalGraph {
  const MoleculeGraph *mol = nullptr;
  std::vector<int> atoms;  // local -> molecule index, ascending
  std::vector<std::vector<LocalEdge>> adj;
  int num_bonds = 0;
  // True when every molecule neighbor of the atom is inside the subgraph.
  std::vector<bool> whole_neighborhood;

  int size() const { return static_cast<int>(atoms.size()); }
};

LocalGraph make_local_graph(const MoleculeGraph &mol,
                            std::span<const int> sorted_atoms);

// Rank of every atom = number of atoms with a strictly smaller invariant.
std::vector<int> initial_ranks(const LocalGraph &g);

// Iterated neighborhood refinement until the partition is stable.
void refine_ranks(const LocalGraph &g, std::vector<int> &rank);

// Stable refined classes of the whole molecule (no tie breaking).
std::vector<int> symmetry_classes(const MoleculeGraph &mol);

}  // namespace fragtok::internal

#endif  // FRAGTOK_SRC_CANON_INTERNAL_H_

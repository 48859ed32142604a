//
// fragtok - Copyright 2026 The fragtok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef FRAGTOK_MOLGRAPH_H_
#define FRAGTOK_MOLGRAPH_H_

#include <span>
#include <vector>

#include "fragtok/molecule.h"

namespace fragtok {

struct Ring {
  // Cycle order, starting at the smallest atom index and continuing toward
  // its smaller ring neighbor.
  std::vector<int> atoms;
  bool aromatic = false;  // every ring bond is aromatic
};

/// Smallest set of smallest rings. Rings are sorted by size, then by their
/// sorted atom lists; among equally small alternatives in symmetric cages the
/// lexicographically smaller atom set is kept.
std::vector<Ring> perceive_rings(const MoleculeGraph &mol);

/// Subgraph containing exactly the given atoms (renumbered in ascending
/// index order) and the bonds between them. Parity labels are cleared on
/// atoms that lose a neighbor. Throws kIndexOutOfRange.
MoleculeGraph induced_subgraph(const MoleculeGraph &mol,
                               std::span<const int> atoms);

/// Per-bond flag: true if removing the bond disconnects its component.
std::vector<bool> bridge_bonds(const MoleculeGraph &mol);

/// Component id per atom, numbered by smallest member atom.
std::vector<int> connected_components(const MoleculeGraph &mol);

/// Whether the atoms induce a connected subgraph. Empty sets are not.
bool is_connected_subset(const MoleculeGraph &mol, std::span<const int> atoms);

/// Copy with atom i moved to position new_index[i]. Parity labels are
/// adjusted so that the stereo configuration is unchanged.
MoleculeGraph relabel_atoms(const MoleculeGraph &mol,
                            std::span<const int> new_index);

}  // namespace fragtok

#endif  // FRAGTOK_MOLGRAPH_H_

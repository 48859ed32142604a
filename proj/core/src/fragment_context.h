//
// fragtok - Copyright 2026 The fragtok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef FRAGTOK_SRC_FRAGMENT_CONTEXT_H_
#define FRAGTOK_SRC_FRAGMENT_CONTEXT_H_

#include <string>
#include <vector>

#include "atom_set.h"
#include "fragtok/molecule.h"

namespace fragtok::internal {

enum class BasicKind {
  kRing,
  kBond,
  kAtom,
};

struct BasicFragment {
  BasicKind kind;
  AtomSet atoms;
  int element = 0;  // for kAtom
};

// Ring membership and adjacency helpers shared by training and tokenization.
class FragmentContext {
public:
  explicit FragmentContext(const MoleculeGraph &mol);

  const MoleculeGraph &mol() const { return *mol_; }
  int num_atoms() const { return mol_->num_atoms(); }
  const std::vector<BasicFragment> &basics() const { return basics_; }

  AtomSet make_set(std::span<const int> atoms) const {
    return AtomSet::of(num_atoms(), atoms);
  }

  // The set plus every atom bonded to it.
  AtomSet closed_neighborhood(const AtomSet &s) const;

  // Share an atom or are joined by a bond. `a_nbhd` is the closed
  // neighborhood of a.
  static bool adjacent(const AtomSet &a_nbhd, const AtomSet &b) {
    return a_nbhd.intersects(b);
  }

  // Every ring bond inside the union lies on a ring fully contained in it,
  // so rings are never split.
  bool preserves_rings(const AtomSet &u) const;

  // Hash of atom labels and bond orders of the induced subgraph; equal for
  // isomorphic subgraphs.
  std::uint64_t signature(const AtomSet &u) const;

private:
  const MoleculeGraph *mol_;
  std::vector<AtomSet> ring_sets_;
  std::vector<int> ring_bonds_;
  std::vector<std::vector<int>> rings_of_bond_;
  std::vector<BasicFragment> basics_;
};

// Same hash as FragmentContext::signature over a whole molecule.
std::uint64_t molecule_signature(const MoleculeGraph &mol);

}  // namespace fragtok::internal

#endif  // FRAGTOK_SRC_FRAGMENT_CONTEXT_H_

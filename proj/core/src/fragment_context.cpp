//
// fragtok - Copyright 2026 The fragtok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "fragment_context.h"

#include <algorithm>
#include <array>

#include "fragtok/molgraph.h"

namespace fragtok::internal {
namespace {

std::uint32_t atom_label(const Atom &a) {
  return (static_cast<std::uint32_t>(a.element) << 8)
         | (a.aromatic ? 0x80U : 0U)
         | (static_cast<std::uint32_t>(a.formal_charge + 64) & 0x7fU);
}

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::uint64_t finish_signature(std::vector<std::uint32_t> &labels,
                               const std::array<int, 5> &bond_counts) {
  std::sort(labels.begin(), labels.end());
  std::uint64_t h = mix(0, labels.size());
  for (std::uint32_t l: labels)
    h = mix(h, l);
  for (int c: bond_counts)
    h = mix(h, static_cast<std::uint64_t>(c));
  return h;
}

}  // namespace

FragmentContext::FragmentContext(const MoleculeGraph &mol)
    : mol_(&mol), rings_of_bond_(mol.num_bonds()) {
  const int n = mol.num_atoms();
  for (const Ring &ring: perceive_rings(mol)) {
    const int r = static_cast<int>(ring_sets_.size());
    ring_sets_.push_back(AtomSet::of(n, ring.atoms));
    for (std::size_t k = 0; k < ring.atoms.size(); ++k) {
      const int b = mol.find_bond(ring.atoms[k],
                                  ring.atoms[(k + 1) % ring.atoms.size()]);
      rings_of_bond_[b].push_back(r);
    }
    basics_.push_back({ BasicKind::kRing, ring_sets_.back(), 0 });
  }
  for (int b = 0; b < mol.num_bonds(); ++b) {
    if (!rings_of_bond_[b].empty()) {
      ring_bonds_.push_back(b);
      continue;
    }
    const int ends[] = { mol.bond(b).a, mol.bond(b).b };
    basics_.push_back({ BasicKind::kBond, AtomSet::of(n, ends), 0 });
  }
  for (int i = 0; i < n; ++i) {
    if (mol.degree(i) == 0) {
      const int atom[] = { i };
      basics_.push_back({ BasicKind::kAtom, AtomSet::of(n, atom),
                          mol.atom(i).element });
    }
  }
}

AtomSet FragmentContext::closed_neighborhood(const AtomSet &s) const {
  AtomSet out = s;
  for (int a: s.to_vector()) {
    for (const Neighbor &nb: mol_->neighbors(a))
      out.insert(nb.atom);
  }
  return out;
}

bool FragmentContext::preserves_rings(const AtomSet &u) const {
  for (int b: ring_bonds_) {
    const Bond &bond = mol_->bond(b);
    if (!u.contains(bond.a) || !u.contains(bond.b))
      continue;
    const bool whole = std::any_of(
        rings_of_bond_[b].begin(), rings_of_bond_[b].end(),
        [&](int r) { return ring_sets_[r].subset_of(u); });
    if (!whole)
      return false;
  }
  return true;
}

std::uint64_t FragmentContext::signature(const AtomSet &u) const {
  std::vector<std::uint32_t> labels;
  std::array<int, 5> bond_counts {};
  for (int a: u.to_vector()) {
    labels.push_back(atom_label(mol_->atom(a)));
    for (const Neighbor &nb: mol_->neighbors(a)) {
      if (nb.atom > a && u.contains(nb.atom))
        ++bond_counts[static_cast<int>(mol_->bond(nb.bond).order)];
    }
  }
  return finish_signature(labels, bond_counts);
}

std::uint64_t molecule_signature(const MoleculeGraph &mol) {
  std::vector<std::uint32_t> labels;
  std::array<int, 5> bond_counts {};
  for (const Atom &a: mol.atoms())
    labels.push_back(atom_label(a));
  for (const Bond &b: mol.bonds())
    ++bond_counts[static_cast<int>(b.order)];
  return finish_signature(labels, bond_counts);
}

}  // namespace fragtok::internal

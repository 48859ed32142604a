//
// fragtok - Copyright 2026 The fragtok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "fragtok/error.h"
#include "fragtok/molgraph.h"
#include "fragtok/smiles.h"
#include "testing/isomorphism.h"
#include "testing/molecule_generator.h"
#include "testing/smiles_writer.h"

namespace fragtok {
namespace {

std::vector<int> ring_sizes(const std::string &s) {
  std::vector<int> out;
  for (const Ring &r: perceive_rings(parse_smiles(s)))
    out.push_back(static_cast<int>(r.atoms.size()));
  std::sort(out.begin(), out.end());
  return out;
}

TEST(MolGraph, RingCounts) {
  EXPECT_EQ(ring_sizes("CCCC"), std::vector<int>{});
  EXPECT_EQ(ring_sizes("C1CC1"), std::vector<int>{ 3 });
  EXPECT_EQ(ring_sizes("c1ccc2ccccc2c1"), (std::vector<int>{ 6, 6 }));
  EXPECT_EQ(ring_sizes("C1CC2CCC1C2"), (std::vector<int>{ 5, 5 }));
  EXPECT_EQ(ring_sizes("C12C3C4C1C5C2C3C45"), (std::vector<int>{ 4, 4, 4, 4, 4 }));
  EXPECT_EQ(ring_sizes("C1CCC2(CC1)CCCC2"), (std::vector<int>{ 5, 6 }));
}

TEST(MolGraph, RingOrderStartsAtSmallestIndex) {
  const MoleculeGraph m = parse_smiles("CC1CCCCC1");
  const auto rings = perceive_rings(m);
  ASSERT_EQ(rings.size(), 1u);
  const auto &a = rings[0].atoms;
  EXPECT_EQ(a.front(), 1);
  EXPECT_LT(a[1], a.back());
  for (std::size_t i = 0; i < a.size(); ++i)
    EXPECT_GE(m.find_bond(a[i], a[(i + 1) % a.size()]), 0);
  EXPECT_FALSE(rings[0].aromatic);
  EXPECT_TRUE(perceive_rings(parse_smiles("c1ccccc1"))[0].aromatic);
}

// Cycle rank equals bonds - atoms + components for every molecule.
TEST(MolGraph, RingCountMatchesCycleRank) {
  for (const MoleculeGraph &m: testing::random_corpus(31, 200)) {
    const auto comp = connected_components(m);
    const int components = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
    EXPECT_EQ(static_cast<int>(perceive_rings(m).size()),
              m.num_bonds() - m.num_atoms() + components);
  }
}

TEST(MolGraph, BridgesAreNonRingBonds) {
  for (const MoleculeGraph &m: testing::random_corpus(32, 100)) {
    const auto bridges = bridge_bonds(m);
    std::set<std::pair<int, int>> ring_bonds;
    for (const Ring &r: perceive_rings(m)) {
      for (std::size_t i = 0; i < r.atoms.size(); ++i) {
        const int a = r.atoms[i], b = r.atoms[(i + 1) % r.atoms.size()];
        ring_bonds.insert({ std::min(a, b), std::max(a, b) });
      }
    }
    for (int b = 0; b < m.num_bonds(); ++b) {
      const Bond &bond = m.bond(b);
      EXPECT_EQ(bridges[b], !ring_bonds.count({ std::min(bond.a, bond.b), std::max(bond.a, bond.b) }));
    }
  }
}

TEST(MolGraph, InducedSubgraphKeepsBondsInside) {
  const MoleculeGraph m = parse_smiles("Cc1ccccc1O");
  const std::vector<int> atoms = { 6, 1, 2, 7 };
  const MoleculeGraph sub = induced_subgraph(m, atoms);
  EXPECT_EQ(sub.num_atoms(), 4);
  EXPECT_EQ(sub.num_bonds(), 3);
  const std::vector<int> bad = { 0, 12 };
  EXPECT_THROW(induced_subgraph(m, bad), Error);
}

TEST(MolGraph, ConnectedSubset) {
  const MoleculeGraph m = parse_smiles("CCCC.O");
  const std::vector<int> chain = { 0, 1, 2 };
  const std::vector<int> gap = { 0, 2 };
  const std::vector<int> split = { 3, 4 };
  EXPECT_TRUE(is_connected_subset(m, chain));
  EXPECT_FALSE(is_connected_subset(m, gap));
  EXPECT_FALSE(is_connected_subset(m, split));
  const auto comp = connected_components(m);
  EXPECT_EQ(comp[0], comp[3]);
  EXPECT_NE(comp[0], comp[4]);
}

TEST(MolGraph, RelabelPreservesMolecule) {
  std::mt19937_64 rng(3);
  for (const MoleculeGraph &m: testing::random_corpus(33, 100)) {
    const auto perm = testing::random_permutation(m.num_atoms(), rng);
    const MoleculeGraph r = relabel_atoms(m, perm);
    ASSERT_EQ(r.num_bonds(), m.num_bonds());
    for (int i = 0; i < m.num_atoms(); ++i)
      EXPECT_EQ(r.atom(perm[i]).element, m.atom(i).element);
    EXPECT_TRUE(testing::isomorphic(m, r));
  }
  const MoleculeGraph m = parse_smiles("CCO");
  const std::vector<int> not_perm = { 0, 0, 1 };
  EXPECT_THROW(relabel_atoms(m, not_perm), Error);
}

TEST(MolGraph, AddBondRejectsDuplicatesAndBadIndices) {
  MoleculeGraph m;
  m.add_atom({});
  m.add_atom({});
  m.add_bond(0, 1, BondOrder::kSingle);
  try {
    m.add_bond(1, 0, BondOrder::kSingle);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kSyntaxError);
  }
  try {
    m.add_bond(0, 5, BondOrder::kSingle);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kIndexOutOfRange);
  }
}

TEST(MolGraph, PermutationParity) {
  const std::vector<int> a = { 1, 2, 3, 4 };
  const std::vector<int> swap1 = { 2, 1, 3, 4 };
  const std::vector<int> cycle3 = { 2, 3, 1, 4 };
  EXPECT_EQ(permutation_parity(a, a), 1);
  EXPECT_EQ(permutation_parity(a, swap1), -1);
  EXPECT_EQ(permutation_parity(a, cycle3), 1);
  EXPECT_EQ(reorder_chirality(Chirality::kCW, a, swap1), Chirality::kCCW);
  EXPECT_EQ(reorder_chirality(Chirality::kCW, a, cycle3), Chirality::kCW);
}

}  // namespace
}  // namespace fragtok

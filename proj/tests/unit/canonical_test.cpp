//
// fragtok - Copyright 2026 The fragtok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <gtest/gtest.h>

#include <random>

#include "fragtok/error.h"
#include "fragtok/molgraph.h"
#include "fragtok/smiles.h"
#include "testing/isomorphism.h"
#include "testing/molecule_generator.h"
#include "testing/smiles_writer.h"

namespace fragtok {
namespace {

std::string canon(const std::string &s) {
  return canonical_smiles(parse_smiles(s));
}

TEST(Canonical, KnownForms) {
  EXPECT_EQ(canon("C"), "C");
  EXPECT_EQ(canon("OCC"), "CCO");
  EXPECT_EQ(canon("CCO"), "CCO");
  EXPECT_EQ(canon("SC"), "CS");
  EXPECT_EQ(canon("c1ccccc1C"), "Cc1ccccc1");
  EXPECT_EQ(canon("c1c2ccccc2ccc1"), "c1ccc2ccccc2c1");
  EXPECT_EQ(canon("[NH4+]"), "[NH4+]");
  EXPECT_EQ(canon("c1cc[nH]c1"), canon("[nH]1cccc1"));
}

TEST(Canonical, EquivalentSpellingsAgree) {
  const std::vector<std::vector<std::string>> groups = {
    { "CC(=O)Oc1ccccc1C(=O)O", "OC(=O)c1ccccc1OC(C)=O", "c1cccc(OC(C)=O)c1C(O)=O" },
    { "C1CCCCC1", "C1CCCCC1", "C(C1)CCCC1" },
    { "[Na+].[Cl-]", "[Cl-].[Na+]" },
    { "C[C@H](O)C(=O)O", "OC(=O)[C@@H](O)C", "[C@@H](C)(O)C(=O)O" },
  };
  for (const auto &g: groups) {
    for (const std::string &s: g)
      EXPECT_EQ(canon(s), canon(g[0])) << s;
  }
}

TEST(Canonical, Idempotent) {
  for (const std::string &s: testing::drug_smiles()) {
    const std::string c = canon(s);
    EXPECT_EQ(canon(c), c) << s;
  }
}

TEST(Canonical, StableUnderAtomPermutation) {
  std::mt19937_64 rng(7);
  for (const std::string &s: testing::drug_smiles()) {
    const MoleculeGraph mol = parse_smiles(s);
    const std::string expected = canonical_smiles(mol);
    for (int rep = 0; rep < 5; ++rep) {
      const auto perm = testing::random_permutation(mol.num_atoms(), rng);
      EXPECT_EQ(canonical_smiles(relabel_atoms(mol, perm)), expected) << s;
    }
  }
}

TEST(Canonical, StableUnderRandomSpelling) {
  std::mt19937_64 rng(8);
  for (const MoleculeGraph &mol: testing::random_corpus(21, 150)) {
    const std::string expected = canonical_smiles(mol);
    for (int rep = 0; rep < 4; ++rep) {
      const std::string spelled = testing::random_order_smiles(mol, rng);
      EXPECT_EQ(canon(spelled), expected) << spelled;
    }
  }
}

TEST(Canonical, RoundTripIsIsomorphic) {
  const auto corpus = testing::random_corpus(22, 200);
  for (const MoleculeGraph &mol: corpus) {
    const std::string c = canonical_smiles(mol);
    const MoleculeGraph back = parse_smiles(c);
    EXPECT_TRUE(testing::isomorphic(testing::drop_symmetric_stereo(mol),
                                    testing::drop_symmetric_stereo(back)))
        << c;
  }
  for (const std::string &s: testing::drug_smiles()) {
    const MoleculeGraph mol = parse_smiles(s);
    EXPECT_TRUE(testing::isomorphic(testing::drop_symmetric_stereo(mol),
                                    testing::drop_symmetric_stereo(parse_smiles(canon(s)))))
        << s;
  }
}

TEST(Canonical, SubgraphForm) {
  const MoleculeGraph mol = parse_smiles("Cc1ccccc1O");
  const std::vector<int> ring = { 1, 2, 3, 4, 5, 6 };
  EXPECT_EQ(canonical_smiles(mol, ring), "c1ccccc1");
  const std::vector<int> methyl_ring = { 0, 1, 2, 3, 4, 5, 6 };
  EXPECT_EQ(canonical_smiles(mol, methyl_ring), "Cc1ccccc1");
  const std::vector<int> bond = { 6, 7 };
  EXPECT_EQ(canonical_smiles(mol, bond), "Oc");
}

TEST(Canonical, DisconnectedSubsetRejected) {
  const MoleculeGraph mol = parse_smiles("CCCC");
  const std::vector<int> atoms = { 0, 3 };
  try {
    canonical_smiles(mol, atoms);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kDisconnectedSubgraph);
  }
}

TEST(Canonical, DistinctMoleculesDiffer) {
  EXPECT_NE(canon("CCO"), canon("COC"));
  EXPECT_NE(canon("c1ccccc1O"), canon("C1CCCCC1O"));
  EXPECT_NE(canon("CC(=O)O"), canon("CC(O)=C"));
  EXPECT_NE(canon("Cc1ccccc1C"), canon("Cc1cccc(C)c1"));
}

}  // namespace
}  // namespace fragtok

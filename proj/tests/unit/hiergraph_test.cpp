//
// fragtok - Copyright 2026 The fragtok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <gtest/gtest.h>

#include <random>

#include "fragtok/error.h"
#include "fragtok/hiergraph.h"
#include "fragtok/io.h"
#include "fragtok/smiles.h"
#include "testing/knn_oracle.h"
#include "testing/molecule_generator.h"
#include "testing/random_complex.h"

namespace fragtok {
namespace {

Entity fixture_pocket() {
  return read_pocket(read_file(testing::data_path("pocket.pdb")));
}

Entity fixture_ligand(std::size_t index) {
  const Corpus c = read_corpus(testing::data_path("ligands.smi"),
                               testing::data_path("ligands.xyz"));
  const MoleculeGraph &mol = c.records.at(index).molecule;
  return make_ligand_entity(mol, extract_basic_tokens(mol));
}

ErrorCode pocket_error(const std::string &pdb) {
  try {
    read_pocket(pdb);
  } catch (const Error &e) {
    return e.code();
  }
  return ErrorCode::kCorruptRecord;
}

TEST(Pocket, ReadsResiduesAndSkipsHydrogens) {
  const Entity p = fixture_pocket();
  EXPECT_EQ(p.role, EntityRole::kPocket);
  EXPECT_EQ(p.atoms.size(), 89u);
  ASSERT_EQ(p.occurrences.size(), 13u);
  EXPECT_EQ(p.occurrences[0].token_id, "ALA");
  EXPECT_EQ(p.occurrences[1].token_id, "SER");
  EXPECT_EQ(p.occurrences[1].atoms.size(), 6u);
  EXPECT_EQ(p.occurrences.back().token_id, "HOH");
  for (const EntityAtom &a: p.atoms) {
    EXPECT_NE(a.element, 1);
    EXPECT_LT(a.coords[0], 20.0);  // the record after ENDMDL is ignored
  }
}

TEST(Pocket, PositionCodes) {
  const Entity p = fixture_pocket();
  EXPECT_EQ(p.atoms[0].position_code, "");
  EXPECT_EQ(p.atoms[1].position_code, "A");
  EXPECT_EQ(p.atoms[4].position_code, "B");
  EXPECT_EQ(p.atoms[10].position_code, "G");
  EXPECT_EQ(p.atoms[10].element, 8);
}

TEST(Pocket, AlternateLocationsKeepFirst) {
  const std::string pdb =
      "ATOM      1  CA AGLY A   1       1.000   0.000   0.000  0.50  0.00           C\n"
      "ATOM      2  CA BGLY A   1       2.000   0.000   0.000  0.50  0.00           C\n"
      "ATOM      3  N   GLY A   1       0.000   0.000   0.000  1.00  0.00           N\n";
  const Entity p = read_pocket(pdb);
  ASSERT_EQ(p.atoms.size(), 2u);
  EXPECT_DOUBLE_EQ(p.atoms[0].coords[0], 1.0);
}

TEST(Pocket, Errors) {
  EXPECT_EQ(pocket_error("HEADER nothing here\n"), ErrorCode::kEmptyPocket);
  EXPECT_EQ(pocket_error("ATOM      1  CA  GLY A   1       1.000\n"), ErrorCode::kMalformedRecord);
  EXPECT_EQ(pocket_error("ATOM      1  CA  GLY A   1       1.000   x.000   0.000  1.00  0.00           C\n"),
            ErrorCode::kMalformedRecord);
}

TEST(Ligand, RequiresCoordinates) {
  const MoleculeGraph mol = parse_smiles("CCO");
  try {
    make_ligand_entity(mol, extract_basic_tokens(mol));
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kMissingCoordinates);
  }
}

TEST(HierGraph, Layout) {
  const Entity pocket = fixture_pocket();
  const Entity ligand = fixture_ligand(0);
  const HierGraph g = build_hier_graph(pocket, ligand);
  const std::size_t np = pocket.occurrences.size(), nl = ligand.occurrences.size();
  ASSERT_EQ(g.tokens.size(), np + nl + 2);
  EXPECT_TRUE(g.tokens[0].global);
  EXPECT_EQ(g.tokens[0].id, kGlobalToken);
  EXPECT_EQ(g.tokens[0].role, EntityRole::kPocket);
  EXPECT_TRUE(g.tokens[np + 1].global);
  EXPECT_EQ(g.tokens[np + 1].role, EntityRole::kLigand);
  ASSERT_EQ(g.atoms.size(), pocket.atoms.size() + ligand.atoms.size() + 2);
  EXPECT_TRUE(g.atoms[0].global);
  EXPECT_FALSE(g.atoms[0].coords.has_value());
  EXPECT_EQ(g.atoms[0].symbol, kGlobalAtom);
  EXPECT_EQ(g.atoms[0].position_code, kGlobalPosition);
  EXPECT_TRUE(g.atoms[pocket.atoms.size() + 1].global);
  EXPECT_EQ(g.atoms.back().position_code, kLigandPosition);
  EXPECT_EQ(g.k_token, 9);
  EXPECT_EQ(g.k_atom, 3);
}

TEST(HierGraph, EdgeCounts) {
  const Entity pocket = fixture_pocket();
  const Entity ligand = fixture_ligand(1);
  const HierGraph g = build_hier_graph(pocket, ligand, 4, 2);
  const int np = static_cast<int>(pocket.occurrences.size());
  const int nl = static_cast<int>(ligand.occurrences.size());
  std::map<EdgeType, int> counts;
  for (const TokenEdge &e: g.token_edges)
    ++counts[e.type];
  EXPECT_EQ(counts[EdgeType::kIntra] + counts[EdgeType::kInter], 4 * (np + nl));
  EXPECT_EQ(counts[EdgeType::kGlobalMember], 2 * (np + nl));
  EXPECT_EQ(counts[EdgeType::kGlobalGlobal], 2);
  for (const AtomEdge &e: g.atom_edges) {
    const TokenEdge &parent = g.token_edges[e.parent];
    EXPECT_TRUE(std::binary_search(g.tokens[parent.receiver].atoms.begin(),
                                   g.tokens[parent.receiver].atoms.end(), e.receiver));
    EXPECT_TRUE(std::binary_search(g.tokens[parent.sender].atoms.begin(),
                                   g.tokens[parent.sender].atoms.end(), e.sender));
  }
}

TEST(HierGraph, SmallEntitiesGetEveryNeighbor) {
  const Entity pocket = fixture_pocket();
  const Entity ligand = fixture_ligand(2);
  const HierGraph g = build_hier_graph(pocket, ligand, 1000, 1000);
  const int n = static_cast<int>(pocket.occurrences.size() + ligand.occurrences.size());
  int knn = 0;
  for (const TokenEdge &e: g.token_edges)
    knn += e.type == EdgeType::kIntra || e.type == EdgeType::kInter;
  EXPECT_EQ(knn, n * (n - 1));
}

TEST(HierGraph, MatchesBruteForce) {
  std::mt19937_64 rng(71);
  for (int rep = 0; rep < 40; ++rep) {
    const auto [pocket, ligand] = testing::random_complex(rng);
    const int k_token = 1 + rep % 9;
    const int k_atom = 1 + rep % 4;
    const HierGraph g = build_hier_graph(pocket, ligand, k_token, k_atom);
    const testing::EdgeSets got = testing::edge_sets_of(g);
    const testing::EdgeSets expected = testing::brute_force_edges(pocket, ligand, k_token, k_atom);
    EXPECT_EQ(got.token_edges, expected.token_edges) << "rep " << rep;
    EXPECT_EQ(got.atom_edges, expected.atom_edges) << "rep " << rep;
  }
}

TEST(HierGraph, TokenDistanceIsMinimumAtomDistance) {
  const Entity pocket = fixture_pocket();
  const Entity ligand = fixture_ligand(0);
  const HierGraph g = build_hier_graph(pocket, ligand);
  const int a = 1, b = static_cast<int>(g.tokens.size()) - 1;
  double best = 1e300;
  for (int x: g.tokens[a].atoms) {
    for (int y: g.tokens[b].atoms) {
      const Vec3 &p = *g.atoms[x].coords, &q = *g.atoms[y].coords;
      best = std::min(best, std::hypot(p[0] - q[0], p[1] - q[1], p[2] - q[2]));
    }
  }
  EXPECT_NEAR(token_distance(g, a, b), best, 1e-12);
}

TEST(HierGraph, RigidMotionKeepsEdges) {
  std::mt19937_64 rng(72);
  for (int rep = 0; rep < 10; ++rep) {
    const auto [pocket, ligand] = testing::random_complex(rng);
    double r[3][3];
    testing::random_rotation(rng, r);
    const Vec3 t = { 3.0, -7.0, 11.0 };
    const HierGraph a = build_hier_graph(pocket, ligand);
    const HierGraph b = build_hier_graph(testing::transformed(pocket, r, t),
                                         testing::transformed(ligand, r, t));
    EXPECT_EQ(a.token_edges, b.token_edges);
    EXPECT_EQ(a.atom_edges, b.atom_edges);
  }
}

TEST(HierGraph, EdgeTypeNames) {
  for (EdgeType t: { EdgeType::kIntra, EdgeType::kInter, EdgeType::kGlobalMember,
                     EdgeType::kGlobalGlobal })
    EXPECT_EQ(edge_type_from_name(edge_type_name(t)), t);
  EXPECT_FALSE(edge_type_from_name("sideways").has_value());
}

TEST(HierGraph, RejectsUncoveredAtoms) {
  Entity pocket = fixture_pocket();
  pocket.occurrences.back().atoms.clear();
  pocket.occurrences.back().atoms.push_back(0);
  try {
    build_hier_graph(pocket, fixture_ligand(0));
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kMalformedRecord);
  }
}

}  // namespace
}  // namespace fragtok

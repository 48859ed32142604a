//
// fragtok - Copyright 2026 The fragtok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef FRAGTOK_HIERGRAPH_H_
#define FRAGTOK_HIERGRAPH_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fragtok/molecule.h"
#include "fragtok/tokenizer.h"

namespace fragtok {

enum class EntityRole {
  kPocket,
  kLigand,
};

inline constexpr std::string_view kGlobalAtom = "<g_atom>";
inline constexpr std::string_view kGlobalPosition = "<g_pos>";
inline constexpr std::string_view kGlobalToken = "<g_frag>";
inline constexpr std::string_view kLigandPosition = "sm";

struct EntityAtom {
  int element = 6;
  std::string position_code;
  Vec3 coords {};

  bool operator==(const EntityAtom &) const = default;
};

/// One side of a pocket-ligand pair: atoms with coordinates and the token
/// occurrences covering them.
struct Entity {
  EntityRole role = EntityRole::kLigand;
  std::vector<EntityAtom> atoms;
  std::vector<TokenOccurrence> occurrences;

  bool operator==(const Entity &) const = default;
};

/// Residues of ATOM/HETATM records become one occurrence each, keyed by
/// (chain, residue number, insertion code) in order of first appearance.
/// Hydrogens are skipped; the first record of a repeated atom name wins
/// (alternate locations); reading stops at the first ENDMDL.
/// Throws kMalformedRecord and kEmptyPocket.
Entity read_pocket(std::string_view pdb_text);

/// Ligand entity from a tokenized molecule. Every atom needs coordinates
/// (kMissingCoordinates); an empty molecule throws kEmptyEntity.
Entity make_ligand_entity(const MoleculeGraph &mol, const TokenGraph &tg);

enum class EdgeType {
  kIntra,
  kInter,
  kGlobalMember,
  kGlobalGlobal,
};

std::string_view edge_type_name(EdgeType type);
std::optional<EdgeType> edge_type_from_name(std::string_view name);

struct HierAtom {
  std::string symbol;  // element symbol or kGlobalAtom
  std::string position_code;
  std::optional<Vec3> coords;  // absent for global atoms
  EntityRole role = EntityRole::kLigand;
  bool global = false;

  bool operator==(const HierAtom &) const = default;
};

struct HierToken {
  std::string id;  // token id or kGlobalToken
  EntityRole role = EntityRole::kLigand;
  bool global = false;
  std::vector<int> atoms;  // sorted indices into HierGraph::atoms

  bool operator==(const HierToken &) const = default;
};

/// Directed edge: `receiver` gets a message from `sender`.
struct TokenEdge {
  int receiver = 0;
  int sender = 0;
  EdgeType type = EdgeType::kIntra;

  bool operator==(const TokenEdge &) const = default;
};

struct AtomEdge {
  int receiver = 0;
  int sender = 0;
  int parent = 0;  // index into HierGraph::token_edges

  bool operator==(const AtomEdge &) const = default;
};

/// Node order is [pocket global, pocket tokens, ligand global, ligand
/// tokens], and likewise for atoms. Atom edges are grouped by parent edge.
struct HierGraph {
  std::vector<HierAtom> atoms;
  std::vector<HierToken> tokens;
  std::vector<TokenEdge> token_edges;
  std::vector<AtomEdge> atom_edges;
  int k_token = 9;
  int k_atom = 3;

  bool operator==(const HierGraph &) const = default;

  /// Atom -> sorted token indices.
  std::vector<std::vector<int>> a2f() const;
};

/// Minimum distance between the atoms of two non-global tokens.
double token_distance(const HierGraph &g, int a, int b);

/// Throws kEmptyEntity when either side has no atoms or occurrences, and
/// kMalformedRecord when an atom is not covered by any occurrence.
HierGraph build_hier_graph(const Entity &pocket, const Entity &ligand,
                           int k_token = 9, int k_atom = 3);

}  // namespace fragtok

#endif  // FRAGTOK_HIERGRAPH_H_

//
// fragtok - Copyright 2026 The fragtok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef FRAGTOK_SMILES_H_
#define FRAGTOK_SMILES_H_

#include <span>
#include <string>
#include <string_view>

#include "fragtok/molecule.h"

namespace fragtok {

/// Parses a SMILES string.
///
/// Supported: organic-subset atoms, bracket atoms with charge, hydrogen count
/// and @/@@ parity, ring closures 0-9 and %nn, branches, the bond symbols
/// - = # : and dot-separated components. Directional bonds (/ and \) are read
/// as plain single bonds; isotopes and extended chirality classes are
/// rejected with kUnsupportedFeature. Aromaticity is taken from the input as
/// written.
///
/// Errors: kSyntaxError, kUnbalancedRing, kUnbalancedBranch,
/// kUnknownElement, kInvalidChirality, kValenceError, kUnsupportedFeature.
MoleculeGraph parse_smiles(std::string_view smiles);

/// Canonical isomeric SMILES of the whole molecule. Disconnected components
/// are written in lexicographic order joined by '.'.
std::string canonical_smiles(const MoleculeGraph &mol);

/// Canonical isomeric SMILES of the subgraph induced by `atoms`, which must
/// be connected (kDisconnectedSubgraph otherwise). Bonds leaving the
/// subgraph are dropped without padding hydrogens; parity is written only
/// for atoms whose full neighborhood lies inside the subgraph. A single
/// charged or aromatic atom is written in brackets, e.g. "[Cl-]", "[n+]".
std::string canonical_smiles(const MoleculeGraph &mol,
                             std::span<const int> atoms);

/// Sets tetrahedral parity from 3D coordinates for every atom with four
/// distinct substituent branches, overriding parsed parity. Other atoms keep
/// their labels. Throws kMissingCoordinates when a candidate center or one of
/// its neighbors has no coordinates.
MoleculeGraph assign_chirality_from_coords(MoleculeGraph mol);

/// Copy of the molecule with every parity label cleared.
MoleculeGraph strip_chirality(MoleculeGraph mol);

}  // namespace fragtok

#endif  // FRAGTOK_SMILES_H_

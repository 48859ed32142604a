//
// fragtok - Copyright 2026 The fragtok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "fragtok/molecule.h"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "fragtok/error.h"

namespace fragtok {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
  case ErrorCode::kSyntaxError:
    return "SyntaxError";
  case ErrorCode::kUnbalancedRing:
    return "UnbalancedRing";
  case ErrorCode::kUnbalancedBranch:
    return "UnbalancedBranch";
  case ErrorCode::kUnknownElement:
    return "UnknownElement";
  case ErrorCode::kInvalidChirality:
    return "InvalidChirality";
  case ErrorCode::kValenceError:
    return "ValenceError";
  case ErrorCode::kUnsupportedFeature:
    return "UnsupportedFeature";
  case ErrorCode::kDisconnectedSubgraph:
    return "DisconnectedSubgraph";
  case ErrorCode::kMissingCoordinates:
    return "MissingCoordinates";
  case ErrorCode::kIndexOutOfRange:
    return "IndexOutOfRange";
  case ErrorCode::kEmptyCorpus:
    return "EmptyCorpus";
  case ErrorCode::kNotAdjacent:
    return "NotAdjacent";
  case ErrorCode::kVocabularyMismatch:
    return "VocabularyMismatch";
  case ErrorCode::kEmptyInput:
    return "EmptyInput";
  case ErrorCode::kMalformedRecord:
    return "MalformedRecord";
  case ErrorCode::kEmptyPocket:
    return "EmptyPocket";
  case ErrorCode::kEmptyEntity:
    return "EmptyEntity";
  case ErrorCode::kUnknownSymbol:
    return "UnknownSymbol";
  case ErrorCode::kShapeMismatch:
    return "ShapeMismatch";
  case ErrorCode::kFileNotFound:
    return "FileNotFound";
  case ErrorCode::kEncodingError:
    return "EncodingError";
  case ErrorCode::kVersionMismatch:
    return "VersionMismatch";
  case ErrorCode::kCorruptRecord:
    return "CorruptRecord";
  }
  return "Unknown";
}

int bond_valence(BondOrder order) {
  switch (order) {
  case BondOrder::kDouble:
    return 2;
  case BondOrder::kTriple:
    return 3;
  case BondOrder::kSingle:
  case BondOrder::kAromatic:
    break;
  }
  return 1;
}

int MoleculeGraph::add_atom(Atom atom) {
  atom.index = num_atoms();
  atoms_.push_back(std::move(atom));
  adjacency_.emplace_back();
  return atoms_.back().index;
}

int MoleculeGraph::add_bond(int a, int b, BondOrder order) {
  if (a < 0 || b < 0 || a >= num_atoms() || b >= num_atoms())
    throw Error(ErrorCode::kIndexOutOfRange, "bond references a missing atom");
  if (a == b)
    throw Error(ErrorCode::kSyntaxError, "atom bonded to itself");
  if (find_bond(a, b) >= 0)
    throw Error(ErrorCode::kSyntaxError,
                "duplicate bond between atoms " + std::to_string(a) + " and "
                    + std::to_string(b));

  const int idx = num_bonds();
  bonds_.push_back({ a, b, order });
  adjacency_[a].push_back({ b, idx });
  adjacency_[b].push_back({ a, idx });
  return idx;
}

int MoleculeGraph::find_bond(int a, int b) const {
  const auto &adj = adjacency_[a].size() <= adjacency_[b].size()
                        ? adjacency_[a]
                        : adjacency_[b];
  const int other = adjacency_[a].size() <= adjacency_[b].size() ? b : a;
  for (const Neighbor &nb: adj) {
    if (nb.atom == other)
      return nb.bond;
  }
  return -1;
}

int MoleculeGraph::bond_valence_sum(int i) const {
  int sum = 0;
  for (const Neighbor &nb: adjacency_[i])
    sum += bond_valence(bonds_[nb.bond].order);
  return sum;
}

namespace {

constexpr std::array<std::string_view, 119> kSymbols = {
  "",   "H",  "He", "Li", "Be", "B",  "C",  "N",  "O",  "F",  "Ne", "Na",
  "Mg", "Al", "Si", "P",  "S",  "Cl", "Ar", "K",  "Ca", "Sc", "Ti", "V",
  "Cr", "Mn", "Fe", "Co", "Ni", "Cu", "Zn", "Ga", "Ge", "As", "Se", "Br",
  "Kr", "Rb", "Sr", "Y",  "Zr", "Nb", "Mo", "Tc", "Ru", "Rh", "Pd", "Ag",
  "Cd", "In", "Sn", "Sb", "Te", "I",  "Xe", "Cs", "Ba", "La", "Ce", "Pr",
  "Nd", "Pm", "Sm", "Eu", "Gd", "Tb", "Dy", "Ho", "Er", "Tm", "Yb", "Lu",
  "Hf", "Ta", "W",  "Re", "Os", "Ir", "Pt", "Au", "Hg", "Tl", "Pb", "Bi",
  "Po", "At", "Rn", "Fr", "Ra", "Ac", "Th", "Pa", "U",  "Np", "Pu", "Am",
  "Cm", "Bk", "Cf", "Es", "Fm", "Md", "No", "Lr", "Rf", "Db", "Sg", "Bh",
  "Hs", "Mt", "Ds", "Rg", "Cn", "Nh", "Fl", "Mc", "Lv", "Ts", "Og",
};

struct ValenceEntry {
  int element;
  std::array<int, 3> valences;  // ascending, 0-terminated
  int charge_sign;  // how a formal charge shifts the valence
};

// Charge adjustment: group 15/16 elements and halogens gain valence with
// positive charge, boron gains with negative charge, carbon loses either way.
constexpr std::array<ValenceEntry, 10> kValences = { {
  { 5, { 3, 0, 0 }, -1 },
  { 6, { 4, 0, 0 }, 0 },
  { 7, { 3, 0, 0 }, 1 },
  { 8, { 2, 0, 0 }, 1 },
  { 9, { 1, 0, 0 }, 1 },
  { 15, { 3, 5, 0 }, 1 },
  { 16, { 2, 4, 6 }, 1 },
  { 17, { 1, 0, 0 }, 1 },
  { 35, { 1, 0, 0 }, 1 },
  { 53, { 1, 0, 0 }, 1 },
} };

}  // namespace

std::string_view element_symbol(int atomic_number) {
  if (atomic_number < 1 || atomic_number >= static_cast<int>(kSymbols.size()))
    return {};
  return kSymbols[atomic_number];
}

int element_from_symbol(std::string_view symbol) {
  if (symbol.empty())
    return 0;
  for (std::size_t z = 1; z < kSymbols.size(); ++z) {
    if (kSymbols[z] == symbol)
      return static_cast<int>(z);
  }
  return 0;
}

bool in_organic_subset(int atomic_number) {
  switch (atomic_number) {
  case 5:
  case 6:
  case 7:
  case 8:
  case 9:
  case 15:
  case 16:
  case 17:
  case 35:
  case 53:
    return true;
  default:
    return false;
  }
}

bool can_be_aromatic(int atomic_number) {
  switch (atomic_number) {
  case 5:
  case 6:
  case 7:
  case 8:
  case 15:
  case 16:
  case 33:
  case 34:
    return true;
  default:
    return false;
  }
}

std::optional<int> default_hydrogens(int atomic_number, int formal_charge,
                                     bool aromatic, int bond_valence_sum) {
  const auto it = std::find_if(
      kValences.begin(), kValences.end(),
      [&](const ValenceEntry &e) { return e.element == atomic_number; });
  if (it == kValences.end())
    return std::nullopt;

  for (int base: it->valences) {
    if (base == 0)
      break;
    int valence = base;
    if (it->charge_sign == 0)
      valence -= std::abs(formal_charge);
    else
      valence += it->charge_sign * formal_charge;
    if (valence < bond_valence_sum)
      continue;
    int h = valence - bond_valence_sum;
    // An aromatic atom donates one electron to the pi system.
    if (aromatic)
      h = std::max(0, h - 1);
    return h;
  }
  return std::nullopt;
}

std::vector<int> stored_neighbor_order(const MoleculeGraph &mol, int atom) {
  std::vector<int> order;
  order.reserve(4);
  for (const Neighbor &nb: mol.neighbors(atom))
    order.push_back(nb.atom);
  std::sort(order.begin(), order.end());
  if (mol.atom(atom).implicit_h == 1) {
    auto pos = std::lower_bound(order.begin(), order.end(), atom);
    order.insert(pos, kImplicitNeighbor);
  }
  return order;
}

int permutation_parity(std::span<const int> from, std::span<const int> to) {
  std::vector<int> perm(from.size());
  for (std::size_t i = 0; i < from.size(); ++i) {
    const auto it = std::find(to.begin(), to.end(), from[i]);
    perm[i] = static_cast<int>(it - to.begin());
  }
  int parity = 1;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    while (perm[i] != static_cast<int>(i)) {
      std::swap(perm[i], perm[perm[i]]);
      parity = -parity;
    }
  }
  return parity;
}

Chirality reorder_chirality(Chirality chirality, std::span<const int> from,
                            std::span<const int> to) {
  if (chirality == Chirality::kNone || permutation_parity(from, to) > 0)
    return chirality;
  return chirality == Chirality::kCW ? Chirality::kCCW : Chirality::kCW;
}

bool can_carry_chirality(const MoleculeGraph &mol, int atom) {
  const int h = mol.atom(atom).implicit_h;
  const int total = mol.degree(atom) + h;
  return h <= 1 && (total == 3 || total == 4);
}

}  // namespace fragtok

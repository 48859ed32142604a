//
// fragtok - Copyright 2026 The fragtok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef FRAGTOK_MOLECULE_H_
#define FRAGTOK_MOLECULE_H_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace fragtok {

using Vec3 = std::array<double, 3>;

/// Tetrahedral parity. kCCW corresponds to SMILES '@' and kCW to '@@', both
/// taken relative to the stored neighbor order (see stored_neighbor_order()).
enum class Chirality : std::uint8_t {
  kNone,
  kCW,
  kCCW,
};

enum class BondOrder : std::uint8_t {
  kSingle = 1,
  kDouble = 2,
  kTriple = 3,
  kAromatic = 4,
};

/// Valence contribution of a bond; aromatic bonds count as one.
int bond_valence(BondOrder order);

struct Atom {
  int element = 6;  // atomic number
  int formal_charge = 0;
  bool aromatic = false;
  Chirality chirality = Chirality::kNone;
  int implicit_h = 0;
  // True when implicit_h cannot be recovered from the default valence model
  // and must be written out explicitly (e.g. the H of pyrrole's [nH]).
  bool explicit_h = false;
  std::optional<Vec3> coords;
  int index = 0;
};

struct Bond {
  int a = 0;
  int b = 0;
  BondOrder order = BondOrder::kSingle;

  int other(int atom) const { return atom == a ? b : a; }
};

struct Neighbor {
  int atom;
  int bond;
};

/// Property graph of atoms and bonds. Components may be disconnected
/// (salts, counter ions).
class MoleculeGraph {
public:
  int add_atom(Atom atom);
  /// Throws Error(kSyntaxError) on self loops or duplicate bonds and
  /// Error(kIndexOutOfRange) on invalid atom indices.
  int add_bond(int a, int b, BondOrder order);

  int num_atoms() const { return static_cast<int>(atoms_.size()); }
  int num_bonds() const { return static_cast<int>(bonds_.size()); }

  const Atom &atom(int i) const { return atoms_[i]; }
  Atom &atom(int i) { return atoms_[i]; }
  const Bond &bond(int i) const { return bonds_[i]; }
  void set_bond_order(int i, BondOrder order) { bonds_[i].order = order; }

  const std::vector<Atom> &atoms() const { return atoms_; }
  const std::vector<Bond> &bonds() const { return bonds_; }

  std::span<const Neighbor> neighbors(int i) const { return adjacency_[i]; }
  int degree(int i) const { return static_cast<int>(adjacency_[i].size()); }

  /// Index of the bond joining a and b, or -1.
  int find_bond(int a, int b) const;

  /// Sum of bond valences at an atom (aromatic bonds count as one).
  int bond_valence_sum(int i) const;

private:
  std::vector<Atom> atoms_;
  std::vector<Bond> bonds_;
  std::vector<std::vector<Neighbor>> adjacency_;
};

// Element table ------------------------------------------------------------

/// Symbol for an atomic number in [1, 118]; empty for anything else.
std::string_view element_symbol(int atomic_number);
/// Atomic number for a case-sensitive element symbol, or 0.
int element_from_symbol(std::string_view symbol);
/// B, C, N, O, P, S, F, Cl, Br, I.
bool in_organic_subset(int atomic_number);
/// B, C, N, O, P, S, Se, As.
bool can_be_aromatic(int atomic_number);

/// Hydrogen count implied by the default valence table for an atom with the
/// given bonding. Returns nullopt when the element has no valence table entry
/// or the bonds exceed every allowed valence.
std::optional<int> default_hydrogens(int atomic_number, int formal_charge,
                                     bool aromatic, int bond_valence_sum);

// Stereo neighbor ordering ---------------------------------------------------

/// Placeholder for the implicit hydrogen in a stereo neighbor list.
inline constexpr int kImplicitNeighbor = -1;

/// Neighbor order that Atom::chirality refers to: heavy neighbors by
/// ascending atom index, with the implicit hydrogen (if exactly one) placed
/// where the atom's own index would sort.
std::vector<int> stored_neighbor_order(const MoleculeGraph &mol, int atom);

/// +1 if `to` is an even permutation of `from`, -1 if odd. Both must hold the
/// same distinct elements.
int permutation_parity(std::span<const int> from, std::span<const int> to);

/// Chirality re-expressed after the neighbor order changes from `from` to
/// `to`.
Chirality reorder_chirality(Chirality chirality, std::span<const int> from,
                            std::span<const int> to);

/// Whether a parity label is meaningful on this atom: 3 or 4 neighbors
/// counting at most one implicit hydrogen.
bool can_carry_chirality(const MoleculeGraph &mol, int atom);

}  // namespace fragtok

#endif  // FRAGTOK_MOLECULE_H_

//
// fragtok - Copyright 2026 The fragtok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fragtok/error.h"
#include "fragtok/molgraph.h"
#include "fragtok/smiles.h"

namespace fragtok {
namespace {

constexpr int kRingSlotPending = -2;

struct OpenRing {
  int atom;
  std::optional<BondOrder> order;
  std::size_t slot;  // position in the atom's SMILES neighbor list
};

class SmilesParser {
public:
  explicit SmilesParser(std::string_view smiles): s_(smiles) { }

  MoleculeGraph parse();

private:
  [[noreturn]] void fail(ErrorCode code, const std::string &what) const {
    throw Error(code, what + " at position " + std::to_string(pos_) + " in '"
                          + std::string(s_) + "'");
  }

  bool at_end() const { return pos_ >= s_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < s_.size() ? s_[pos_ + ahead] : '\0';
  }

  void parse_bracket_atom();
  void parse_organic_atom();
  void parse_ring_closure();
  void add_atom(Atom atom, bool bracket, Chirality parsed_chirality);
  BondOrder resolve_order(std::optional<BondOrder> order, int a, int b) const;
  void connect(int a, int b, std::optional<BondOrder> order);
  void finish_atoms();

  std::string_view s_;
  std::size_t pos_ = 0;

  MoleculeGraph mol_;
  std::vector<std::vector<int>> smiles_order_;
  std::vector<bool> bracket_;
  std::vector<Chirality> parsed_chirality_;
  std::vector<int> unspecified_bonds_;
  std::map<int, OpenRing> open_rings_;

  int prev_ = -1;
  std::optional<BondOrder> pending_;
  bool pending_set_ = false;
};

MoleculeGraph SmilesParser::parse() {
  if (s_.empty())
    fail(ErrorCode::kSyntaxError, "empty SMILES");
  for (const char c: s_) {
    if (static_cast<unsigned char>(c) > 127)
      fail(ErrorCode::kSyntaxError, "non-ASCII character");
  }

  std::vector<int> branches;
  while (!at_end()) {
    const char c = peek();
    switch (c) {
    case '(':
      if (prev_ < 0)
        fail(ErrorCode::kUnbalancedBranch, "branch without a preceding atom");
      if (pending_set_)
        fail(ErrorCode::kSyntaxError, "bond symbol before branch");
      branches.push_back(prev_);
      ++pos_;
      break;
    case ')':
      if (branches.empty())
        fail(ErrorCode::kUnbalancedBranch, "unmatched ')'");
      if (pending_set_)
        fail(ErrorCode::kSyntaxError, "dangling bond symbol");
      prev_ = branches.back();
      branches.pop_back();
      ++pos_;
      break;
    case '.':
      if (pending_set_)
        fail(ErrorCode::kSyntaxError, "dangling bond symbol");
      if (!branches.empty())
        fail(ErrorCode::kUnbalancedBranch, "'.' inside a branch");
      if (prev_ < 0 || pos_ + 1 == s_.size())
        fail(ErrorCode::kSyntaxError, "empty component");
      prev_ = -1;
      ++pos_;
      break;
    case '-':
    case '=':
    case '#':
    case ':':
    case '/':
    case '\\':
      if (prev_ < 0)
        fail(ErrorCode::kSyntaxError, "bond symbol without a preceding atom");
      if (pending_set_)
        fail(ErrorCode::kSyntaxError, "consecutive bond symbols");
      pending_set_ = true;
      pending_ = c == '=' ? BondOrder::kDouble
                 : c == '#' ? BondOrder::kTriple
                 : c == ':' ? BondOrder::kAromatic
                            : BondOrder::kSingle;
      ++pos_;
      break;
    case '$':
      fail(ErrorCode::kUnsupportedFeature, "quadruple bonds");
    case '[':
      parse_bracket_atom();
      break;
    case '%':
      parse_ring_closure();
      break;
    default:
      if (std::isdigit(static_cast<unsigned char>(c))) {
        parse_ring_closure();
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '*') {
        parse_organic_atom();
      } else {
        fail(ErrorCode::kSyntaxError, std::string("unexpected character '") + c
                                          + "'");
      }
    }
  }

  if (!branches.empty())
    fail(ErrorCode::kUnbalancedBranch, "unclosed '('");
  if (!open_rings_.empty())
    fail(ErrorCode::kUnbalancedRing,
         "ring bond " + std::to_string(open_rings_.begin()->first)
             + " never closed");
  if (pending_set_)
    fail(ErrorCode::kSyntaxError, "dangling bond symbol");
  if (mol_.num_atoms() == 0)
    fail(ErrorCode::kSyntaxError, "no atoms");

  finish_atoms();
  return std::move(mol_);
}

void SmilesParser::parse_organic_atom() {
  Atom atom;
  const char c = peek();
  std::size_t len = 1;
  if (c == 'C' && peek(1) == 'l') {
    atom.element = 17;
    len = 2;
  } else if (c == 'B' && peek(1) == 'r') {
    atom.element = 35;
    len = 2;
  } else {
    switch (c) {
    case 'B':
      atom.element = 5;
      break;
    case 'C':
      atom.element = 6;
      break;
    case 'N':
      atom.element = 7;
      break;
    case 'O':
      atom.element = 8;
      break;
    case 'F':
      atom.element = 9;
      break;
    case 'P':
      atom.element = 15;
      break;
    case 'S':
      atom.element = 16;
      break;
    case 'I':
      atom.element = 53;
      break;
    case 'b':
      atom.element = 5;
      atom.aromatic = true;
      break;
    case 'c':
      atom.element = 6;
      atom.aromatic = true;
      break;
    case 'n':
      atom.element = 7;
      atom.aromatic = true;
      break;
    case 'o':
      atom.element = 8;
      atom.aromatic = true;
      break;
    case 'p':
      atom.element = 15;
      atom.aromatic = true;
      break;
    case 's':
      atom.element = 16;
      atom.aromatic = true;
      break;
    default:
      fail(ErrorCode::kUnknownElement,
           std::string("'") + c + "' is not an organic-subset atom");
    }
  }
  pos_ += len;
  add_atom(std::move(atom), false, Chirality::kNone);
}

void SmilesParser::parse_bracket_atom() {
  ++pos_;  // '['
  if (std::isdigit(static_cast<unsigned char>(peek())))
    fail(ErrorCode::kUnsupportedFeature, "isotope labels");

  Atom atom;
  const char c = peek();
  if (std::islower(static_cast<unsigned char>(c))) {
    const std::string two { c, peek(1) };
    if (two == "se" || two == "as") {
      atom.element = two == "se" ? 34 : 33;
      pos_ += 2;
    } else {
      const std::string one(1, static_cast<char>(std::toupper(c)));
      atom.element = element_from_symbol(one);
      if (atom.element == 0 || !can_be_aromatic(atom.element))
        fail(ErrorCode::kUnknownElement,
             std::string("'") + c + "' is not an aromatic element");
      ++pos_;
    }
    atom.aromatic = true;
  } else if (std::isupper(static_cast<unsigned char>(c))) {
    int z = 0;
    if (std::islower(static_cast<unsigned char>(peek(1)))) {
      z = element_from_symbol(s_.substr(pos_, 2));
      if (z != 0)
        pos_ += 2;
    }
    if (z == 0) {
      z = element_from_symbol(s_.substr(pos_, 1));
      if (z == 0)
        fail(ErrorCode::kUnknownElement, "unknown element symbol");
      ++pos_;
    }
    atom.element = z;
  } else {
    fail(ErrorCode::kUnknownElement, "missing element symbol");
  }

  Chirality chirality = Chirality::kNone;
  if (peek() == '@') {
    ++pos_;
    chirality = Chirality::kCCW;
    if (peek() == '@') {
      ++pos_;
      chirality = Chirality::kCW;
    }
    if (std::isupper(static_cast<unsigned char>(peek())) && peek() != 'H')
      fail(ErrorCode::kUnsupportedFeature, "extended chirality classes");
  }

  if (peek() == 'H') {
    ++pos_;
    int h = 1;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      h = peek() - '0';
      ++pos_;
    }
    atom.implicit_h = h;
  }

  if (peek() == '+' || peek() == '-') {
    const char sign = peek();
    ++pos_;
    int magnitude = 1;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      magnitude = peek() - '0';
      ++pos_;
    } else {
      while (peek() == sign) {
        ++magnitude;
        ++pos_;
      }
    }
    atom.formal_charge = sign == '+' ? magnitude : -magnitude;
  }

  if (peek() == ':') {
    ++pos_;
    if (!std::isdigit(static_cast<unsigned char>(peek())))
      fail(ErrorCode::kSyntaxError, "empty atom class");
    while (std::isdigit(static_cast<unsigned char>(peek())))
      ++pos_;
  }

  if (peek() != ']')
    fail(ErrorCode::kSyntaxError, "unterminated bracket atom");
  ++pos_;

  add_atom(std::move(atom), true, chirality);
}

void SmilesParser::add_atom(Atom atom, bool bracket, Chirality parsed) {
  const bool single_h = bracket && atom.implicit_h == 1;
  const int idx = mol_.add_atom(std::move(atom));
  smiles_order_.emplace_back();
  bracket_.push_back(bracket);
  parsed_chirality_.push_back(parsed);

  if (prev_ >= 0) {
    connect(prev_, idx, pending_);
  }
  // The bracket hydrogen follows the preceding atom in stereo order.
  if (single_h)
    smiles_order_[idx].push_back(kImplicitNeighbor);

  pending_.reset();
  pending_set_ = false;
  prev_ = idx;
}

BondOrder SmilesParser::resolve_order(std::optional<BondOrder> order, int a,
                                      int b) const {
  const bool both_aromatic = mol_.atom(a).aromatic && mol_.atom(b).aromatic;
  if (!order)
    return both_aromatic ? BondOrder::kAromatic : BondOrder::kSingle;
  if (*order == BondOrder::kAromatic && !both_aromatic)
    fail(ErrorCode::kSyntaxError, "aromatic bond between non-aromatic atoms");
  return *order;
}

void SmilesParser::connect(int a, int b, std::optional<BondOrder> order) {
  const int bond = mol_.add_bond(a, b, resolve_order(order, a, b));
  if (!order)
    unspecified_bonds_.push_back(bond);
  smiles_order_[a].push_back(b);
  smiles_order_[b].push_back(a);
}

void SmilesParser::parse_ring_closure() {
  if (prev_ < 0)
    fail(ErrorCode::kSyntaxError, "ring bond without a preceding atom");

  int number;
  if (peek() == '%') {
    if (!std::isdigit(static_cast<unsigned char>(peek(1)))
        || !std::isdigit(static_cast<unsigned char>(peek(2))))
      fail(ErrorCode::kSyntaxError, "'%' must be followed by two digits");
    number = (peek(1) - '0') * 10 + (peek(2) - '0');
    pos_ += 3;
  } else {
    number = peek() - '0';
    ++pos_;
  }

  const auto it = open_rings_.find(number);
  if (it == open_rings_.end()) {
    open_rings_.emplace(number,
                        OpenRing { prev_, pending_set_ ? pending_ : std::nullopt,
                                   smiles_order_[prev_].size() });
    smiles_order_[prev_].push_back(kRingSlotPending);
  } else {
    const OpenRing ring = it->second;
    open_rings_.erase(it);
    if (ring.atom == prev_)
      fail(ErrorCode::kUnbalancedRing, "ring bond closes on its own atom");

    std::optional<BondOrder> order = ring.order;
    if (pending_set_) {
      if (order && *order != *pending_)
        fail(ErrorCode::kSyntaxError, "conflicting ring bond symbols");
      order = pending_;
    }
    if (mol_.find_bond(ring.atom, prev_) >= 0)
      fail(ErrorCode::kUnbalancedRing, "ring bond duplicates an existing bond");

    const int bond = mol_.add_bond(ring.atom, prev_,
                                   resolve_order(order, ring.atom, prev_));
    if (!order)
      unspecified_bonds_.push_back(bond);
    smiles_order_[ring.atom][ring.slot] = prev_;
    smiles_order_[prev_].push_back(ring.atom);
  }
  pending_.reset();
  pending_set_ = false;
}

void SmilesParser::finish_atoms() {
  // Unmarked bonds between aromatic atoms outside any ring are single
  // (e.g. the biphenyl linker written without '-').
  const std::vector<bool> bridges = bridge_bonds(mol_);
  for (int b: unspecified_bonds_) {
    if (mol_.bond(b).order == BondOrder::kAromatic && bridges[b])
      mol_.set_bond_order(b, BondOrder::kSingle);
  }

  for (int i = 0; i < mol_.num_atoms(); ++i) {
    Atom &atom = mol_.atom(i);
    const int valence = mol_.bond_valence_sum(i);
    if (!bracket_[i]) {
      const auto h = default_hydrogens(atom.element, 0, atom.aromatic, valence);
      if (!h)
        throw Error(ErrorCode::kValenceError,
                    std::string(element_symbol(atom.element)) + " atom "
                        + std::to_string(i) + " has bond valence "
                        + std::to_string(valence) + " in '" + std::string(s_)
                        + "'");
      atom.implicit_h = *h;
      atom.explicit_h = false;
    } else {
      const auto h = in_organic_subset(atom.element)
                         ? default_hydrogens(atom.element, atom.formal_charge,
                                             atom.aromatic, valence)
                         : std::nullopt;
      atom.explicit_h =
          !(h && atom.formal_charge == 0 && *h == atom.implicit_h);
    }

    if (parsed_chirality_[i] != Chirality::kNone) {
      if (!can_carry_chirality(mol_, i))
        throw Error(ErrorCode::kInvalidChirality,
                    "atom " + std::to_string(i)
                        + " cannot carry tetrahedral parity in '"
                        + std::string(s_) + "'");
      atom.chirality =
          reorder_chirality(parsed_chirality_[i], smiles_order_[i],
                            stored_neighbor_order(mol_, i));
    }
  }
}

}  // namespace

MoleculeGraph parse_smiles(std::string_view smiles) {
  return SmilesParser(smiles).parse();
}

}  // namespace fragtok

//
// fragtok - Copyright 2026 The fragtok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <string>
#include <tuple>
#include <vector>

#include "canon_internal.h"
#include "fragtok/error.h"
#include "fragtok/molgraph.h"
#include "fragtok/smiles.h"

namespace fragtok {
namespace internal {

LocalGraph make_local_graph(const MoleculeGraph &mol,
                            std::span<const int> sorted_atoms) {
  LocalGraph g;
  g.mol = &mol;
  g.atoms.assign(sorted_atoms.begin(), sorted_atoms.end());
  const int n = g.size();
  g.adj.resize(n);
  g.whole_neighborhood.assign(n, true);

  auto local_of = [&](int a) {
    const auto it = std::lower_bound(g.atoms.begin(), g.atoms.end(), a);
    return it != g.atoms.end() && *it == a
               ? static_cast<int>(it - g.atoms.begin())
               : -1;
  };
  for (int i = 0; i < n; ++i) {
    for (const Neighbor &nb: mol.neighbors(g.atoms[i])) {
      const int j = local_of(nb.atom);
      if (j < 0) {
        g.whole_neighborhood[i] = false;
        continue;
      }
      if (j < i)
        continue;
      const BondOrder order = mol.bond(nb.bond).order;
      g.adj[i].push_back({ j, g.num_bonds, order });
      g.adj[j].push_back({ i, g.num_bonds, order });
      ++g.num_bonds;
    }
  }
  return g;
}

std::vector<int> initial_ranks(const LocalGraph &g) {
  const int n = g.size();
  auto key = [&](int i) {
    const Atom &a = g.mol->atom(g.atoms[i]);
    return std::make_tuple(static_cast<int>(g.adj[i].size()), a.aromatic,
                           a.element, a.formal_charge, a.implicit_h,
                           a.explicit_h);
  };
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int l, int r) { return key(l) < key(r); });
  std::vector<int> rank(n);
  for (int p = 0; p < n; ++p) {
    rank[order[p]] = p > 0 && key(order[p]) == key(order[p - 1])
                         ? rank[order[p - 1]]
                         : p;
  }
  return rank;
}

namespace {

int count_classes(const std::vector<int> &rank) {
  std::vector<int> sorted = rank;
  std::sort(sorted.begin(), sorted.end());
  return static_cast<int>(std::unique(sorted.begin(), sorted.end())
                          - sorted.begin());
}

}  // namespace

void refine_ranks(const LocalGraph &g, std::vector<int> &rank) {
  const int n = g.size();
  int classes = count_classes(rank);
  std::vector<std::vector<int>> signature(n);
  std::vector<int> order(n);
  std::vector<int> next(n);
  while (classes < n) {
    for (int i = 0; i < n; ++i) {
      signature[i].clear();
      for (const LocalEdge &e: g.adj[i])
        signature[i].push_back(rank[e.to] * 8 + static_cast<int>(e.order));
      std::sort(signature[i].begin(), signature[i].end());
    }
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int l, int r) {
      return std::tie(rank[l], signature[l]) < std::tie(rank[r], signature[r]);
    });
    int next_classes = 0;
    for (int p = 0; p < n; ++p) {
      const int i = order[p];
      const int prev = p > 0 ? order[p - 1] : -1;
      if (prev >= 0 && rank[i] == rank[prev] && signature[i] == signature[prev]) {
        next[i] = next[prev];
      } else {
        next[i] = p;
        ++next_classes;
      }
    }
    rank.swap(next);
    if (next_classes == classes)
      break;
    classes = next_classes;
  }
}

std::vector<int> symmetry_classes(const MoleculeGraph &mol) {
  std::vector<int> all(mol.num_atoms());
  std::iota(all.begin(), all.end(), 0);
  const LocalGraph g = make_local_graph(mol, all);
  std::vector<int> rank = initial_ranks(g);
  refine_ranks(g, rank);
  return rank;
}

}  // namespace internal

namespace {

using internal::LocalEdge;
using internal::LocalGraph;

constexpr int kMaxStereoLeaves = 128;

std::string ring_label(int digit) {
  if (digit < 10)
    return std::string(1, static_cast<char>('0' + digit));
  return "%" + std::to_string(digit);
}

class SmilesWriter {
public:
  SmilesWriter(const LocalGraph &g, const std::vector<int> &rank,
               const std::vector<bool> &stereo)
      : g_(g), rank_(rank), stereo_(stereo) { }

  std::string write() {
    const int n = g_.size();
    visited_.assign(n, false);
    parent_.assign(n, -1);
    children_.assign(n, {});
    closings_.assign(n, {});
    openings_.assign(n, {});
    is_closure_.assign(g_.num_bonds, false);
    digit_.assign(g_.num_bonds, -1);
    in_use_.clear();

    const int start = static_cast<int>(
        std::min_element(rank_.begin(), rank_.end()) - rank_.begin());
    plan(start, -1);
    emit(start, nullptr);
    return std::move(out_);
  }

private:
  std::vector<LocalEdge> sorted_edges(int u) const {
    std::vector<LocalEdge> edges = g_.adj[u];
    std::sort(edges.begin(), edges.end(),
              [&](const LocalEdge &l, const LocalEdge &r) {
                return rank_[l.to] < rank_[r.to];
              });
    return edges;
  }

  void plan(int u, int parent) {
    visited_[u] = true;
    parent_[u] = parent;
    for (const LocalEdge &e: sorted_edges(u)) {
      if (e.to == parent)
        continue;
      if (visited_[e.to]) {
        if (!is_closure_[e.bond]) {
          is_closure_[e.bond] = true;
          closings_[u].push_back(e);
          openings_[e.to].push_back({ u, e.bond, e.order });
        }
      } else {
        children_[u].push_back(e);
        plan(e.to, u);
      }
    }
  }

  void bond_symbol(const LocalEdge &e, int from) {
    const bool both_aromatic = g_.mol->atom(g_.atoms[from]).aromatic
                               && g_.mol->atom(g_.atoms[e.to]).aromatic;
    switch (e.order) {
    case BondOrder::kDouble:
      out_ += '=';
      break;
    case BondOrder::kTriple:
      out_ += '#';
      break;
    case BondOrder::kAromatic:
      if (!both_aromatic)
        out_ += ':';
      break;
    case BondOrder::kSingle:
      if (both_aromatic)
        out_ += '-';
      break;
    }
  }

  Chirality written_chirality(int u) const {
    if (!stereo_[u])
      return Chirality::kNone;
    const int atom = g_.atoms[u];
    std::vector<int> order;
    if (parent_[u] >= 0)
      order.push_back(g_.atoms[parent_[u]]);
    if (g_.mol->atom(atom).implicit_h == 1)
      order.push_back(kImplicitNeighbor);
    for (const LocalEdge &e: closings_[u])
      order.push_back(g_.atoms[e.to]);
    for (const LocalEdge &e: openings_[u])
      order.push_back(g_.atoms[e.to]);
    for (const LocalEdge &e: children_[u])
      order.push_back(g_.atoms[e.to]);
    return reorder_chirality(g_.mol->atom(atom).chirality,
                             stored_neighbor_order(*g_.mol, atom), order);
  }

  void atom_symbol(int u) {
    const Atom &a = g_.mol->atom(g_.atoms[u]);
    std::string symbol(element_symbol(a.element));
    if (a.aromatic)
      symbol[0] = static_cast<char>(symbol[0] - 'A' + 'a');
    const Chirality chirality = written_chirality(u);
    const bool bare = in_organic_subset(a.element) && a.formal_charge == 0
                      && chirality == Chirality::kNone && !a.explicit_h
                      && !(g_.size() == 1 && a.aromatic);
    if (bare) {
      out_ += symbol;
      return;
    }
    out_ += '[';
    out_ += symbol;
    if (chirality == Chirality::kCCW)
      out_ += '@';
    else if (chirality == Chirality::kCW)
      out_ += "@@";
    if (a.implicit_h > 0) {
      out_ += 'H';
      if (a.implicit_h > 1)
        out_ += std::to_string(a.implicit_h);
    }
    if (a.formal_charge != 0) {
      out_ += a.formal_charge > 0 ? '+' : '-';
      if (std::abs(a.formal_charge) > 1)
        out_ += std::to_string(std::abs(a.formal_charge));
    }
    out_ += ']';
  }

  int allocate_digit() {
    int d = 1;
    while (std::find(in_use_.begin(), in_use_.end(), d) != in_use_.end())
      ++d;
    in_use_.push_back(d);
    return d;
  }

  void emit(int u, const LocalEdge *via) {
    if (via != nullptr)
      bond_symbol(*via, parent_[u]);
    atom_symbol(u);

    for (const LocalEdge &e: closings_[u]) {
      bond_symbol(e, u);
      out_ += ring_label(digit_[e.bond]);
    }
    for (const LocalEdge &e: openings_[u]) {
      digit_[e.bond] = allocate_digit();
      out_ += ring_label(digit_[e.bond]);
    }
    for (const LocalEdge &e: closings_[u])
      in_use_.erase(std::find(in_use_.begin(), in_use_.end(), digit_[e.bond]));

    const auto &kids = children_[u];
    for (std::size_t k = 0; k < kids.size(); ++k) {
      const bool branch = k + 1 < kids.size();
      if (branch)
        out_ += '(';
      emit(kids[k].to, &kids[k]);
      if (branch)
        out_ += ')';
    }
  }

  const LocalGraph &g_;
  const std::vector<int> &rank_;
  const std::vector<bool> &stereo_;
  std::vector<bool> visited_;
  std::vector<int> parent_;
  std::vector<std::vector<LocalEdge>> children_, closings_, openings_;
  std::vector<bool> is_closure_;
  std::vector<int> digit_;
  std::vector<int> in_use_;
  std::string out_;
};

// Atoms whose parity is written: labelled, complete neighborhood, and
// neighbors in pairwise distinct symmetry classes.
std::vector<bool> stereo_atoms(const LocalGraph &g,
                               const std::vector<int> &classes) {
  std::vector<bool> stereo(g.size(), false);
  for (int i = 0; i < g.size(); ++i) {
    const int atom = g.atoms[i];
    if (g.mol->atom(atom).chirality == Chirality::kNone
        || !g.whole_neighborhood[i] || !can_carry_chirality(*g.mol, atom))
      continue;
    std::vector<int> nbr_classes;
    for (const LocalEdge &e: g.adj[i])
      nbr_classes.push_back(classes[e.to]);
    std::sort(nbr_classes.begin(), nbr_classes.end());
    stereo[i] = std::adjacent_find(nbr_classes.begin(), nbr_classes.end())
                == nbr_classes.end();
  }
  return stereo;
}

class Canonicalizer {
public:
  Canonicalizer(const LocalGraph &g, std::vector<bool> stereo)
      : g_(g), stereo_(std::move(stereo)),
        explore_all_(std::find(stereo_.begin(), stereo_.end(), true)
                     != stereo_.end()) { }

  std::string run(std::vector<int> rank) {
    search(std::move(rank));
    return std::move(best_);
  }

private:
  void search(std::vector<int> rank) {
    internal::refine_ranks(g_, rank);

    // Smallest rank value shared by several atoms.
    std::vector<int> counts(g_.size(), 0);
    for (int r: rank)
      ++counts[r];
    int tied = -1;
    for (int r = 0; r < g_.size(); ++r) {
      if (counts[r] > 1) {
        tied = r;
        break;
      }
    }

    if (tied < 0) {
      std::string s = SmilesWriter(g_, rank, stereo_).write();
      if (leaves_ == 0 || s < best_)
        best_ = std::move(s);
      ++leaves_;
      return;
    }

    std::vector<int> members;
    for (int i = 0; i < g_.size(); ++i) {
      if (rank[i] == tied)
        members.push_back(i);
    }
    for (std::size_t k = 0; k < members.size(); ++k) {
      if (k > 0 && (!explore_all_ || leaves_ >= kMaxStereoLeaves))
        break;
      std::vector<int> split = rank;
      for (int m: members) {
        if (m != members[k])
          split[m] = tied + 1;
      }
      search(std::move(split));
    }
  }

  const LocalGraph &g_;
  std::vector<bool> stereo_;
  bool explore_all_;
  int leaves_ = 0;
  std::string best_;
};

std::string canonical_connected(const MoleculeGraph &mol,
                                std::span<const int> sorted_atoms) {
  const LocalGraph g = internal::make_local_graph(mol, sorted_atoms);
  std::vector<int> rank = internal::initial_ranks(g);
  internal::refine_ranks(g, rank);
  return Canonicalizer(g, stereo_atoms(g, rank)).run(std::move(rank));
}

}  // namespace

std::string canonical_smiles(const MoleculeGraph &mol,
                             std::span<const int> atoms) {
  std::vector<int> sorted(atoms.begin(), atoms.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (int a: sorted) {
    if (a < 0 || a >= mol.num_atoms())
      throw Error(ErrorCode::kIndexOutOfRange,
                  "atom " + std::to_string(a) + " not in molecule");
  }
  if (!is_connected_subset(mol, sorted))
    throw Error(ErrorCode::kDisconnectedSubgraph,
                sorted.empty() ? "empty atom set"
                               : "atom set does not induce a connected subgraph");
  return canonical_connected(mol, sorted);
}

std::string canonical_smiles(const MoleculeGraph &mol) {
  if (mol.num_atoms() == 0)
    return {};
  const std::vector<int> comp = connected_components(mol);
  const int num_comp = *std::max_element(comp.begin(), comp.end()) + 1;
  std::vector<std::vector<int>> members(num_comp);
  for (int i = 0; i < mol.num_atoms(); ++i)
    members[comp[i]].push_back(i);

  std::vector<std::string> parts;
  for (const auto &m: members)
    parts.push_back(canonical_connected(mol, m));
  std::sort(parts.begin(), parts.end());

  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0)
      out += '.';
    out += parts[i];
  }
  return out;
}

}  // namespace fragtok

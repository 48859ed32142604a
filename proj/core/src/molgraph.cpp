//
// fragtok - Copyright 2026 The fragtok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "fragtok/molgraph.h"

#include <algorithm>
#include <cstdint>
#include <queue>
#include <string>
#include <tuple>

#include "fragtok/error.h"

namespace fragtok {
namespace {

using EdgeSet = std::vector<std::uint64_t>;

struct CandidateCycle {
  std::vector<int> sorted_atoms;
  std::vector<int> bonds;
  EdgeSet edges;
};

// BFS shortest-path tree from `root`, preferring the smallest-index parent.
void bfs_tree(const MoleculeGraph &mol, const std::vector<bool> &usable,
              int root, std::vector<int> &parent, std::vector<int> &parent_bond,
              std::vector<int> &dist) {
  const int n = mol.num_atoms();
  parent.assign(n, -1);
  parent_bond.assign(n, -1);
  dist.assign(n, -1);
  std::vector<int> frontier { root };
  dist[root] = 0;
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int u: frontier) {
      for (const Neighbor &nb: mol.neighbors(u)) {
        if (!usable[nb.bond])
          continue;
        if (dist[nb.atom] < 0) {
          dist[nb.atom] = dist[u] + 1;
          parent[nb.atom] = u;
          parent_bond[nb.atom] = nb.bond;
          next.push_back(nb.atom);
        } else if (dist[nb.atom] == dist[u] + 1 && u < parent[nb.atom]) {
          parent[nb.atom] = u;
          parent_bond[nb.atom] = nb.bond;
        }
      }
    }
    std::sort(next.begin(), next.end());
    frontier = std::move(next);
  }
}

// Gaussian elimination over GF(2) keeping rows in echelon form keyed by their
// leading bit.
class CycleSpaceBasis {
public:
  explicit CycleSpaceBasis(std::size_t words): words_(words) { }

  bool add_if_independent(EdgeSet v) {
    for (const auto &[lead, row]: rows_) {
      if (v[lead / 64] >> (lead % 64) & 1U) {
        for (std::size_t w = 0; w < words_; ++w)
          v[w] ^= row[w];
      }
    }
    for (std::size_t w = 0; w < words_; ++w) {
      if (v[w] != 0) {
        const std::size_t lead = w * 64 + __builtin_ctzll(v[w]);
        // Keep earlier rows reduced at the new pivot.
        for (auto &[l, row]: rows_) {
          if (row[lead / 64] >> (lead % 64) & 1U) {
            for (std::size_t k = 0; k < words_; ++k)
              row[k] ^= v[k];
          }
        }
        rows_.emplace_back(lead, std::move(v));
        return true;
      }
    }
    return false;
  }

private:
  std::size_t words_;
  std::vector<std::pair<std::size_t, EdgeSet>> rows_;
};

std::vector<int> order_cycle(const MoleculeGraph &mol,
                             const std::vector<int> &bonds) {
  // Walk the cycle starting at its smallest atom toward the smaller neighbor.
  std::vector<std::vector<int>> nbrs;
  std::vector<int> atoms;
  for (int b: bonds) {
    atoms.push_back(mol.bond(b).a);
    atoms.push_back(mol.bond(b).b);
  }
  std::sort(atoms.begin(), atoms.end());
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
  nbrs.resize(atoms.size());
  auto local = [&](int a) {
    return static_cast<int>(std::lower_bound(atoms.begin(), atoms.end(), a)
                            - atoms.begin());
  };
  for (int b: bonds) {
    nbrs[local(mol.bond(b).a)].push_back(mol.bond(b).b);
    nbrs[local(mol.bond(b).b)].push_back(mol.bond(b).a);
  }

  std::vector<int> cycle { atoms.front() };
  int prev = atoms.front();
  int cur = std::min(nbrs[0][0], nbrs[0][1]);
  while (cur != atoms.front()) {
    cycle.push_back(cur);
    const auto &n = nbrs[local(cur)];
    const int next = n[0] == prev ? n[1] : n[0];
    prev = cur;
    cur = next;
  }
  return cycle;
}

}  // namespace

std::vector<bool> bridge_bonds(const MoleculeGraph &mol) {
  const int n = mol.num_atoms();
  std::vector<bool> bridge(mol.num_bonds(), false);
  std::vector<int> disc(n, -1), low(n, 0);
  int time = 0;

  struct Frame {
    int atom;
    int via_bond;
    std::size_t next;
  };
  for (int root = 0; root < n; ++root) {
    if (disc[root] >= 0)
      continue;
    std::vector<Frame> stack { { root, -1, 0 } };
    disc[root] = low[root] = time++;
    while (!stack.empty()) {
      Frame &f = stack.back();
      const auto nbrs = mol.neighbors(f.atom);
      if (f.next < nbrs.size()) {
        const Neighbor nb = nbrs[f.next++];
        if (nb.bond == f.via_bond)
          continue;
        if (disc[nb.atom] < 0) {
          disc[nb.atom] = low[nb.atom] = time++;
          stack.push_back({ nb.atom, nb.bond, 0 });
        } else {
          low[f.atom] = std::min(low[f.atom], disc[nb.atom]);
        }
      } else {
        const Frame done = f;
        stack.pop_back();
        if (!stack.empty()) {
          const int parent = stack.back().atom;
          low[parent] = std::min(low[parent], low[done.atom]);
          if (low[done.atom] > disc[parent])
            bridge[done.via_bond] = true;
        }
      }
    }
  }
  return bridge;
}

std::vector<int> connected_components(const MoleculeGraph &mol) {
  const int n = mol.num_atoms();
  std::vector<int> comp(n, -1);
  int next_id = 0;
  for (int root = 0; root < n; ++root) {
    if (comp[root] >= 0)
      continue;
    std::vector<int> stack { root };
    comp[root] = next_id;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (const Neighbor &nb: mol.neighbors(u)) {
        if (comp[nb.atom] < 0) {
          comp[nb.atom] = next_id;
          stack.push_back(nb.atom);
        }
      }
    }
    ++next_id;
  }
  return comp;
}

bool is_connected_subset(const MoleculeGraph &mol, std::span<const int> atoms) {
  if (atoms.empty())
    return false;
  std::vector<int> sorted(atoms.begin(), atoms.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  auto member = [&](int a) {
    return std::binary_search(sorted.begin(), sorted.end(), a);
  };
  std::vector<int> seen { sorted.front() };
  std::vector<int> stack { sorted.front() };
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (const Neighbor &nb: mol.neighbors(u)) {
      if (member(nb.atom)
          && std::find(seen.begin(), seen.end(), nb.atom) == seen.end()) {
        seen.push_back(nb.atom);
        stack.push_back(nb.atom);
      }
    }
  }
  return seen.size() == sorted.size();
}

std::vector<Ring> perceive_rings(const MoleculeGraph &mol) {
  const int n = mol.num_atoms();
  const int m = mol.num_bonds();
  const std::vector<bool> bridge = bridge_bonds(mol);
  std::vector<bool> cyclic(m);
  int cyclic_bonds = 0;
  for (int b = 0; b < m; ++b) {
    cyclic[b] = !bridge[b];
    cyclic_bonds += cyclic[b] ? 1 : 0;
  }
  if (cyclic_bonds == 0)
    return {};

  // Cycle rank: |E| - |V| + #components, unaffected by bridges.
  const std::vector<int> comp = connected_components(mol);
  const int num_comp = n == 0 ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
  const int rank = m - n + num_comp;

  const std::size_t words = (static_cast<std::size_t>(m) + 63) / 64;
  std::vector<CandidateCycle> candidates;
  std::vector<int> parent, parent_bond, dist;
  for (int v = 0; v < n; ++v) {
    bool on_cycle = false;
    for (const Neighbor &nb: mol.neighbors(v))
      on_cycle = on_cycle || cyclic[nb.bond];
    if (!on_cycle)
      continue;
    bfs_tree(mol, cyclic, v, parent, parent_bond, dist);

    for (int b = 0; b < m; ++b) {
      if (!cyclic[b])
        continue;
      const int x = mol.bond(b).a;
      const int y = mol.bond(b).b;
      if (dist[x] < 0 || dist[y] < 0 || parent_bond[x] == b
          || parent_bond[y] == b)
        continue;
      // Paths v..x and v..y must meet only at v.
      std::vector<int> px, py, bonds { b };
      for (int a = x; a != v; a = parent[a]) {
        px.push_back(a);
        bonds.push_back(parent_bond[a]);
      }
      for (int a = y; a != v; a = parent[a]) {
        py.push_back(a);
        bonds.push_back(parent_bond[a]);
      }
      std::vector<int> atoms = px;
      atoms.insert(atoms.end(), py.begin(), py.end());
      atoms.push_back(v);
      std::sort(atoms.begin(), atoms.end());
      if (std::adjacent_find(atoms.begin(), atoms.end()) != atoms.end())
        continue;

      CandidateCycle c;
      c.sorted_atoms = std::move(atoms);
      c.edges.assign(words, 0);
      for (int e: bonds)
        c.edges[e / 64] |= std::uint64_t { 1 } << (e % 64);
      c.bonds = std::move(bonds);
      candidates.push_back(std::move(c));
    }
  }

  std::sort(candidates.begin(), candidates.end(),
            [](const CandidateCycle &l, const CandidateCycle &r) {
              return std::forward_as_tuple(l.sorted_atoms.size(), l.sorted_atoms, l.edges)
                     < std::forward_as_tuple(r.sorted_atoms.size(), r.sorted_atoms, r.edges);
            });
  candidates.erase(std::unique(candidates.begin(), candidates.end(),
                               [](const CandidateCycle &l,
                                  const CandidateCycle &r) {
                                 return l.edges == r.edges;
                               }),
                   candidates.end());

  std::vector<Ring> rings;
  CycleSpaceBasis basis(words);
  for (const CandidateCycle &c: candidates) {
    if (static_cast<int>(rings.size()) == rank)
      break;
    if (!basis.add_if_independent(c.edges))
      continue;
    Ring ring;
    ring.atoms = order_cycle(mol, c.bonds);
    ring.aromatic = std::all_of(c.bonds.begin(), c.bonds.end(), [&](int b) {
      return mol.bond(b).order == BondOrder::kAromatic;
    });
    rings.push_back(std::move(ring));
  }

  std::stable_sort(rings.begin(), rings.end(), [](const Ring &l, const Ring &r) {
    if (l.atoms.size() != r.atoms.size())
      return l.atoms.size() < r.atoms.size();
    return l.atoms.front() < r.atoms.front();
  });
  return rings;
}

MoleculeGraph induced_subgraph(const MoleculeGraph &mol,
                               std::span<const int> atoms) {
  std::vector<int> sorted(atoms.begin(), atoms.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (int a: sorted) {
    if (a < 0 || a >= mol.num_atoms())
      throw Error(ErrorCode::kIndexOutOfRange,
                  "atom " + std::to_string(a) + " not in molecule with "
                      + std::to_string(mol.num_atoms()) + " atoms");
  }

  std::vector<int> local(mol.num_atoms(), -1);
  MoleculeGraph sub;
  for (int a: sorted) {
    local[a] = sub.add_atom(mol.atom(a));
  }
  for (const Bond &b: mol.bonds()) {
    if (local[b.a] >= 0 && local[b.b] >= 0)
      sub.add_bond(local[b.a], local[b.b], b.order);
  }
  for (int a: sorted) {
    Atom &atom = sub.atom(local[a]);
    if (atom.chirality == Chirality::kNone)
      continue;
    if (sub.degree(local[a]) != mol.degree(a)) {
      atom.chirality = Chirality::kNone;
      continue;
    }
    // Renumbering is monotone, so the stored order is preserved except for
    // where the implicit hydrogen sorts.
    std::vector<int> mapped;
    for (int x: stored_neighbor_order(mol, a))
      mapped.push_back(x == kImplicitNeighbor ? x : local[x]);
    atom.chirality = reorder_chirality(atom.chirality, mapped,
                                       stored_neighbor_order(sub, local[a]));
  }
  return sub;
}

MoleculeGraph relabel_atoms(const MoleculeGraph &mol,
                            std::span<const int> new_index) {
  const int n = mol.num_atoms();
  if (static_cast<int>(new_index.size()) != n)
    throw Error(ErrorCode::kIndexOutOfRange, "permutation size mismatch");
  std::vector<int> old_of(n, -1);
  for (int i = 0; i < n; ++i) {
    const int j = new_index[i];
    if (j < 0 || j >= n || old_of[j] >= 0)
      throw Error(ErrorCode::kIndexOutOfRange, "not a permutation");
    old_of[j] = i;
  }

  MoleculeGraph out;
  for (int j = 0; j < n; ++j)
    out.add_atom(mol.atom(old_of[j]));
  for (const Bond &b: mol.bonds())
    out.add_bond(new_index[b.a], new_index[b.b], b.order);
  for (int i = 0; i < n; ++i) {
    Atom &atom = out.atom(new_index[i]);
    if (atom.chirality == Chirality::kNone)
      continue;
    std::vector<int> mapped;
    for (int x: stored_neighbor_order(mol, i))
      mapped.push_back(x == kImplicitNeighbor ? x : new_index[x]);
    atom.chirality = reorder_chirality(atom.chirality, mapped,
                                       stored_neighbor_order(out, new_index[i]));
  }
  return out;
}

}  // namespace fragtok

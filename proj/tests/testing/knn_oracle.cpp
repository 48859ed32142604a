//
// fragtok - Copyright 2026 The fragtok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "testing/knn_oracle.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace fragtok::testing {
namespace {

struct Node {
  std::vector<int> atoms;
  int entity = 0;
  bool global = false;
};

}  // namespace

EdgeSets brute_force_edges(const Entity &pocket, const Entity &ligand,
                           int k_token, int k_atom) {
  std::vector<std::optional<Vec3>> coords;
  std::vector<Node> nodes;
  std::vector<int> global_node(2);
  const Entity *entities[] = { &pocket, &ligand };
  for (int e = 0; e < 2; ++e) {
    const int global_atom = static_cast<int>(coords.size());
    coords.emplace_back(std::nullopt);
    for (const EntityAtom &a: entities[e]->atoms)
      coords.emplace_back(a.coords);
    global_node[e] = static_cast<int>(nodes.size());
    nodes.push_back({ { global_atom }, e, true });
    for (const TokenOccurrence &occ: entities[e]->occurrences) {
      Node n { {}, e, false };
      for (int a: occ.atoms)
        n.atoms.push_back(global_atom + 1 + a);
      std::sort(n.atoms.begin(), n.atoms.end());
      nodes.push_back(std::move(n));
    }
  }

  const int na = static_cast<int>(coords.size());
  std::vector<std::vector<double>> dist(na, std::vector<double>(na, 0.0));
  for (int x = 0; x < na; ++x) {
    for (int y = 0; y < na; ++y) {
      if (coords[x] && coords[y]) {
        double s = 0;
        for (int k = 0; k < 3; ++k)
          s += ((*coords[x])[k] - (*coords[y])[k]) * ((*coords[x])[k] - (*coords[y])[k]);
        dist[x][y] = std::sqrt(s);
      }
    }
  }

  std::vector<TokenEdgeKey> token_edges;
  const int nn = static_cast<int>(nodes.size());
  for (int i = 0; i < nn; ++i) {
    if (nodes[i].global) {
      for (int j = 0; j < nn; ++j) {
        if (!nodes[j].global && nodes[j].entity == nodes[i].entity)
          token_edges.emplace_back(i, j, "global-member");
        if (nodes[j].global && j != i)
          token_edges.emplace_back(i, j, "global-global");
      }
      continue;
    }
    std::vector<std::pair<double, int>> all;
    for (int j = 0; j < nn; ++j) {
      if (j == i || nodes[j].global)
        continue;
      double best = std::numeric_limits<double>::infinity();
      for (int x: nodes[i].atoms) {
        for (int y: nodes[j].atoms)
          best = std::min(best, dist[x][y]);
      }
      all.emplace_back(best, j);
    }
    std::sort(all.begin(), all.end());
    for (int r = 0; r < k_token && r < static_cast<int>(all.size()); ++r) {
      const int j = all[r].second;
      token_edges.emplace_back(
          i, j, nodes[j].entity == nodes[i].entity ? "intra" : "inter");
    }
    token_edges.emplace_back(i, global_node[nodes[i].entity], "global-member");
  }

  EdgeSets out;
  for (const TokenEdgeKey &te: token_edges) {
    const Node &recv = nodes[std::get<0>(te)];
    const Node &send = nodes[std::get<1>(te)];
    for (int a: recv.atoms) {
      std::vector<std::pair<double, int>> all;
      for (int b: send.atoms)
        all.emplace_back(dist[a][b], b);
      std::sort(all.begin(), all.end());
      for (int r = 0; r < k_atom && r < static_cast<int>(all.size()); ++r)
        out.atom_edges.emplace_back(a, all[r].second, te);
    }
  }
  out.token_edges = std::move(token_edges);
  std::sort(out.token_edges.begin(), out.token_edges.end());
  std::sort(out.atom_edges.begin(), out.atom_edges.end());
  return out;
}

EdgeSets edge_sets_of(const HierGraph &g) {
  EdgeSets out;
  std::vector<TokenEdgeKey> keys;
  for (const TokenEdge &e: g.token_edges)
    keys.emplace_back(e.receiver, e.sender, std::string(edge_type_name(e.type)));
  for (const AtomEdge &e: g.atom_edges)
    out.atom_edges.emplace_back(e.receiver, e.sender, keys[e.parent]);
  out.token_edges = std::move(keys);
  std::sort(out.token_edges.begin(), out.token_edges.end());
  std::sort(out.atom_edges.begin(), out.atom_edges.end());
  return out;
}

}  // namespace fragtok::testing

//
// fragtok - Copyright 2026 The fragtok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "fragtok/hiergraph.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <tuple>

#include "fragtok/error.h"

namespace fragtok {
namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
    ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
    --e;
  return std::string(s.substr(b, e - b));
}

// Fixed-column slice; columns are 1-based and inclusive.
std::string_view column(std::string_view line, std::size_t first,
                        std::size_t last) {
  if (line.size() < first)
    return {};
  return line.substr(first - 1, std::min(last, line.size()) - first + 1);
}

double parse_coord(std::string_view field, int line_no) {
  const std::string s = trim(field);
  double v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()
      || !std::isfinite(v))
    throw Error(ErrorCode::kMalformedRecord,
                "line " + std::to_string(line_no) + ": bad coordinate '" + s
                    + "'");
  return v;
}

int parse_element(std::string_view element_field, const std::string &name,
                  int line_no) {
  std::string sym = trim(element_field);
  if (sym.empty()) {
    for (char c: name) {
      if (std::isalpha(static_cast<unsigned char>(c))) {
        sym = std::string(1, c);
        break;
      }
    }
  }
  if (sym.size() == 2)
    sym[1] = static_cast<char>(std::tolower(static_cast<unsigned char>(sym[1])));
  if (!sym.empty())
    sym[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(sym[0])));
  const int z = element_from_symbol(sym);
  if (z == 0)
    throw Error(ErrorCode::kMalformedRecord,
                "line " + std::to_string(line_no) + ": unknown element '" + sym
                    + "'");
  return z;
}

// Atom name with its element prefix removed, e.g. CA -> A, N -> "".
std::string position_code(const std::string &name, int element) {
  std::string upper(element_symbol(element));
  for (char &c: upper)
    c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (name.compare(0, upper.size(), upper) == 0)
    return name.substr(upper.size());
  return name;
}

double distance(const Vec3 &a, const Vec3 &b) {
  const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

void check_entity(const Entity &e, const char *what) {
  if (e.atoms.empty() || e.occurrences.empty())
    throw Error(ErrorCode::kEmptyEntity, std::string(what) + " has no atoms");
  std::vector<bool> covered(e.atoms.size(), false);
  for (const TokenOccurrence &occ: e.occurrences) {
    if (occ.atoms.empty())
      throw Error(ErrorCode::kMalformedRecord,
                  std::string(what) + " token '" + occ.token_id
                      + "' has no atoms");
    for (int a: occ.atoms) {
      if (a < 0 || a >= static_cast<int>(e.atoms.size()))
        throw Error(ErrorCode::kMalformedRecord,
                    std::string(what) + " token '" + occ.token_id
                        + "' references a missing atom");
      covered[a] = true;
    }
  }
  const auto it = std::find(covered.begin(), covered.end(), false);
  if (it != covered.end())
    throw Error(ErrorCode::kMalformedRecord,
                std::string(what) + " atom "
                    + std::to_string(it - covered.begin())
                    + " is not covered by any token");
}

}  // namespace

std::string_view edge_type_name(EdgeType type) {
  switch (type) {
  case EdgeType::kIntra:
    return "intra";
  case EdgeType::kInter:
    return "inter";
  case EdgeType::kGlobalMember:
    return "global-member";
  case EdgeType::kGlobalGlobal:
    return "global-global";
  }
  return "intra";
}

std::optional<EdgeType> edge_type_from_name(std::string_view name) {
  for (EdgeType t: { EdgeType::kIntra, EdgeType::kInter,
                     EdgeType::kGlobalMember, EdgeType::kGlobalGlobal }) {
    if (edge_type_name(t) == name)
      return t;
  }
  return std::nullopt;
}

Entity read_pocket(std::string_view pdb_text) {
  Entity pocket;
  pocket.role = EntityRole::kPocket;
  std::map<std::tuple<char, std::string, char>, std::size_t> residue_index;
  std::vector<std::set<std::string>> residue_names;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos < pdb_text.size()) {
    std::size_t end = pdb_text.find('\n', pos);
    if (end == std::string_view::npos)
      end = pdb_text.size();
    std::string_view line = pdb_text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r')
      line.remove_suffix(1);

    if (line.starts_with("ENDMDL"))
      break;
    if (!line.starts_with("ATOM  ") && !line.starts_with("HETATM"))
      continue;
    if (line.size() < 54)
      throw Error(ErrorCode::kMalformedRecord,
                  "line " + std::to_string(line_no)
                      + ": record too short for coordinates");

    const std::string name = trim(column(line, 13, 16));
    const std::string res_name = trim(column(line, 18, 20));
    const std::string_view chain = column(line, 22, 22);
    const std::string res_seq = trim(column(line, 23, 26));
    const std::string_view icode = column(line, 27, 27);
    if (name.empty() || res_name.empty() || res_seq.empty())
      throw Error(ErrorCode::kMalformedRecord,
                  "line " + std::to_string(line_no)
                      + ": missing atom or residue name");

    EntityAtom atom;
    atom.element = parse_element(column(line, 77, 78), name, line_no);
    atom.coords = { parse_coord(column(line, 31, 38), line_no),
                    parse_coord(column(line, 39, 46), line_no),
                    parse_coord(column(line, 47, 54), line_no) };
    if (atom.element == 1)
      continue;
    atom.position_code = position_code(name, atom.element);

    const auto key = std::make_tuple(chain.empty() ? ' ' : chain[0], res_seq,
                                     icode.empty() ? ' ' : icode[0]);
    auto it = residue_index.find(key);
    if (it == residue_index.end()) {
      it = residue_index.emplace(key, pocket.occurrences.size()).first;
      TokenOccurrence occ;
      occ.token_id = res_name;
      occ.kind = TokenKind::kBasic;
      pocket.occurrences.push_back(std::move(occ));
      residue_names.emplace_back();
    }
    if (!residue_names[it->second].insert(name).second)
      continue;
    pocket.occurrences[it->second].atoms.push_back(
        static_cast<int>(pocket.atoms.size()));
    pocket.atoms.push_back(std::move(atom));
  }

  if (pocket.atoms.empty())
    throw Error(ErrorCode::kEmptyPocket, "no ATOM/HETATM heavy atoms");
  return pocket;
}

Entity make_ligand_entity(const MoleculeGraph &mol, const TokenGraph &tg) {
  if (mol.num_atoms() == 0)
    throw Error(ErrorCode::kEmptyEntity, "ligand has no atoms");
  if (tg.num_atoms != mol.num_atoms())
    throw Error(ErrorCode::kMalformedRecord,
                "token graph does not belong to this ligand");
  Entity ligand;
  ligand.role = EntityRole::kLigand;
  for (int i = 0; i < mol.num_atoms(); ++i) {
    const Atom &a = mol.atom(i);
    if (!a.coords)
      throw Error(ErrorCode::kMissingCoordinates,
                  "ligand atom " + std::to_string(i) + " has no coordinates");
    ligand.atoms.push_back({ a.element, std::string(kLigandPosition), *a.coords });
  }
  ligand.occurrences = tg.nodes;
  return ligand;
}

std::vector<std::vector<int>> HierGraph::a2f() const {
  std::vector<std::vector<int>> out(atoms.size());
  for (std::size_t t = 0; t < tokens.size(); ++t) {
    for (int a: tokens[t].atoms)
      out[a].push_back(static_cast<int>(t));
  }
  return out;
}

double token_distance(const HierGraph &g, int a, int b) {
  double best = std::numeric_limits<double>::infinity();
  for (int x: g.tokens[a].atoms) {
    for (int y: g.tokens[b].atoms)
      best = std::min(best, distance(*g.atoms[x].coords, *g.atoms[y].coords));
  }
  return best;
}

HierGraph build_hier_graph(const Entity &pocket, const Entity &ligand,
                           int k_token, int k_atom) {
  check_entity(pocket, "pocket");
  check_entity(ligand, "ligand");
  if (k_token < 1 || k_atom < 1)
    throw Error(ErrorCode::kMalformedRecord, "k_token and k_atom must be >= 1");

  HierGraph g;
  g.k_token = k_token;
  g.k_atom = k_atom;
  std::vector<int> global_of_token;  // entity global token per token
  std::vector<int> globals;

  for (const Entity *e: { &pocket, &ligand }) {
    const int atom_base = static_cast<int>(g.atoms.size()) + 1;
    const int global_token = static_cast<int>(g.tokens.size());
    globals.push_back(global_token);

    g.atoms.push_back({ std::string(kGlobalAtom), std::string(kGlobalPosition),
                        std::nullopt, e->role, true });
    for (const EntityAtom &a: e->atoms)
      g.atoms.push_back({ std::string(element_symbol(a.element)),
                          a.position_code, a.coords, e->role, false });

    g.tokens.push_back({ std::string(kGlobalToken), e->role, true,
                         { atom_base - 1 } });
    global_of_token.push_back(global_token);
    for (const TokenOccurrence &occ: e->occurrences) {
      HierToken t { occ.token_id, e->role, false, {} };
      for (int a: occ.atoms)
        t.atoms.push_back(atom_base + a);
      std::sort(t.atoms.begin(), t.atoms.end());
      g.tokens.push_back(std::move(t));
      global_of_token.push_back(global_token);
    }
  }

  const int num_tokens = static_cast<int>(g.tokens.size());
  std::vector<int> regular;
  for (int t = 0; t < num_tokens; ++t) {
    if (!g.tokens[t].global)
      regular.push_back(t);
  }

  for (int i = 0; i < num_tokens; ++i) {
    const HierToken &ti = g.tokens[i];
    if (ti.global) {
      for (int j: regular) {
        if (global_of_token[j] == i)
          g.token_edges.push_back({ i, j, EdgeType::kGlobalMember });
      }
      for (int other: globals) {
        if (other != i)
          g.token_edges.push_back({ i, other, EdgeType::kGlobalGlobal });
      }
      continue;
    }

    std::vector<std::pair<double, int>> ranked;
    for (int j: regular) {
      if (j != i)
        ranked.emplace_back(token_distance(g, i, j), j);
    }
    const std::size_t k =
        std::min(ranked.size(), static_cast<std::size_t>(k_token));
    std::partial_sort(ranked.begin(), ranked.begin() + k, ranked.end());
    for (std::size_t r = 0; r < k; ++r) {
      const int j = ranked[r].second;
      g.token_edges.push_back(
          { i, j, ti.role == g.tokens[j].role ? EdgeType::kIntra
                                              : EdgeType::kInter });
    }
    g.token_edges.push_back({ i, global_of_token[i], EdgeType::kGlobalMember });
  }

  for (std::size_t e = 0; e < g.token_edges.size(); ++e) {
    const TokenEdge &edge = g.token_edges[e];
    const HierToken &fi = g.tokens[edge.receiver];
    const HierToken &fj = g.tokens[edge.sender];
    const std::size_t k =
        std::min(fj.atoms.size(), static_cast<std::size_t>(k_atom));
    for (int as: fi.atoms) {
      std::vector<std::pair<double, int>> ranked;
      for (int at: fj.atoms) {
        const bool geometric = g.atoms[as].coords && g.atoms[at].coords;
        ranked.emplace_back(
            geometric ? distance(*g.atoms[as].coords, *g.atoms[at].coords) : 0.0,
            at);
      }
      std::partial_sort(ranked.begin(), ranked.begin() + k, ranked.end());
      for (std::size_t r = 0; r < k; ++r)
        g.atom_edges.push_back({ as, ranked[r].second, static_cast<int>(e) });
    }
  }
  return g;
}

}  // namespace fragtok

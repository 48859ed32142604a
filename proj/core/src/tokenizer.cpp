//
// fragtok - Copyright 2026 The fragtok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "fragtok/tokenizer.h"

#include <algorithm>
#include <string>
#include <tuple>
#include <unordered_set>

#include "atom_set.h"
#include "fragment_context.h"
#include "fragtok/error.h"
#include "fragtok/smiles.h"
#include "parallel.h"

namespace fragtok {

using internal::AtomSet;
using internal::AtomSetHash;
using internal::BasicKind;
using internal::FragmentContext;

std::string_view token_kind_name(TokenKind kind) {
  switch (kind) {
  case TokenKind::kBasic:
    return "basic";
  case TokenKind::kComposite:
    return "composite";
  case TokenKind::kSentinel:
    return "sentinel";
  }
  return "basic";
}

std::optional<TokenKind> token_kind_from_name(std::string_view name) {
  if (name == "basic")
    return TokenKind::kBasic;
  if (name == "composite")
    return TokenKind::kComposite;
  if (name == "sentinel")
    return TokenKind::kSentinel;
  return std::nullopt;
}

std::string atom_sentinel(int atomic_number) {
  return "<atom:" + std::string(element_symbol(atomic_number)) + ">";
}

bool is_sentinel_id(std::string_view id) {
  return id.size() >= 2 && id.front() == '<' && id.back() == '>';
}

// Vocabulary ------------------------------------------------------------------

Vocabulary::Vocabulary(std::vector<Token> tokens, std::int64_t min_freq,
                       bool chiral)
    : tokens_(std::move(tokens)), min_freq_(min_freq), chiral_(chiral) {
  std::sort(tokens_.begin(), tokens_.end(), [](const Token &l, const Token &r) {
    return std::make_tuple(static_cast<int>(l.kind), -l.frequency,
                           std::cref(l.id))
           < std::make_tuple(static_cast<int>(r.kind), -r.frequency,
                             std::cref(r.id));
  });
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (!index_.emplace(tokens_[i].id, i).second)
      throw Error(ErrorCode::kCorruptRecord,
                  "duplicate vocabulary id '" + tokens_[i].id + "'");
  }
  for (const Token &t: tokens_) {
    if (t.kind != TokenKind::kSentinel && t.frequency > min_freq_)
      columns_.push_back(t.id);
  }
  for (const Token &t: tokens_) {
    if (t.kind == TokenKind::kSentinel)
      columns_.push_back(t.id);
  }
  for (std::size_t c = 0; c < columns_.size(); ++c)
    column_index_.emplace(columns_[c], static_cast<int>(c));
}

const Token *Vocabulary::find(std::string_view id) const {
  const auto it = index_.find(std::string(id));
  return it == index_.end() ? nullptr : &tokens_[it->second];
}

bool Vocabulary::in_final(std::string_view id) const {
  const Token *t = find(id);
  return t != nullptr && t->kind != TokenKind::kSentinel
         && t->frequency > min_freq_;
}

int Vocabulary::column_of(std::string_view id) const {
  const auto it = column_index_.find(std::string(id));
  if (it != column_index_.end())
    return it->second;
  if (id.starts_with("<atom:")) {
    const auto any = column_index_.find(std::string(kAnyAtomSentinel));
    if (any != column_index_.end())
      return any->second;
  }
  return -1;
}

// Token graphs ----------------------------------------------------------------

void finalize_token_graph(const MoleculeGraph &mol, TokenGraph &tg) {
  std::sort(tg.nodes.begin(), tg.nodes.end(),
            [](const TokenOccurrence &l, const TokenOccurrence &r) {
              return std::tie(l.atoms, l.token_id) < std::tie(r.atoms, r.token_id);
            });
  const int n = mol.num_atoms();
  tg.num_atoms = n;
  tg.a2f.assign(n, {});
  tg.edges.clear();

  std::vector<AtomSet> sets, nbhds;
  for (std::size_t i = 0; i < tg.nodes.size(); ++i) {
    AtomSet s = AtomSet::of(n, tg.nodes[i].atoms);
    AtomSet nb = s;
    for (int a: tg.nodes[i].atoms) {
      tg.a2f[a].push_back(static_cast<int>(i));
      for (const Neighbor &x: mol.neighbors(a))
        nb.insert(x.atom);
    }
    sets.push_back(std::move(s));
    nbhds.push_back(std::move(nb));
  }
  for (std::size_t i = 0; i < tg.nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < tg.nodes.size(); ++j) {
      if (nbhds[i].intersects(sets[j]))
        tg.edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  }
}

TokenGraph extract_basic_tokens(const MoleculeGraph &mol) {
  const FragmentContext ctx(mol);
  TokenGraph tg;
  for (const auto &basic: ctx.basics()) {
    TokenOccurrence occ;
    occ.atoms = basic.atoms.to_vector();
    occ.token_id = canonical_smiles(mol, occ.atoms);
    occ.kind = TokenKind::kBasic;
    tg.nodes.push_back(std::move(occ));
  }
  finalize_token_graph(mol, tg);
  return tg;
}

TokenOccurrence merge(const TokenOccurrence &a, const TokenOccurrence &b,
                      const MoleculeGraph &mol) {
  const int n = mol.num_atoms();
  for (const auto *occ: { &a, &b }) {
    for (int x: occ->atoms) {
      if (x < 0 || x >= n)
        throw Error(ErrorCode::kIndexOutOfRange,
                    "occurrence atom " + std::to_string(x) + " not in molecule");
    }
  }
  const AtomSet sa = AtomSet::of(n, a.atoms);
  const AtomSet sb = AtomSet::of(n, b.atoms);
  if (sa.subset_of(sb) || sb.subset_of(sa))
    throw Error(ErrorCode::kNotAdjacent,
                "'" + a.token_id + "' and '" + b.token_id
                    + "' overlap completely");

  AtomSet nbhd = sa;
  for (int x: a.atoms) {
    for (const Neighbor &nb: mol.neighbors(x))
      nbhd.insert(nb.atom);
  }
  if (!nbhd.intersects(sb))
    throw Error(ErrorCode::kNotAdjacent, "'" + a.token_id + "' and '"
                                             + b.token_id
                                             + "' share no atom or bond");

  TokenOccurrence out;
  out.atoms = (sa | sb).to_vector();
  out.token_id = canonical_smiles(mol, out.atoms);
  out.kind = TokenKind::kComposite;
  out.merged_from = { a.token_id, b.token_id };
  std::sort(out.merged_from.begin(), out.merged_from.end());
  return out;
}

// Tokenization ----------------------------------------------------------------

struct Tokenizer::Impl {
  Vocabulary vocab;
  std::unordered_set<std::uint64_t> signatures;

  explicit Impl(const Vocabulary &v): vocab(v) {
    for (const Token &t: vocab.tokens()) {
      if (!vocab.in_final(t.id))
        continue;
      try {
        signatures.insert(internal::molecule_signature(parse_smiles(t.id)));
      } catch (const Error &) {
        // Not a parseable fragment id; it can never match a subgraph.
      }
    }
  }

  TokenGraph run(const MoleculeGraph &input, TokenizeTrace *trace) const;
};

namespace {

struct WorkOccurrence {
  AtomSet atoms;
  AtomSet nbhd;
  std::string id;
  TokenKind kind;
  BasicKind basic_kind = BasicKind::kRing;
  int element = 0;
  bool participated = false;
  std::vector<std::string> merged_from;
};

struct Viable {
  AtomSet atoms;
  const Token *token;
  int i;
  int j;
};

std::string sentinel_for(const WorkOccurrence &occ) {
  switch (occ.basic_kind) {
  case BasicKind::kRing:
    return std::string(kRingSentinel);
  case BasicKind::kBond:
    return std::string(kBondSentinel);
  case BasicKind::kAtom:
    break;
  }
  return atom_sentinel(occ.element);
}

}  // namespace

TokenGraph Tokenizer::Impl::run(const MoleculeGraph &input,
                                TokenizeTrace *trace) const {
  const MoleculeGraph stripped =
      vocab.chiral() ? MoleculeGraph() : strip_chirality(input);
  const MoleculeGraph &mol = vocab.chiral() ? input : stripped;
  const FragmentContext ctx(mol);

  std::vector<WorkOccurrence> occs;
  std::unordered_set<AtomSet, AtomSetHash> created;
  for (const auto &basic: ctx.basics()) {
    WorkOccurrence occ;
    occ.atoms = basic.atoms;
    occ.nbhd = ctx.closed_neighborhood(basic.atoms);
    occ.id = canonical_smiles(mol, basic.atoms.to_vector());
    occ.kind = TokenKind::kBasic;
    occ.basic_kind = basic.kind;
    occ.element = basic.element;
    created.insert(occ.atoms);
    occs.push_back(std::move(occ));
  }

  // Unions already evaluated, with their final-vocabulary token if any.
  std::unordered_map<AtomSet, const Token *, AtomSetHash> evaluated;
  std::vector<Viable> viable;
  auto consider_pairs = [&](int from) {
    for (int j = from; j < static_cast<int>(occs.size()); ++j) {
      for (int i = 0; i < j; ++i) {
        if (!FragmentContext::adjacent(occs[i].nbhd, occs[j].atoms))
          continue;
        AtomSet u = occs[i].atoms | occs[j].atoms;
        if (u == occs[i].atoms || u == occs[j].atoms)
          continue;
        auto it = evaluated.find(u);
        if (it == evaluated.end()) {
          const Token *token = nullptr;
          if (ctx.preserves_rings(u) && signatures.count(ctx.signature(u))) {
            const std::string id = canonical_smiles(mol, u.to_vector());
            if (vocab.in_final(id))
              token = vocab.find(id);
          }
          it = evaluated.emplace(u, token).first;
        }
        if (it->second != nullptr)
          viable.push_back({ std::move(u), it->second, i, j });
      }
    }
  };
  consider_pairs(0);

  // A union inside an existing occurrence adds nothing to the cover.
  auto covered = [&occs](const AtomSet &u) {
    return std::any_of(occs.begin(), occs.end(), [&u](const WorkOccurrence &o) {
      return u.subset_of(o.atoms);
    });
  };

  while (true) {
    const Token *best = nullptr;
    std::erase_if(viable, [&](const Viable &v) {
      return created.count(v.atoms) > 0 || covered(v.atoms);
    });
    for (const Viable &v: viable) {
      if (best == nullptr || v.token->frequency > best->frequency
          || (v.token->frequency == best->frequency && v.token->id < best->id))
        best = v.token;
    }
    if (best == nullptr)
      break;
    if (trace != nullptr)
      trace->steps.push_back({ best->id, best->frequency });

    const int first_new = static_cast<int>(occs.size());
    std::unordered_map<AtomSet, std::size_t, AtomSetHash> new_index;
    for (const Viable &v: viable) {
      if (v.token != best)
        continue;
      occs[v.i].participated = true;
      occs[v.j].participated = true;
      std::vector<std::string> from = { occs[v.i].id, occs[v.j].id };
      std::sort(from.begin(), from.end());

      const auto [it, inserted] = new_index.emplace(v.atoms, occs.size());
      if (inserted) {
        WorkOccurrence occ;
        occ.atoms = v.atoms;
        occ.nbhd = ctx.closed_neighborhood(v.atoms);
        occ.id = best->id;
        occ.kind = TokenKind::kComposite;
        occ.merged_from = std::move(from);
        occs.push_back(std::move(occ));
      } else if (from < occs[it->second].merged_from) {
        occs[it->second].merged_from = std::move(from);
      }
    }
    for (int k = first_new; k < static_cast<int>(occs.size()); ++k)
      created.insert(occs[k].atoms);
    consider_pairs(first_new);
  }

  // Occurrences that took part in a merge, or lie inside another survivor,
  // are covered by a larger one.
  std::vector<bool> keep(occs.size());
  for (std::size_t k = 0; k < occs.size(); ++k)
    keep[k] = !occs[k].participated;
  for (std::size_t k = 0; k < occs.size(); ++k) {
    for (std::size_t m = 0; m < occs.size() && keep[k]; ++m) {
      if (m != k && keep[m] && occs[k].atoms.subset_of(occs[m].atoms)
          && !(occs[k].atoms == occs[m].atoms))
        keep[k] = false;
    }
  }
  TokenGraph tg;
  for (std::size_t k = 0; k < occs.size(); ++k) {
    if (!keep[k])
      continue;
    WorkOccurrence &occ = occs[k];
    TokenOccurrence out;
    out.atoms = occ.atoms.to_vector();
    out.merged_from = std::move(occ.merged_from);
    if (occ.kind == TokenKind::kBasic && !vocab.in_final(occ.id)) {
      out.token_id = sentinel_for(occ);
      out.kind = TokenKind::kSentinel;
    } else {
      out.token_id = std::move(occ.id);
      out.kind = occ.kind;
    }
    tg.nodes.push_back(std::move(out));
  }
  finalize_token_graph(mol, tg);
  return tg;
}

Tokenizer::Tokenizer(const Vocabulary &vocab)
    : impl_(std::make_unique<Impl>(vocab)) { }
Tokenizer::~Tokenizer() = default;
Tokenizer::Tokenizer(Tokenizer &&) noexcept = default;

TokenGraph Tokenizer::tokenize(const MoleculeGraph &mol,
                               TokenizeTrace *trace) const {
  return impl_->run(mol, trace);
}

std::vector<TokenGraph>
Tokenizer::tokenize_all(std::span<const MoleculeGraph> mols,
                        int threads) const {
  std::vector<TokenGraph> out(mols.size());
  internal::parallel_for(mols.size(), threads,
                         [&](std::size_t i) { out[i] = impl_->run(mols[i], nullptr); });
  return out;
}

const Vocabulary &Tokenizer::vocabulary() const { return impl_->vocab; }

TokenGraph tokenize(const MoleculeGraph &mol, const Vocabulary &vocab,
                    TokenizeTrace *trace) {
  return Tokenizer(vocab).tokenize(mol, trace);
}

}  // namespace fragtok

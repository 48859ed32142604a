//
// fragtok - Copyright 2026 The fragtok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "atom_set.h"
#include "fragment_context.h"
#include "fragtok/error.h"
#include "fragtok/smiles.h"
#include "fragtok/tokenizer.h"
#include "parallel.h"

namespace fragtok {
namespace {

using internal::AtomSet;
using internal::AtomSetHash;
using internal::FragmentContext;

struct Occurrence {
  AtomSet atoms;
  AtomSet nbhd;
  std::string id;
  bool alive = true;
  // Unions with the partners that were mergeable when this occurrence was
  // created. It is retired once all of them exist as occurrences.
  std::vector<AtomSet> creation_unions;
};

struct Candidate {
  AtomSet atoms;
  std::string id;
  // Lexicographically smallest constituent id pair realizing the union.
  std::pair<std::string, std::string> constituents;
};

class MoleculeState {
public:
  explicit MoleculeState(const MoleculeGraph &mol): ctx_(mol) {
    for (const auto &basic: ctx_.basics()) {
      Occurrence occ;
      occ.atoms = basic.atoms;
      occ.nbhd = ctx_.closed_neighborhood(basic.atoms);
      occ.id = canonical_id(basic.atoms);
      created_.insert(occ.atoms);
      occs_.push_back(std::move(occ));
    }
    record_creation_unions(0);
    refresh_candidates();
  }

  const std::vector<Occurrence> &occurrences() const { return occs_; }
  const std::vector<Candidate> &candidates() const { return candidates_; }

  // Creates every candidate union with the given id and retires the
  // occurrences whose creation-time pairs are now all merged.
  void apply(const std::string &id) {
    const int first_new = static_cast<int>(occs_.size());
    for (const Candidate &c: candidates_) {
      if (c.id != id)
        continue;
      Occurrence occ;
      occ.atoms = c.atoms;
      occ.nbhd = ctx_.closed_neighborhood(c.atoms);
      occ.id = id;
      occs_.push_back(std::move(occ));
    }
    for (int k = first_new; k < static_cast<int>(occs_.size()); ++k)
      created_.insert(occs_[k].atoms);
    record_creation_unions(first_new);

    for (Occurrence &occ: occs_) {
      if (!occ.alive || occ.creation_unions.empty())
        continue;
      const bool all_merged = std::all_of(
          occ.creation_unions.begin(), occ.creation_unions.end(),
          [&](const AtomSet &u) { return created_.count(u) > 0; });
      if (all_merged)
        occ.alive = false;
    }
    refresh_candidates();
  }

private:
  const std::string &canonical_id(const AtomSet &u) {
    auto it = ids_.find(u);
    if (it == ids_.end())
      it = ids_.emplace(u, canonical_smiles(ctx_.mol(), u.to_vector())).first;
    return it->second;
  }

  // Mergeable: adjacent, neither contains the other, rings stay whole.
  bool mergeable(const Occurrence &a, const Occurrence &b, AtomSet &u) const {
    if (!FragmentContext::adjacent(a.nbhd, b.atoms))
      return false;
    u = a.atoms | b.atoms;
    return !(u == a.atoms) && !(u == b.atoms) && ctx_.preserves_rings(u);
  }

  void record_creation_unions(int first_new) {
    for (int k = first_new; k < static_cast<int>(occs_.size()); ++k) {
      for (int other = 0; other < static_cast<int>(occs_.size()); ++other) {
        if (other == k || !occs_[other].alive)
          continue;
        AtomSet u;
        if (mergeable(occs_[k], occs_[other], u))
          occs_[k].creation_unions.push_back(std::move(u));
      }
    }
  }

  void refresh_candidates() {
    std::unordered_map<AtomSet, Candidate, AtomSetHash> by_union;
    const int n = static_cast<int>(occs_.size());
    for (int i = 0; i < n; ++i) {
      if (!occs_[i].alive)
        continue;
      for (int j = i + 1; j < n; ++j) {
        if (!occs_[j].alive)
          continue;
        AtomSet u;
        if (!mergeable(occs_[i], occs_[j], u) || created_.count(u))
          continue;
        auto pair = std::minmax(occs_[i].id, occs_[j].id);
        std::pair<std::string, std::string> constituents { pair.first,
                                                           pair.second };
        auto it = by_union.find(u);
        if (it == by_union.end()) {
          const std::string &id = canonical_id(u);
          by_union.emplace(u, Candidate { u, id, std::move(constituents) });
        } else if (constituents < it->second.constituents) {
          it->second.constituents = std::move(constituents);
        }
      }
    }
    candidates_.clear();
    for (auto &[u, c]: by_union)
      candidates_.push_back(std::move(c));
    std::sort(candidates_.begin(), candidates_.end(),
              [](const Candidate &l, const Candidate &r) {
                return std::tie(l.id, l.atoms) < std::tie(r.id, r.atoms);
              });
  }

  FragmentContext ctx_;
  std::vector<Occurrence> occs_;
  std::unordered_set<AtomSet, AtomSetHash> created_;
  std::unordered_map<AtomSet, std::string, AtomSetHash> ids_;
  std::vector<Candidate> candidates_;
};

// Global candidate frequencies with ordered access to the best entry.
class CandidateTable {
public:
  void add(const std::string &id, std::int64_t delta, int mol) {
    if (delta == 0)
      return;
    Entry &e = entries_[id];
    if (e.freq > 0)
      ranking_.erase({ -e.freq, id });
    e.freq += delta;
    if (e.freq > 0)
      ranking_.insert({ -e.freq, id });
    if (delta > 0)
      e.mols.insert(mol);
  }

  // (id, frequency) with the highest frequency, ties to the smaller id.
  std::optional<MergeStep> best() const {
    if (ranking_.empty())
      return std::nullopt;
    return MergeStep { ranking_.begin()->second, -ranking_.begin()->first };
  }

  const std::set<int> &molecules(const std::string &id) const {
    return entries_.at(id).mols;
  }

  std::map<std::string, std::int64_t> snapshot() const {
    std::map<std::string, std::int64_t> out;
    for (const auto &[neg, id]: ranking_)
      out.emplace(id, -neg);
    return out;
  }

private:
  struct Entry {
    std::int64_t freq = 0;
    std::set<int> mols;  // may include molecules that no longer have it
  };
  std::unordered_map<std::string, Entry> entries_;
  std::set<std::pair<std::int64_t, std::string>> ranking_;
};

void count_candidates(const MoleculeState &state, int mol, int sign,
                      CandidateTable &table) {
  const auto &cands = state.candidates();
  for (std::size_t k = 0; k < cands.size();) {
    std::size_t end = k;
    while (end < cands.size() && cands[end].id == cands[k].id)
      ++end;
    table.add(cands[k].id, sign * static_cast<std::int64_t>(end - k), mol);
    k = end;
  }
}

}  // namespace

std::int64_t choose_min_freq(std::span<const Token> tokens,
                             std::size_t target) {
  std::vector<std::int64_t> freqs;
  for (const Token &t: tokens) {
    if (t.kind != TokenKind::kSentinel)
      freqs.push_back(t.frequency);
  }
  std::sort(freqs.begin(), freqs.end());
  // |final(t)| only changes at observed frequencies, so those (and 0) are
  // the only thresholds worth comparing.
  std::vector<std::int64_t> thresholds { 0 };
  thresholds.insert(thresholds.end(), freqs.begin(), freqs.end());
  std::int64_t best_t = 0;
  std::size_t best_gap = static_cast<std::size_t>(-1);
  for (std::int64_t t: thresholds) {
    const auto above = static_cast<std::size_t>(
        freqs.end() - std::upper_bound(freqs.begin(), freqs.end(), t));
    const std::size_t gap = above > target ? above - target : target - above;
    if (gap < best_gap || (gap == best_gap && t > best_t)) {
      best_gap = gap;
      best_t = t;
    }
  }
  return best_t;
}

Vocabulary train_vocabulary(std::span<const MoleculeGraph> corpus,
                            const TrainOptions &options,
                            const TrainObserver &observer) {
  if (corpus.empty())
    throw Error(ErrorCode::kEmptyCorpus, "training corpus has no molecules");

  std::vector<MoleculeGraph> stripped;
  if (!options.chiral) {
    stripped.reserve(corpus.size());
    for (const MoleculeGraph &m: corpus)
      stripped.push_back(strip_chirality(m));
    corpus = stripped;
  }

  std::vector<std::unique_ptr<MoleculeState>> states(corpus.size());
  internal::parallel_for(corpus.size(), options.threads, [&](std::size_t i) {
    states[i] = std::make_unique<MoleculeState>(corpus[i]);
  });

  std::map<std::string, std::int64_t> basic_freq;
  std::set<int> elements;
  CandidateTable table;
  for (std::size_t i = 0; i < states.size(); ++i) {
    for (const Occurrence &occ: states[i]->occurrences())
      ++basic_freq[occ.id];
    for (const Atom &a: corpus[i].atoms())
      elements.insert(a.element);
    count_candidates(*states[i], static_cast<int>(i), 1, table);
  }

  std::map<std::string, Token> composites;
  for (int iteration = 0; iteration < options.max_merges; ++iteration) {
    const std::optional<MergeStep> best = table.best();
    if (!best || best->frequency <= 1)
      break;
    if (observer)
      observer(iteration, table.snapshot(), *best);

    std::vector<int> mols;
    for (int m: table.molecules(best->id)) {
      const auto &cands = states[m]->candidates();
      if (std::any_of(cands.begin(), cands.end(),
                      [&](const Candidate &c) { return c.id == best->id; }))
        mols.push_back(m);
    }

    std::pair<std::string, std::string> chain;
    bool have_chain = false;
    for (int m: mols) {
      for (const Candidate &c: states[m]->candidates()) {
        if (c.id == best->id && (!have_chain || c.constituents < chain)) {
          chain = c.constituents;
          have_chain = true;
        }
      }
      count_candidates(*states[m], m, -1, table);
    }

    internal::parallel_for(mols.size(), options.threads, [&](std::size_t k) {
      states[mols[k]]->apply(best->id);
    });
    for (int m: mols)
      count_candidates(*states[m], m, 1, table);

    Token &token = composites[best->id];
    if (token.id.empty()) {
      token.id = best->id;
      token.kind = TokenKind::kComposite;
      token.merge_chain = { chain.first, chain.second };
    }
    token.frequency += best->frequency;
  }

  std::vector<Token> tokens;
  for (const auto &[id, freq]: basic_freq)
    tokens.push_back({ id, TokenKind::kBasic, freq, {} });
  for (auto &[id, token]: composites) {
    if (!basic_freq.count(id))
      tokens.push_back(std::move(token));
  }
  for (std::string_view s: { kRingSentinel, kBondSentinel, kAnyAtomSentinel })
    tokens.push_back({ std::string(s), TokenKind::kSentinel, 0, {} });
  for (int z: elements)
    tokens.push_back({ atom_sentinel(z), TokenKind::kSentinel, 0, {} });

  const std::int64_t min_freq =
      options.min_freq ? *options.min_freq : choose_min_freq(tokens);
  return Vocabulary(std::move(tokens), min_freq, options.chiral);
}

}  // namespace fragtok

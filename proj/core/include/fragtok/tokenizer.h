//
// fragtok - Copyright 2026 The fragtok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef FRAGTOK_TOKENIZER_H_
#define FRAGTOK_TOKENIZER_H_

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fragtok/molecule.h"

namespace fragtok {

enum class TokenKind {
  kBasic,
  kComposite,
  kSentinel,
};

std::string_view token_kind_name(TokenKind kind);
std::optional<TokenKind> token_kind_from_name(std::string_view name);

inline constexpr std::string_view kRingSentinel = "<ring>";
inline constexpr std::string_view kBondSentinel = "<bond>";
inline constexpr std::string_view kAnyAtomSentinel = "<atom:*>";
/// "<atom:X>" for element symbol X.
std::string atom_sentinel(int atomic_number);
bool is_sentinel_id(std::string_view id);

struct Token {
  std::string id;
  TokenKind kind = TokenKind::kBasic;
  std::int64_t frequency = 0;
  // Constituent ids of the first merge that produced a composite.
  std::vector<std::string> merge_chain;

  bool operator==(const Token &) const = default;
};

/// Trained vocabulary. Tokens are kept in file order: basic, composite,
/// sentinel; within a kind by descending frequency, then id.
class Vocabulary {
public:
  Vocabulary() = default;
  Vocabulary(std::vector<Token> tokens, std::int64_t min_freq,
             bool chiral = true);

  const std::vector<Token> &tokens() const { return tokens_; }
  std::int64_t min_freq() const { return min_freq_; }
  /// False when the vocabulary was trained on chirality-stripped molecules;
  /// tokenize() then strips parity from its input as well.
  bool chiral() const { return chiral_; }

  const Token *find(std::string_view id) const;
  /// Basic or composite token with frequency above min_freq.
  bool in_final(std::string_view id) const;

  /// Feature columns: final tokens in file order, then sentinels.
  const std::vector<std::string> &columns() const { return columns_; }
  /// Column for an occurrence id, or -1. Sentinel atoms of elements without a
  /// dedicated slot map to "<atom:*>".
  int column_of(std::string_view id) const;

  bool operator==(const Vocabulary &o) const {
    return tokens_ == o.tokens_ && min_freq_ == o.min_freq_
           && chiral_ == o.chiral_;
  }

private:
  std::vector<Token> tokens_;
  std::int64_t min_freq_ = 0;
  bool chiral_ = true;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::string> columns_;
  std::unordered_map<std::string, int> column_index_;
};

struct TokenOccurrence {
  std::string token_id;
  TokenKind kind = TokenKind::kBasic;
  std::vector<int> atoms;  // sorted host-molecule atom indices
  // Ids of the two occurrences merged into this one; empty for basic tokens.
  std::vector<std::string> merged_from;

  bool operator==(const TokenOccurrence &) const = default;
};

/// Overlapping fragment cover of one molecule. Nodes are ordered by their
/// atom lists, then id.
struct TokenGraph {
  int num_atoms = 0;
  std::vector<TokenOccurrence> nodes;
  // Node pairs (i < j) sharing an atom or joined by a bond, sorted.
  std::vector<std::pair<int, int>> edges;
  // Atom -> sorted node indices.
  std::vector<std::vector<int>> a2f;

  std::span<const int> f2a(int node) const { return nodes[node].atoms; }

  bool operator==(const TokenGraph &) const = default;
};

/// Sorts nodes and rebuilds edges and a2f from node atom sets.
void finalize_token_graph(const MoleculeGraph &mol, TokenGraph &tg);

/// Rings, then bonds outside rings, then uncovered atoms, each identified by
/// the canonical SMILES of its induced subgraph.
TokenGraph extract_basic_tokens(const MoleculeGraph &mol);

/// Union of two adjacent occurrences. Throws kNotAdjacent if they neither
/// share an atom nor are joined by a bond, or if one contains the other.
TokenOccurrence merge(const TokenOccurrence &a, const TokenOccurrence &b,
                      const MoleculeGraph &mol);

// Training --------------------------------------------------------------------

struct MergeStep {
  std::string id;
  std::int64_t frequency = 0;
};

struct TrainOptions {
  int max_merges = 1000;
  // Frequency threshold t; chosen automatically when unset.
  std::optional<std::int64_t> min_freq;
  // Strip parity from the corpus before training.
  bool chiral = true;
  int threads = 1;
};

/// Called once per merge iteration with every candidate id and its
/// frequency, and the selected merge.
using TrainObserver =
    std::function<void(int iteration,
                       const std::map<std::string, std::int64_t> &candidates,
                       const MergeStep &selected)>;

/// Throws kEmptyCorpus.
Vocabulary train_vocabulary(std::span<const MoleculeGraph> corpus,
                            const TrainOptions &options,
                            const TrainObserver &observer = {});

/// Threshold t whose final vocabulary size is closest to `target`; ties
/// prefer the larger t.
std::int64_t choose_min_freq(std::span<const Token> tokens,
                             std::size_t target = 200);

// Tokenization ----------------------------------------------------------------

struct TokenizeTrace {
  std::vector<MergeStep> steps;
};

/// Tokenizer bound to one vocabulary. Thread-safe.
class Tokenizer {
public:
  explicit Tokenizer(const Vocabulary &vocab);
  ~Tokenizer();
  Tokenizer(Tokenizer &&) noexcept;

  TokenGraph tokenize(const MoleculeGraph &mol,
                      TokenizeTrace *trace = nullptr) const;

  std::vector<TokenGraph> tokenize_all(std::span<const MoleculeGraph> mols,
                                       int threads) const;

  const Vocabulary &vocabulary() const;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

TokenGraph tokenize(const MoleculeGraph &mol, const Vocabulary &vocab,
                    TokenizeTrace *trace = nullptr);

}  // namespace fragtok

#endif  // FRAGTOK_TOKENIZER_H_

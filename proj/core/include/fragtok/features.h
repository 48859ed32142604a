//
// fragtok - Copyright 2026 The fragtok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef FRAGTOK_FEATURES_H_
#define FRAGTOK_FEATURES_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "fragtok/tokenizer.h"

namespace fragtok {

/// Sparse bag-of-tokens counts over Vocabulary::columns().
struct FeatureVector {
  std::vector<int> indices;  // strictly increasing
  std::vector<std::int64_t> counts;  // all >= 1
  int dim = 0;

  bool operator==(const FeatureVector &) const = default;
};

/// Throws kVocabularyMismatch for an occurrence id that has no column.
FeatureVector featurize(const TokenGraph &tg, const Vocabulary &vocab);

struct CorpusStats {
  std::int64_t molecules = 0;
  std::int64_t occurrences = 0;
  std::int64_t atoms = 0;
  double avg_tokens_per_mol = 0;
  double avg_atoms_per_token = 0;
  // Total occurrence size over total atom count; 1 when nothing overlaps.
  double overlap_factor = 0;
  std::map<std::string, std::int64_t> vocab_histogram;

  bool operator==(const CorpusStats &) const = default;
};

/// Throws kEmptyInput for an empty list or a corpus without atoms.
CorpusStats corpus_stats(std::span<const TokenGraph> tgs);

}  // namespace fragtok

#endif  // FRAGTOK_FEATURES_H_

//
// fragtok - Copyright 2026 The fragtok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "fragtok/features.h"

#include "fragtok/error.h"

namespace fragtok {

FeatureVector featurize(const TokenGraph &tg, const Vocabulary &vocab) {
  std::map<int, std::int64_t> counts;
  for (const TokenOccurrence &occ: tg.nodes) {
    const int col = vocab.column_of(occ.token_id);
    if (col < 0)
      throw Error(ErrorCode::kVocabularyMismatch,
                  "token '" + occ.token_id + "' is not in the vocabulary");
    ++counts[col];
  }
  FeatureVector fv;
  fv.dim = static_cast<int>(vocab.columns().size());
  for (const auto &[col, count]: counts) {
    fv.indices.push_back(col);
    fv.counts.push_back(count);
  }
  return fv;
}

CorpusStats corpus_stats(std::span<const TokenGraph> tgs) {
  if (tgs.empty())
    throw Error(ErrorCode::kEmptyInput, "no token graphs");
  CorpusStats s;
  std::int64_t occupied = 0;
  for (const TokenGraph &tg: tgs) {
    ++s.molecules;
    s.atoms += tg.num_atoms;
    for (const TokenOccurrence &occ: tg.nodes) {
      ++s.occurrences;
      occupied += static_cast<std::int64_t>(occ.atoms.size());
      ++s.vocab_histogram[occ.token_id];
    }
  }
  if (s.atoms == 0 || s.occurrences == 0)
    throw Error(ErrorCode::kEmptyInput, "token graphs contain no atoms");
  s.avg_tokens_per_mol =
      static_cast<double>(s.occurrences) / static_cast<double>(s.molecules);
  s.avg_atoms_per_token =
      static_cast<double>(occupied) / static_cast<double>(s.occurrences);
  s.overlap_factor =
      static_cast<double>(occupied) / static_cast<double>(s.atoms);
  return s;
}

}  // namespace fragtok

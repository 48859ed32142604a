//
// fragtok - Copyright 2026 The fragtok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef FRAGTOK_BENCH_DATA_H_
#define FRAGTOK_BENCH_DATA_H_

#include <string>
#include <vector>

#include "fragtok/io.h"

namespace fragtok::bench {

inline std::string data_path(const std::string &name) {
  return std::string(FRAGTOK_BENCH_DATA_DIR) + "/" + name;
}

inline const std::vector<MoleculeGraph> &drugs() {
  static const std::vector<MoleculeGraph> mols = [] {
    std::vector<MoleculeGraph> out;
    for (const CorpusRecord &r: read_corpus(data_path("drugs.smi")).records)
      out.push_back(r.molecule);
    return out;
  }();
  return mols;
}

}  // namespace fragtok::bench

#endif  // FRAGTOK_BENCH_DATA_H_

//
// fragtok - Copyright 2026 The fragtok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <benchmark/benchmark.h>

#include "bench_data.h"
#include "fragtok/tokenizer.h"

namespace fragtok {
namespace {

void BM_TrainVocabulary(benchmark::State &state) {
  TrainOptions opt;
  opt.max_merges = static_cast<int>(state.range(0));
  for (auto _: state)
    benchmark::DoNotOptimize(train_vocabulary(bench::drugs(), opt));
}
BENCHMARK(BM_TrainVocabulary)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_Tokenize(benchmark::State &state) {
  TrainOptions opt;
  opt.max_merges = 300;
  opt.min_freq = 1;
  const Tokenizer tok(train_vocabulary(bench::drugs(), opt));
  const auto &mols = bench::drugs();
  for (auto _: state) {
    for (const MoleculeGraph &m: mols)
      benchmark::DoNotOptimize(tok.tokenize(m));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(mols.size()));
}
BENCHMARK(BM_Tokenize)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace fragtok

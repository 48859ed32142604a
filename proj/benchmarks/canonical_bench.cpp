//
// fragtok - Copyright 2026 The fragtok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <benchmark/benchmark.h>

#include "bench_data.h"
#include "fragtok/molgraph.h"
#include "fragtok/smiles.h"

namespace fragtok {
namespace {

void BM_ParseSmiles(benchmark::State &state) {
  std::vector<std::string> smiles;
  for (const MoleculeGraph &m: bench::drugs())
    smiles.push_back(canonical_smiles(m));
  for (auto _: state) {
    for (const std::string &s: smiles)
      benchmark::DoNotOptimize(parse_smiles(s));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(smiles.size()));
}
BENCHMARK(BM_ParseSmiles);

void BM_CanonicalSmiles(benchmark::State &state) {
  const auto &mols = bench::drugs();
  for (auto _: state) {
    for (const MoleculeGraph &m: mols)
      benchmark::DoNotOptimize(canonical_smiles(m));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(mols.size()));
}
BENCHMARK(BM_CanonicalSmiles);

void BM_PerceiveRings(benchmark::State &state) {
  const auto &mols = bench::drugs();
  for (auto _: state) {
    for (const MoleculeGraph &m: mols)
      benchmark::DoNotOptimize(perceive_rings(m));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(mols.size()));
}
BENCHMARK(BM_PerceiveRings);

}  // namespace
}  // namespace fragtok

//
// fragtok - Copyright 2026 The fragtok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <benchmark/benchmark.h>

#include "bench_data.h"
#include "fragtok/attention.h"
#include "fragtok/hiergraph.h"

namespace fragtok {
namespace {

void BM_BuildAndForward(benchmark::State &state) {
  const Entity pocket = read_pocket(read_file(bench::data_path("pocket.pdb")));
  const Corpus ligands =
      read_corpus(bench::data_path("ligands.smi"), bench::data_path("ligands.xyz"));
  const MoleculeGraph &mol = ligands.records.front().molecule;
  const Entity ligand = make_ligand_entity(mol, extract_basic_tokens(mol));
  SymbolSets symbols = default_symbol_sets();
  add_graph_symbols(symbols, build_hier_graph(pocket, ligand));
  const LayerParams params = random_params(LayerConfig{}, symbols, 1);
  for (auto _: state) {
    const HierGraph g = build_hier_graph(pocket, ligand);
    benchmark::DoNotOptimize(encoder_layer(embed(g, params), g, params));
  }
}
BENCHMARK(BM_BuildAndForward)->Unit(benchmark::kMicrosecond);

}  // namespace
}  // namespace fragtok

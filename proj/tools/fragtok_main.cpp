//
// fragtok - Copyright 2026 The fragtok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fragtok/attention.h"
#include "fragtok/error.h"
#include "fragtok/features.h"
#include "fragtok/hiergraph.h"
#include "fragtok/io.h"
#include "fragtok/molgraph.h"
#include "fragtok/smiles.h"
#include "fragtok/tokenizer.h"

namespace {

using namespace fragtok;
namespace fs = std::filesystem;

struct Options {
  std::vector<std::string> smiles;
  std::string in;
  std::string xyz;
  std::string out;
  std::string vocab;
  std::string pocket;
  std::string graph;
  std::string params;
  std::string save_params;
  std::int64_t min_freq = -1;
  int max_merges = 1000;
  int threads = 1;
  int k_token = 9;
  int k_atom = 3;
  std::uint64_t seed = 0;
  bool achiral = false;
  bool quiet = false;
};

void emit(const Options &opt, const std::string &text) {
  if (opt.out.empty())
    std::cout << text;
  else
    write_file(opt.out, text);
}

Corpus load_corpus(const Options &opt) {
  std::optional<fs::path> xyz;
  if (!opt.xyz.empty())
    xyz = opt.xyz;
  Corpus corpus = read_corpus(opt.in, xyz);
  if (!opt.quiet) {
    for (const CorpusWarning &w: corpus.warnings)
      std::cerr << "warning: line " << w.line << ": " << w.message << "\n";
  }
  return corpus;
}

std::vector<MoleculeGraph> molecules_of(const Corpus &corpus) {
  std::vector<MoleculeGraph> mols;
  mols.reserve(corpus.records.size());
  for (const CorpusRecord &r: corpus.records)
    mols.push_back(r.molecule);
  return mols;
}

/// SMILES from positional arguments, else one record per corpus line.
std::vector<std::pair<std::string, MoleculeGraph>>
inputs_of(const Options &opt) {
  std::vector<std::pair<std::string, MoleculeGraph>> out;
  if (!opt.smiles.empty()) {
    for (const std::string &s: opt.smiles)
      out.emplace_back(s, parse_smiles(s));
    return out;
  }
  if (opt.in.empty())
    throw Error(ErrorCode::kEmptyInput, "give SMILES arguments or --in");
  for (CorpusRecord &r: load_corpus(opt).records)
    out.emplace_back(r.smiles, std::move(r.molecule));
  return out;
}

int cmd_parse(const Options &opt) {
  std::string text;
  for (const auto &[smiles, mol]: inputs_of(opt)) {
    nlohmann::json atoms = nlohmann::json::array();
    for (int i = 0; i < mol.num_atoms(); ++i) {
      const Atom &a = mol.atom(i);
      atoms.push_back({ { "element", element_symbol(a.element) },
                        { "aromatic", a.aromatic },
                        { "charge", a.formal_charge },
                        { "hydrogens", a.implicit_h } });
    }
    nlohmann::json bonds = nlohmann::json::array();
    for (const Bond &b: mol.bonds())
      bonds.push_back({ b.a, b.b, static_cast<int>(b.order) });
    nlohmann::json rings = nlohmann::json::array();
    for (const Ring &r: perceive_rings(mol))
      rings.push_back(r.atoms);
    nlohmann::json j = { { "smiles", smiles },
                         { "canonical", canonical_smiles(mol) },
                         { "atoms", std::move(atoms) },
                         { "bonds", std::move(bonds) },
                         { "rings", std::move(rings) } };
    text += j.dump() + "\n";
  }
  emit(opt, text);
  return 0;
}

int cmd_canonicalize(const Options &opt) {
  std::string text;
  for (const auto &[smiles, mol]: inputs_of(opt))
    text += canonical_smiles(opt.achiral ? strip_chirality(mol) : mol) + "\n";
  emit(opt, text);
  return 0;
}

int cmd_train(const Options &opt) {
  const Corpus corpus = load_corpus(opt);
  const auto mols = molecules_of(corpus);
  TrainOptions train;
  train.max_merges = opt.max_merges;
  if (opt.min_freq >= 0)
    train.min_freq = opt.min_freq;
  train.chiral = !opt.achiral;
  train.threads = opt.threads;
  const Vocabulary vocab = train_vocabulary(mols, train);
  emit(opt, write_vocabulary(vocab));
  if (!opt.quiet)
    std::cerr << "vocabulary: " << vocab.tokens().size() << " tokens, "
              << vocab.columns().size() << " feature columns, min_freq "
              << vocab.min_freq() << "\n";
  return 0;
}

Vocabulary load_vocab(const Options &opt) {
  return read_vocabulary(read_file(opt.vocab));
}

int cmd_tokenize(const Options &opt) {
  const Tokenizer tokenizer(load_vocab(opt));
  const Corpus corpus = load_corpus(opt);
  const auto mols = molecules_of(corpus);
  const auto graphs = tokenizer.tokenize_all(mols, opt.threads);
  std::vector<TokenizedRecord> records;
  for (std::size_t i = 0; i < graphs.size(); ++i)
    records.push_back({ corpus.records[i].smiles, graphs[i] });
  emit(opt, write_token_graphs(records));
  return 0;
}

int cmd_featurize(const Options &opt) {
  const Tokenizer tokenizer(load_vocab(opt));
  const Corpus corpus = load_corpus(opt);
  const auto graphs = tokenizer.tokenize_all(molecules_of(corpus), opt.threads);
  std::vector<FeatureRecord> records;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    records.push_back({ corpus.records[i].label.value_or(0.0),
                        featurize(graphs[i], tokenizer.vocabulary()) });
  }
  emit(opt, write_features(
                records, static_cast<int>(tokenizer.vocabulary().columns().size())));
  return 0;
}

int cmd_stats(const Options &opt) {
  const Tokenizer tokenizer(load_vocab(opt));
  const Corpus corpus = load_corpus(opt);
  const auto graphs = tokenizer.tokenize_all(molecules_of(corpus), opt.threads);
  emit(opt, write_corpus_stats(corpus_stats(graphs)));
  return 0;
}

int cmd_build_graph(const Options &opt) {
  const Entity pocket = read_pocket(read_file(opt.pocket));
  const Tokenizer tokenizer(load_vocab(opt));
  const Corpus corpus = load_corpus(opt);
  std::vector<HierGraph> graphs;
  for (const CorpusRecord &r: corpus.records) {
    const TokenGraph tg = tokenizer.tokenize(r.molecule);
    graphs.push_back(build_hier_graph(pocket, make_ligand_entity(r.molecule, tg),
                                      opt.k_token, opt.k_atom));
  }
  emit(opt, write_hier_graphs(graphs));
  return 0;
}

int cmd_forward(const Options &opt) {
  const auto graphs = read_hier_graphs(read_file(opt.graph));
  LayerParams params;
  if (!opt.params.empty()) {
    params = deserialize_params(read_file(opt.params));
  } else {
    SymbolSets symbols = default_symbol_sets();
    for (const HierGraph &g: graphs)
      add_graph_symbols(symbols, g);
    params = random_params(LayerConfig {}, symbols, opt.seed);
  }
  if (!opt.save_params.empty())
    write_file(opt.save_params, serialize_params(params));
  std::vector<LayerState> states;
  for (const HierGraph &g: graphs)
    states.push_back(encoder_layer(embed(g, params), g, params));
  emit(opt, write_embeddings(states));
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app { "fragtok: overlapping fragment tokenizer for small molecules" };
  app.fallthrough();  // -q is accepted after the subcommand too
  app.require_subcommand(1);
  Options opt;
  app.add_flag("-q,--quiet", opt.quiet, "Suppress warnings");

  auto out_opt = [&opt](CLI::App *sub) {
    sub->add_option("-o,--out", opt.out, "Output file (default stdout)");
  };
  auto corpus_opt = [&opt](CLI::App *sub, bool required) {
    auto *in = sub->add_option("-i,--in,--corpus", opt.in, ".smi corpus")
                   ->check(CLI::ExistingFile);
    if (required)
      in->required();
    sub->add_option("--xyz", opt.xyz, "XYZ coordinate sidecar")
        ->check(CLI::ExistingFile);
  };
  auto threads_opt = [&opt](CLI::App *sub) {
    sub->add_option("--threads", opt.threads, "Worker threads")
        ->check(CLI::PositiveNumber);
  };
  auto vocab_opt = [&opt](CLI::App *sub) {
    sub->add_option("--vocab", opt.vocab, "Vocabulary file")
        ->required()
        ->check(CLI::ExistingFile);
  };

  auto *parse = app.add_subcommand("parse", "Parse SMILES and print the graph");
  parse->add_option("smiles", opt.smiles, "SMILES strings");
  corpus_opt(parse, false);
  out_opt(parse);

  auto *canon = app.add_subcommand("canonicalize", "Print canonical SMILES");
  canon->add_option("smiles", opt.smiles, "SMILES strings");
  canon->add_flag("--achiral", opt.achiral, "Drop tetrahedral parity");
  corpus_opt(canon, false);
  out_opt(canon);

  auto *train = app.add_subcommand("train-vocab", "Train a vocabulary");
  corpus_opt(train, true);
  train->add_option("--min-freq", opt.min_freq,
                    "Frequency threshold (default: chosen for ~200 tokens)");
  train->add_option("--max-merges", opt.max_merges, "Merge iterations")
      ->check(CLI::NonNegativeNumber);
  train->add_flag("--achiral", opt.achiral, "Train on chirality-stripped input");
  threads_opt(train);
  out_opt(train);

  auto *tok = app.add_subcommand("tokenize", "Tokenize a corpus");
  vocab_opt(tok);
  corpus_opt(tok, true);
  threads_opt(tok);
  out_opt(tok);

  auto *feat = app.add_subcommand("featurize", "Bag-of-tokens libsvm features");
  vocab_opt(feat);
  corpus_opt(feat, true);
  threads_opt(feat);
  out_opt(feat);

  auto *stats = app.add_subcommand("stats", "Tokenization statistics");
  vocab_opt(stats);
  corpus_opt(stats, true);
  threads_opt(stats);
  out_opt(stats);

  auto *build = app.add_subcommand("build-graph",
                                   "Pocket-ligand hierarchical graphs");
  build->add_option("--pocket", opt.pocket, "Pocket PDB file")
      ->required()
      ->check(CLI::ExistingFile);
  vocab_opt(build);
  corpus_opt(build, true);
  build->add_option("--k-token", opt.k_token, "Token neighbors")
      ->check(CLI::PositiveNumber);
  build->add_option("--k-atom", opt.k_atom, "Atom neighbors per token edge")
      ->check(CLI::PositiveNumber);
  out_opt(build);

  auto *fwd = app.add_subcommand("forward", "Run one encoder layer");
  fwd->add_option("--graph", opt.graph, "Hierarchical graph file")
      ->required()
      ->check(CLI::ExistingFile);
  fwd->add_option("--params", opt.params, "Parameter file")
      ->check(CLI::ExistingFile);
  fwd->add_option("--seed", opt.seed, "Seed for random parameters");
  fwd->add_option("--save-params", opt.save_params,
                  "Write the parameters used");
  out_opt(fwd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*parse)
      return cmd_parse(opt);
    if (*canon)
      return cmd_canonicalize(opt);
    if (*train)
      return cmd_train(opt);
    if (*tok)
      return cmd_tokenize(opt);
    if (*feat)
      return cmd_featurize(opt);
    if (*stats)
      return cmd_stats(opt);
    if (*build)
      return cmd_build_graph(opt);
    if (*fwd)
      return cmd_forward(opt);
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception &e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

//
// fragtok - Copyright 2026 The fragtok Authors.
// SPDX-License-Identifier: Apache-2.0
//

// Acceptance suite. Prints one PASS/FAIL/SKIP line per criterion and exits
// nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fragtok/attention.h"
#include "fragtok/features.h"
#include "fragtok/hiergraph.h"
#include "fragtok/io.h"
#include "fragtok/molgraph.h"
#include "fragtok/smiles.h"
#include "fragtok/tokenizer.h"
#include "testing/isomorphism.h"
#include "testing/knn_oracle.h"
#include "testing/molecule_generator.h"
#include "testing/random_complex.h"
#include "testing/reference_forward.h"
#include "testing/smiles_writer.h"
#include "testing/training_oracle.h"

namespace fragtok {
namespace {

enum class Verdict { kPass, kFail, kSkip };

struct Outcome {
  Verdict verdict = Verdict::kPass;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Outcome fail(const std::string &why) {
  return { Verdict::kFail, why };
}

std::map<std::string, int> id_counts(const TokenGraph &tg) {
  std::map<std::string, int> out;
  for (const TokenOccurrence &o: tg.nodes)
    ++out[o.token_id];
  return out;
}

// 1. Worked example: fused bicyclic with methyl and thiol substituents.
Outcome worked_example() {
  const auto start = Clock::now();
  const Vocabulary built({ { "c1ccccc1", TokenKind::kBasic, 3778, {} },
                           { "Cc", TokenKind::kBasic, 3496, {} },
                           { "Sc", TokenKind::kBasic, 637, {} },
                           { "Cc1ccccc1", TokenKind::kComposite, 2458, { "Cc", "c1ccccc1" } } },
                         0);
  const Vocabulary vocab = read_vocabulary(write_vocabulary(built));
  TokenizeTrace trace;
  const TokenGraph tg = tokenize(parse_smiles("Cc12ccccc1(S)cccc2"), vocab, &trace);
  const double elapsed = seconds_since(start);
  const auto counts = id_counts(tg);
  const std::map<std::string, int> expected = { { "Cc1ccccc1", 2 }, { "Sc", 1 } };
  if (counts != expected)
    return fail("unexpected occurrence multiset");
  if (trace.steps.empty() || trace.steps[0].id != "Cc1ccccc1")
    return fail("first merge is not Cc1ccccc1");
  if (elapsed >= 1.0)
    return fail("took " + std::to_string(elapsed) + " s");
  return { Verdict::kPass, "2x Cc1ccccc1 + 1x Sc, first merge Cc1ccccc1" };
}

// 2. Fused aromatic rings overlap on the shared bond.
Outcome naphthalene_overlap() {
  const Vocabulary vocab({ { "c1ccccc1", TokenKind::kBasic, 10, {} } }, 0);
  const TokenGraph tg = tokenize(parse_smiles("c1c2ccccc2ccc1"), vocab);
  if (tg.nodes.size() != 2)
    return fail(std::to_string(tg.nodes.size()) + " occurrences");
  const std::string benzene = canonical_smiles(parse_smiles("c1ccccc1"));
  for (const TokenOccurrence &o: tg.nodes) {
    if (o.token_id != benzene)
      return fail("occurrence '" + o.token_id + "'");
  }
  std::vector<int> shared;
  std::set_intersection(tg.nodes[0].atoms.begin(), tg.nodes[0].atoms.end(),
                        tg.nodes[1].atoms.begin(), tg.nodes[1].atoms.end(),
                        std::back_inserter(shared));
  if (shared.size() != 2)
    return fail(std::to_string(shared.size()) + " shared atoms");
  return { Verdict::kPass, "2 benzene occurrences sharing 2 atoms" };
}

// 3. Lactic acid enantiomers.
Outcome chirality() {
  const MoleculeGraph l = parse_smiles("C[C@H](O)C(=O)O");
  const MoleculeGraph r = parse_smiles("C[C@@H](O)C(=O)O");
  if (canonical_smiles(l) == canonical_smiles(r))
    return fail("chiral canonical forms coincide");
  if (canonical_smiles(strip_chirality(l)) != canonical_smiles(strip_chirality(r)))
    return fail("stripped canonical forms differ");
  const std::vector<MoleculeGraph> corpus = { l, r, l, r };
  TrainOptions opt;
  opt.min_freq = 0;
  const Vocabulary chiral = train_vocabulary(corpus, opt);
  opt.chiral = false;
  const Vocabulary flat = train_vocabulary(corpus, opt);
  if (id_counts(tokenize(l, chiral)) == id_counts(tokenize(r, chiral)))
    return fail("chiral vocabulary gives identical token multisets");
  if (id_counts(tokenize(l, flat)) != id_counts(tokenize(r, flat)))
    return fail("stripped vocabulary gives different token multisets");
  return { Verdict::kPass, "identifiers differ when chiral, coincide when stripped" };
}

// 4. Every atom and bond of every molecule is covered.
Outcome coverage() {
  const auto start = Clock::now();
  TrainOptions opt;
  opt.max_merges = 400;
  opt.threads = 8;
  const Vocabulary trained = train_vocabulary(testing::random_corpus(1001, 600), opt);
  const auto test = testing::random_corpus(1002, 1000);
  long violations = 0;
  const std::int64_t thresholds[] = { 0, 1, 3, 10, 50 };
  for (std::int64_t t: thresholds) {
    const Tokenizer tok(Vocabulary(trained.tokens(), t, trained.chiral()));
    const auto graphs = tok.tokenize_all(test, 8);
    for (std::size_t m = 0; m < test.size(); ++m) {
      const MoleculeGraph &mol = test[m];
      std::vector<std::vector<bool>> in(graphs[m].nodes.size(),
                                        std::vector<bool>(mol.num_atoms(), false));
      std::vector<bool> atom_seen(mol.num_atoms(), false);
      for (std::size_t k = 0; k < graphs[m].nodes.size(); ++k) {
        for (int a: graphs[m].nodes[k].atoms)
          in[k][a] = atom_seen[a] = true;
      }
      violations += std::count(atom_seen.begin(), atom_seen.end(), false);
      for (const Bond &b: mol.bonds()) {
        bool ok = false;
        for (std::size_t k = 0; k < in.size() && !ok; ++k)
          ok = in[k][b.a] && in[k][b.b];
        violations += !ok;
      }
    }
  }
  const double elapsed = seconds_since(start);
  if (violations != 0)
    return fail(std::to_string(violations) + " uncovered atoms or bonds");
  if (elapsed >= 30.0)
    return fail("took " + std::to_string(elapsed) + " s");
  std::ostringstream os;
  os << "1000 molecules x 5 thresholds, 0 violations, " << elapsed << " s";
  return { Verdict::kPass, os.str() };
}

// 5. Incremental trainer against the exhaustive recount.
Outcome trainer_oracle() {
  const auto start = Clock::now();
  int steps = 0;
  for (int c = 0; c < 20; ++c) {
    std::mt19937_64 rng(5000 + c);
    testing::GeneratorOptions gen;
    gen.max_atoms = 24;
    const int size = std::uniform_int_distribution<int>(10, 24)(rng);
    std::vector<MoleculeGraph> corpus = testing::random_corpus(5100 + c, size, gen);
    // Repeat a few molecules so merges recur.
    const int extra = std::min(30 - size, 6);
    for (int i = 0; i < extra; ++i)
      corpus.push_back(corpus[static_cast<std::size_t>(i) % corpus.size()]);

    std::vector<std::pair<std::map<std::string, std::int64_t>, MergeStep>> got;
    TrainOptions opt;
    opt.max_merges = 40;
    opt.min_freq = 0;
    train_vocabulary(corpus, opt, [&](int, const auto &cands, const MergeStep &s) {
      got.emplace_back(cands, s);
    });
    const auto expected = testing::brute_force_training(corpus, 40);
    if (got.size() != expected.size())
      return fail("corpus " + std::to_string(c) + ": " + std::to_string(got.size())
                  + " merges vs " + std::to_string(expected.size()));
    for (std::size_t i = 0; i < got.size(); ++i) {
      if (got[i].second.id != expected[i].selected
          || got[i].second.frequency != expected[i].frequency)
        return fail("corpus " + std::to_string(c) + " step " + std::to_string(i) + ": "
                    + got[i].second.id + " vs " + expected[i].selected);
      if (got[i].first != expected[i].candidates)
        return fail("corpus " + std::to_string(c) + " step " + std::to_string(i)
                    + ": candidate counts differ");
    }
    steps += static_cast<int>(got.size());
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= 60.0)
    return fail("took " + std::to_string(elapsed) + " s");
  std::ostringstream os;
  os << "20 corpora, " << steps << " merges matched, " << elapsed << " s";
  return { Verdict::kPass, os.str() };
}

// 6. Canonical strings ignore atom order; canonical SMILES parse back.
Outcome canonical_stability() {
  const auto corpus = testing::random_corpus(6001, 200);
  std::mt19937_64 rng(6002);
  int mismatches = 0, roundtrip_failures = 0;
  for (const MoleculeGraph &mol: corpus) {
    const std::string expected = canonical_smiles(mol);
    for (int p = 0; p < 100; ++p) {
      const auto perm = testing::random_permutation(mol.num_atoms(), rng);
      mismatches += canonical_smiles(relabel_atoms(mol, perm)) != expected;
    }
    const MoleculeGraph back = parse_smiles(expected);
    roundtrip_failures += !testing::isomorphic(testing::drop_symmetric_stereo(mol),
                                               testing::drop_symmetric_stereo(back));
  }
  if (mismatches || roundtrip_failures)
    return fail(std::to_string(mismatches) + " permutation mismatches, "
                + std::to_string(roundtrip_failures) + " roundtrip failures");
  return { Verdict::kPass, "20000 permutations identical, 200/200 roundtrips isomorphic" };
}

// 7. Neighbor search against the all-pairs construction.
Outcome knn_oracle() {
  std::mt19937_64 rng(7001);
  for (int rep = 0; rep < 100; ++rep) {
    const auto [pocket, ligand] = testing::random_complex(rng);
    const HierGraph g = build_hier_graph(pocket, ligand, 9, 3);
    const auto got = testing::edge_sets_of(g);
    const auto expected = testing::brute_force_edges(pocket, ligand, 9, 3);
    if (got.token_edges != expected.token_edges)
      return fail("pair " + std::to_string(rep) + ": token edges differ");
    if (got.atom_edges != expected.atom_edges)
      return fail("pair " + std::to_string(rep) + ": atom edges differ");
  }
  return { Verdict::kPass, "100 pairs, token and atom edges identical" };
}

// 8. Forward pass: rigid-motion invariance, normalized attention, reference.
Outcome forward_pass() {
  double worst_motion = 0, worst_alpha = 0, worst_beta = 0, worst_rel = 0;
  for (int rep = 0; rep < 50; ++rep) {
    std::mt19937_64 rng(8000 + rep);
    const auto [pocket, ligand] = testing::random_complex(rng);
    const HierGraph g = build_hier_graph(pocket, ligand);
    SymbolSets symbols = default_symbol_sets();
    add_graph_symbols(symbols, g);
    const LayerParams params = random_params(LayerConfig{}, symbols, 8100 + rep);

    AttentionTrace trace;
    const LayerState out = encoder_layer(embed(g, params), g, params, &trace);

    double r[3][3];
    testing::random_rotation(rng, r);
    std::uniform_real_distribution<double> shift(-20, 20);
    const Vec3 t = { shift(rng), shift(rng), shift(rng) };
    const HierGraph moved = build_hier_graph(testing::transformed(pocket, r, t),
                                             testing::transformed(ligand, r, t));
    const LayerState out_moved = encoder_layer(embed(moved, params), moved, params);
    worst_motion = std::max(worst_motion, (out.h - out_moved.h).cwiseAbs().maxCoeff());

    std::map<std::pair<int, int>, double> alpha_sum;
    for (std::size_t e = 0; e < g.atom_edges.size(); ++e)
      alpha_sum[{ g.atom_edges[e].parent, g.atom_edges[e].receiver }] += trace.alpha[e];
    for (const auto &[k, s]: alpha_sum)
      worst_alpha = std::max(worst_alpha, std::abs(s - 1.0));
    std::map<int, double> beta_sum;
    for (std::size_t e = 0; e < g.token_edges.size(); ++e)
      beta_sum[g.token_edges[e].receiver] += trace.beta[e];
    for (const auto &[k, s]: beta_sum)
      worst_beta = std::max(worst_beta, std::abs(s - 1.0));

    const testing::Table ref = testing::reference_layer(g, params);
    double diff = 0, norm = 0;
    for (std::size_t a = 0; a < ref.size(); ++a) {
      for (std::size_t c = 0; c < ref[a].size(); ++c) {
        const double x = out.h(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(c));
        diff += (x - ref[a][c]) * (x - ref[a][c]);
        norm += ref[a][c] * ref[a][c];
      }
    }
    worst_rel = std::max(worst_rel, std::sqrt(diff / norm));
  }
  std::ostringstream os;
  os << "max motion change " << worst_motion << ", alpha sum error " << worst_alpha
     << ", beta sum error " << worst_beta << ", reference relative error " << worst_rel;
  if (worst_motion > 1e-6 || worst_alpha > 1e-9 || worst_beta > 1e-9 || worst_rel > 1e-8)
    return fail(os.str());
  return { Verdict::kPass, os.str() };
}

// 9. Token statistics on a user-supplied ligand set.
Outcome dataset_statistics() {
  const char *path = std::getenv("FRAGTOK_LBA_LIGANDS");
  if (path == nullptr || *path == '\0')
    return { Verdict::kSkip, "set FRAGTOK_LBA_LIGANDS to a .smi file to run" };
  const Corpus corpus = read_corpus(path);
  std::vector<MoleculeGraph> mols;
  for (const CorpusRecord &r: corpus.records)
    mols.push_back(r.molecule);
  Vocabulary vocab;
  if (const char *vpath = std::getenv("FRAGTOK_LBA_VOCAB"); vpath && *vpath) {
    vocab = read_vocabulary(read_file(vpath));
  } else {
    TrainOptions opt;
    opt.threads = 8;
    vocab = train_vocabulary(mols, opt);
  }
  const auto graphs = Tokenizer(vocab).tokenize_all(mols, 8);
  const CorpusStats st = corpus_stats(graphs);
  std::ostringstream os;
  os << "avg_tokens_per_mol " << st.avg_tokens_per_mol << " (target 7.95), avg_atoms_per_token "
     << st.avg_atoms_per_token << " (target 4.5)";
  const bool ok = std::abs(st.avg_tokens_per_mol - 7.95) <= 0.1 * 7.95
                  && std::abs(st.avg_atoms_per_token - 4.5) <= 0.1 * 4.5;
  return { ok ? Verdict::kPass : Verdict::kFail, os.str() };
}

// 10. Tokenization throughput.
Outcome throughput() {
  testing::GeneratorOptions gen;
  gen.max_atoms = 60;
  TrainOptions opt;
  opt.max_merges = 500;
  opt.threads = 8;
  const Vocabulary vocab = train_vocabulary(testing::random_corpus(10001, 1500, gen), opt);
  const auto mols = testing::random_corpus(10002, 10000, gen);
  int largest = 0;
  for (const MoleculeGraph &m: mols)
    largest = std::max(largest, m.num_atoms());
  const auto start = Clock::now();
  const auto graphs = Tokenizer(vocab).tokenize_all(mols, 8);
  const double elapsed = seconds_since(start);
  std::ostringstream os;
  os << graphs.size() << " molecules (max " << largest << " atoms) in " << elapsed
     << " s on 8 threads";
  if (largest > 60 || graphs.size() != mols.size() || elapsed >= 60.0)
    return fail(os.str());
  return { Verdict::kPass, os.str() };
}

}  // namespace
}  // namespace fragtok

int main() {
  using namespace fragtok;
  const std::vector<std::pair<const char *, std::function<Outcome()>>> criteria = {
    { "worked example replay", worked_example },
    { "naphthalene overlap", naphthalene_overlap },
    { "chirality discrimination", chirality },
    { "coverage", coverage },
    { "trainer oracle equivalence", trainer_oracle },
    { "canonicalization stability", canonical_stability },
    { "knn oracle", knn_oracle },
    { "forward-pass invariance", forward_pass },
    { "dataset statistics", dataset_statistics },
    { "tokenization throughput", throughput },
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception &e) {
      o = { Verdict::kFail, std::string("exception: ") + e.what() };
    }
    const char *tag = o.verdict == Verdict::kPass ? "PASS" : o.verdict == Verdict::kFail ? "FAIL" : "SKIP";
    failures += o.verdict == Verdict::kFail;
    std::printf("%s %2zu %s: %s\n", tag, i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}

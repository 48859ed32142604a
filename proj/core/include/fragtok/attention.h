//
// fragtok - Copyright 2026 The fragtok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef FRAGTOK_ATTENTION_H_
#define FRAGTOK_ATTENTION_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "fragtok/hiergraph.h"

namespace fragtok {

struct LayerConfig {
  int dim = 16;
  int hidden = 32;
  int rbf_size = 32;
  double rbf_max = 10.0;  // Angstrom
  double ln_eps = 1e-10;
};

/// Embedding rows keyed by symbol.
struct SymbolTable {
  std::vector<std::string> symbols;
  Eigen::MatrixXd rows;  // symbols.size() x dim

  /// Throws kUnknownSymbol.
  int index_of(std::string_view symbol, std::string_view table) const;
};

/// Fixed parameters of one encoder layer. Matrices map column vectors:
/// y = W x + b.
struct LayerParams {
  LayerConfig config;

  SymbolTable atom_types;
  SymbolTable token_types;
  SymbolTable position_codes;

  Eigen::MatrixXd w_q, w_k, w_v;  // dim x dim
  Eigen::VectorXd b_q, b_k, b_v;
  Eigen::MatrixXd edge_types;  // 4 x dim, rows in EdgeType order

  // Score MLP over [Q; K; RBF; e] -> dim.
  Eigen::MatrixXd score_w1;  // hidden x (3 dim + rbf)
  Eigen::VectorXd score_b1;
  Eigen::MatrixXd score_w2;  // dim x hidden
  Eigen::VectorXd score_b2;
  Eigen::VectorXd w_alpha;  // dim
  Eigen::VectorXd w_beta;  // dim

  // Message MLP: dim -> dim.
  Eigen::MatrixXd msg_w1;  // hidden x dim
  Eigen::VectorXd msg_b1;
  Eigen::MatrixXd msg_w2;  // dim x hidden
  Eigen::VectorXd msg_b2;

  // FFN over [H; H'; RBF] -> dim.
  Eigen::MatrixXd ffn_w1;  // hidden x (2 dim + rbf)
  Eigen::VectorXd ffn_b1;
  Eigen::MatrixXd ffn_w2;  // dim x hidden
  Eigen::VectorXd ffn_b2;

  Eigen::VectorXd ln_sigma;  // dim
  Eigen::VectorXd ln_mu;  // dim

  Eigen::VectorXd rbf_centers;  // strictly increasing
  double rbf_width = 0;

  /// Throws kShapeMismatch when a tensor disagrees with the config.
  void validate() const;
};

/// Symbols known without looking at any input: all elements, the standard
/// residues, common residue position codes and the global/ligand markers.
struct SymbolSets {
  std::vector<std::string> atom_types;
  std::vector<std::string> token_types;
  std::vector<std::string> position_codes;
};
SymbolSets default_symbol_sets();
/// Adds every symbol used by the graph (deduplicated, order kept).
void add_graph_symbols(SymbolSets &sets, const HierGraph &g);

/// Seeded random parameters. Weights ~ N(0, 1/fan_in), embeddings ~ N(0, 1),
/// LN scale 1 and shift 0, RBF centers uniform on [0, rbf_max] with width
/// equal to their spacing.
LayerParams random_params(const LayerConfig &config, const SymbolSets &symbols,
                          std::uint64_t seed);

/// Gaussian expansion of a distance.
Eigen::VectorXd rbf(const LayerParams &params, double distance);

/// Per-atom embedding matrix; rows follow HierGraph::atoms.
struct LayerState {
  Eigen::MatrixXd h;
};

/// Normalized attention weights of one bilevel attention call: alpha per
/// atom edge, beta per token edge.
struct AttentionTrace {
  std::vector<double> alpha;
  std::vector<double> beta;
};

/// Atom-type + mean token-type + position-code embedding.
LayerState embed(const HierGraph &g, const LayerParams &params);

LayerState bilevel_attention(const LayerState &state, const HierGraph &g,
                             const LayerParams &params,
                             AttentionTrace *trace = nullptr);

LayerState ffn_bidirectional(const LayerState &state, const HierGraph &g,
                             const LayerParams &params);

/// Normalization over all entries of the pair, then per-channel scale and
/// shift.
LayerState layer_norm(const LayerState &state, const LayerParams &params);

/// attention -> FFN -> LN.
LayerState encoder_layer(const LayerState &state, const HierGraph &g,
                         const LayerParams &params,
                         AttentionTrace *trace = nullptr);

/// Binary parameter file: magic "FTKP", u32 version, named f64 tensors with
/// explicit shapes, then named symbol lists. Little-endian throughout.
std::string serialize_params(const LayerParams &params);
/// Throws kVersionMismatch, kCorruptRecord, kShapeMismatch.
LayerParams deserialize_params(std::string_view bytes);

}  // namespace fragtok

#endif  // FRAGTOK_ATTENTION_H_

//
// fragtok - Copyright 2026 The fragtok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "fragtok/attention.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <string>

#include "fragtok/error.h"

namespace fragtok {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr int kNumEdgeTypes = 4;

MatrixXd silu(const MatrixXd &x) {
  return x.array() / (1.0 + (-x.array()).exp());
}

// Rows of x mapped through W x + b.
MatrixXd affine_rows(const MatrixXd &x, const MatrixXd &w, const VectorXd &b) {
  MatrixXd y = x * w.transpose();
  y.rowwise() += b.transpose();
  return y;
}

void expect_shape(const MatrixXd &m, Eigen::Index rows, Eigen::Index cols,
                  const char *name) {
  if (m.rows() != rows || m.cols() != cols)
    throw Error(ErrorCode::kShapeMismatch,
                std::string(name) + " is " + std::to_string(m.rows()) + "x"
                    + std::to_string(m.cols()) + ", expected "
                    + std::to_string(rows) + "x" + std::to_string(cols));
}

void expect_size(const VectorXd &v, Eigen::Index size, const char *name) {
  if (v.size() != size)
    throw Error(ErrorCode::kShapeMismatch,
                std::string(name) + " has " + std::to_string(v.size())
                    + " entries, expected " + std::to_string(size));
}

void check_state(const LayerState &state, const HierGraph &g,
                 const LayerParams &params) {
  expect_shape(state.h, static_cast<Eigen::Index>(g.atoms.size()),
               params.config.dim, "layer state");
}

double atom_distance(const HierGraph &g, int a, int b) {
  const Vec3 &p = *g.atoms[a].coords;
  const Vec3 &q = *g.atoms[b].coords;
  const double dx = p[0] - q[0], dy = p[1] - q[1], dz = p[2] - q[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

// RBF row of an atom edge; zero when an endpoint is a global atom.
VectorXd edge_rbf(const HierGraph &g, const LayerParams &params,
                  const AtomEdge &e) {
  if (!g.atoms[e.receiver].coords || !g.atoms[e.sender].coords)
    return VectorXd::Zero(params.config.rbf_size);
  return rbf(params, atom_distance(g, e.receiver, e.sender));
}

}  // namespace

int SymbolTable::index_of(std::string_view symbol,
                          std::string_view table) const {
  const auto it = std::find(symbols.begin(), symbols.end(), symbol);
  if (it == symbols.end())
    throw Error(ErrorCode::kUnknownSymbol, "no " + std::string(table)
                                               + " embedding for '"
                                               + std::string(symbol) + "'");
  return static_cast<int>(it - symbols.begin());
}

void LayerParams::validate() const {
  const int d = config.dim;
  const int h = config.hidden;
  const int r = config.rbf_size;
  if (d < 1 || h < 1 || r < 1)
    throw Error(ErrorCode::kShapeMismatch, "dimensions must be positive");
  for (const SymbolTable *t: { &atom_types, &token_types, &position_codes })
    expect_shape(t->rows, static_cast<Eigen::Index>(t->symbols.size()), d,
                 "embedding table");
  expect_shape(w_q, d, d, "w_q");
  expect_shape(w_k, d, d, "w_k");
  expect_shape(w_v, d, d, "w_v");
  expect_size(b_q, d, "b_q");
  expect_size(b_k, d, "b_k");
  expect_size(b_v, d, "b_v");
  expect_shape(edge_types, kNumEdgeTypes, d, "edge_types");
  expect_shape(score_w1, h, 3 * d + r, "score_w1");
  expect_size(score_b1, h, "score_b1");
  expect_shape(score_w2, d, h, "score_w2");
  expect_size(score_b2, d, "score_b2");
  expect_size(w_alpha, d, "w_alpha");
  expect_size(w_beta, d, "w_beta");
  expect_shape(msg_w1, h, d, "msg_w1");
  expect_size(msg_b1, h, "msg_b1");
  expect_shape(msg_w2, d, h, "msg_w2");
  expect_size(msg_b2, d, "msg_b2");
  expect_shape(ffn_w1, h, 2 * d + r, "ffn_w1");
  expect_size(ffn_b1, h, "ffn_b1");
  expect_shape(ffn_w2, d, h, "ffn_w2");
  expect_size(ffn_b2, d, "ffn_b2");
  expect_size(ln_sigma, d, "ln_sigma");
  expect_size(ln_mu, d, "ln_mu");
  expect_size(rbf_centers, r, "rbf_centers");
  for (Eigen::Index i = 1; i < rbf_centers.size(); ++i) {
    if (!(rbf_centers[i] > rbf_centers[i - 1]))
      throw Error(ErrorCode::kShapeMismatch,
                  "rbf centers must be strictly increasing");
  }
  if (!(rbf_width > 0))
    throw Error(ErrorCode::kShapeMismatch, "rbf width must be positive");
}

SymbolSets default_symbol_sets() {
  SymbolSets s;
  s.atom_types.emplace_back(kGlobalAtom);
  for (int z = 1; z <= 118; ++z)
    s.atom_types.emplace_back(element_symbol(z));

  s.token_types = { std::string(kGlobalToken), std::string(kRingSentinel),
                    std::string(kBondSentinel), std::string(kAnyAtomSentinel) };
  for (const char *res: { "ALA", "ARG", "ASN", "ASP", "CYS", "GLN", "GLU",
                          "GLY", "HIS", "ILE", "LEU", "LYS", "MET", "PHE",
                          "PRO", "SER", "THR", "TRP", "TYR", "VAL" })
    s.token_types.emplace_back(res);

  s.position_codes = { std::string(kGlobalPosition),
                       std::string(kLigandPosition) };
  for (const char *code: { "", "A", "B", "G", "G1", "G2", "D", "D1", "D2",
                           "E", "E1", "E2", "E3", "Z", "Z2", "Z3", "H", "H1",
                           "H2", "XT" })
    s.position_codes.emplace_back(code);
  return s;
}

void add_graph_symbols(SymbolSets &sets, const HierGraph &g) {
  auto add = [](std::vector<std::string> &list, const std::string &sym) {
    if (std::find(list.begin(), list.end(), sym) == list.end())
      list.push_back(sym);
  };
  for (const HierAtom &a: g.atoms) {
    add(sets.atom_types, a.symbol);
    add(sets.position_codes, a.position_code);
  }
  for (const HierToken &t: g.tokens)
    add(sets.token_types, t.id);
}

LayerParams random_params(const LayerConfig &config, const SymbolSets &symbols,
                          std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto normal = [&](Eigen::Index rows, Eigen::Index cols, double stddev) {
    std::normal_distribution<double> dist(0.0, stddev);
    MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
      for (Eigen::Index j = 0; j < cols; ++j)
        m(i, j) = dist(rng);
    }
    return m;
  };
  auto weight = [&](Eigen::Index out, Eigen::Index in) {
    return normal(out, in, 1.0 / std::sqrt(static_cast<double>(in)));
  };
  auto bias = [&](Eigen::Index n) -> VectorXd { return normal(n, 1, 0.1); };
  auto table = [&](const std::vector<std::string> &syms) {
    return SymbolTable { syms,
                         normal(static_cast<Eigen::Index>(syms.size()),
                                config.dim, 1.0) };
  };

  const int d = config.dim, h = config.hidden, r = config.rbf_size;
  LayerParams p;
  p.config = config;
  p.atom_types = table(symbols.atom_types);
  p.token_types = table(symbols.token_types);
  p.position_codes = table(symbols.position_codes);
  p.w_q = weight(d, d);
  p.w_k = weight(d, d);
  p.w_v = weight(d, d);
  p.b_q = bias(d);
  p.b_k = bias(d);
  p.b_v = bias(d);
  p.edge_types = normal(kNumEdgeTypes, d, 1.0);
  p.score_w1 = weight(h, 3 * d + r);
  p.score_b1 = bias(h);
  p.score_w2 = weight(d, h);
  p.score_b2 = bias(d);
  p.w_alpha = normal(d, 1, 1.0 / std::sqrt(static_cast<double>(d)));
  p.w_beta = normal(d, 1, 1.0 / std::sqrt(static_cast<double>(d)));
  p.msg_w1 = weight(h, d);
  p.msg_b1 = bias(h);
  p.msg_w2 = weight(d, h);
  p.msg_b2 = bias(d);
  p.ffn_w1 = weight(h, 2 * d + r);
  p.ffn_b1 = bias(h);
  p.ffn_w2 = weight(d, h);
  p.ffn_b2 = bias(d);
  p.ln_sigma = VectorXd::Ones(d);
  p.ln_mu = VectorXd::Zero(d);
  p.rbf_centers = VectorXd::LinSpaced(r, 0.0, config.rbf_max);
  p.rbf_width = r > 1 ? config.rbf_max / (r - 1) : config.rbf_max;
  return p;
}

Eigen::VectorXd rbf(const LayerParams &params, double distance) {
  const double w = params.rbf_width;
  return (-((params.rbf_centers.array() - distance) / w).square()).exp();
}

LayerState embed(const HierGraph &g, const LayerParams &params) {
  params.validate();
  const auto a2f = g.a2f();
  LayerState state;
  state.h.resize(static_cast<Eigen::Index>(g.atoms.size()), params.config.dim);
  for (std::size_t a = 0; a < g.atoms.size(); ++a) {
    const HierAtom &atom = g.atoms[a];
    VectorXd row =
        params.atom_types.rows.row(params.atom_types.index_of(atom.symbol, "atom"))
            .transpose();
    row += params.position_codes.rows
               .row(params.position_codes.index_of(atom.position_code,
                                                   "position"))
               .transpose();
    if (!a2f[a].empty()) {
      VectorXd mean = VectorXd::Zero(params.config.dim);
      for (int t: a2f[a])
        mean += params.token_types.rows
                    .row(params.token_types.index_of(g.tokens[t].id, "token"))
                    .transpose();
      row += mean / static_cast<double>(a2f[a].size());
    }
    state.h.row(static_cast<Eigen::Index>(a)) = row.transpose();
  }
  return state;
}

LayerState bilevel_attention(const LayerState &state, const HierGraph &g,
                             const LayerParams &params, AttentionTrace *trace) {
  params.validate();
  check_state(state, g, params);
  const int d = params.config.dim;
  const int r = params.config.rbf_size;
  const MatrixXd &h = state.h;

  const MatrixXd q = affine_rows(h, params.w_q, params.b_q);
  const MatrixXd k = affine_rows(h, params.w_k, params.b_k);
  const MatrixXd v = affine_rows(h, params.w_v, params.b_v);

  const auto num_edges = static_cast<Eigen::Index>(g.atom_edges.size());
  MatrixXd x(num_edges, 3 * d + r);
  for (Eigen::Index e = 0; e < num_edges; ++e) {
    const AtomEdge &ae = g.atom_edges[e];
    const auto type = static_cast<int>(g.token_edges[ae.parent].type);
    x.row(e) << q.row(ae.receiver), k.row(ae.sender),
        edge_rbf(g, params, ae).transpose(), params.edge_types.row(type);
  }
  const MatrixXd scores = affine_rows(
      silu(affine_rows(x, params.score_w1, params.score_b1)), params.score_w2,
      params.score_b2);
  const VectorXd logits = scores * params.w_alpha;

  // Softmax groups: one per (token edge, receiving atom).
  std::map<std::pair<int, int>, int> group_of;
  std::vector<int> group(num_edges);
  std::vector<std::pair<int, int>> group_key;
  for (Eigen::Index e = 0; e < num_edges; ++e) {
    const auto key = std::make_pair(g.atom_edges[e].parent,
                                    g.atom_edges[e].receiver);
    const auto [it, inserted] =
        group_of.emplace(key, static_cast<int>(group_key.size()));
    if (inserted)
      group_key.push_back(key);
    group[e] = it->second;
  }
  const auto num_groups = static_cast<Eigen::Index>(group_key.size());
  VectorXd group_max = VectorXd::Constant(num_groups, -INFINITY);
  for (Eigen::Index e = 0; e < num_edges; ++e)
    group_max[group[e]] = std::max(group_max[group[e]], logits[e]);
  VectorXd alpha(num_edges);
  VectorXd group_sum = VectorXd::Zero(num_groups);
  for (Eigen::Index e = 0; e < num_edges; ++e) {
    alpha[e] = std::exp(logits[e] - group_max[group[e]]);
    group_sum[group[e]] += alpha[e];
  }
  MatrixXd group_msg = MatrixXd::Zero(num_groups, d);
  for (Eigen::Index e = 0; e < num_edges; ++e) {
    alpha[e] /= group_sum[group[e]];
    group_msg.row(group[e]) += alpha[e] * v.row(g.atom_edges[e].sender);
  }

  // Token score: mean atom score over the edges expanded from a token edge.
  const auto num_token_edges = static_cast<Eigen::Index>(g.token_edges.size());
  MatrixXd token_score = MatrixXd::Zero(num_token_edges, d);
  VectorXd expanded = VectorXd::Zero(num_token_edges);
  for (Eigen::Index e = 0; e < num_edges; ++e) {
    token_score.row(g.atom_edges[e].parent) += scores.row(e);
    expanded[g.atom_edges[e].parent] += 1;
  }
  VectorXd beta_logit(num_token_edges);
  for (Eigen::Index t = 0; t < num_token_edges; ++t) {
    if (expanded[t] > 0)
      token_score.row(t) /= expanded[t];
    beta_logit[t] = token_score.row(t).dot(params.w_beta);
  }
  std::map<int, double> recv_max, recv_sum;
  for (Eigen::Index t = 0; t < num_token_edges; ++t) {
    const int i = g.token_edges[t].receiver;
    const auto it = recv_max.find(i);
    recv_max[i] = it == recv_max.end() ? beta_logit[t]
                                       : std::max(it->second, beta_logit[t]);
  }
  VectorXd beta(num_token_edges);
  for (Eigen::Index t = 0; t < num_token_edges; ++t) {
    const int i = g.token_edges[t].receiver;
    beta[t] = std::exp(beta_logit[t] - recv_max[i]);
    recv_sum[i] += beta[t];
  }
  for (Eigen::Index t = 0; t < num_token_edges; ++t)
    beta[t] /= recv_sum[g.token_edges[t].receiver];

  const MatrixXd transformed = affine_rows(
      silu(affine_rows(group_msg, params.msg_w1, params.msg_b1)),
      params.msg_w2, params.msg_b2);

  // m_i[a] summed over incoming token edges, then averaged over the tokens
  // that contain a.
  const auto a2f = g.a2f();
  LayerState out { h };
  for (Eigen::Index gi = 0; gi < num_groups; ++gi) {
    const auto [parent, atom] = group_key[gi];
    const double share = 1.0 / static_cast<double>(a2f[atom].size());
    out.h.row(atom) += share * beta[parent] * transformed.row(gi);
  }

  if (trace != nullptr) {
    trace->alpha.assign(alpha.data(), alpha.data() + alpha.size());
    trace->beta.assign(beta.data(), beta.data() + beta.size());
  }
  return out;
}

LayerState ffn_bidirectional(const LayerState &state, const HierGraph &g,
                             const LayerParams &params) {
  params.validate();
  check_state(state, g, params);
  const int d = params.config.dim;
  const int r = params.config.rbf_size;
  const MatrixXd &h = state.h;
  const auto n = h.rows();

  MatrixXd token_h = MatrixXd::Zero(static_cast<Eigen::Index>(g.tokens.size()), d);
  for (std::size_t t = 0; t < g.tokens.size(); ++t) {
    for (int a: g.tokens[t].atoms)
      token_h.row(static_cast<Eigen::Index>(t)) += h.row(a);
    if (!g.tokens[t].atoms.empty())
      token_h.row(static_cast<Eigen::Index>(t)) /=
          static_cast<double>(g.tokens[t].atoms.size());
  }
  const auto a2f = g.a2f();
  MatrixXd h_prime = MatrixXd::Zero(n, d);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (int t: a2f[a])
      h_prime.row(a) += token_h.row(t);
    if (!a2f[a].empty())
      h_prime.row(a) /= static_cast<double>(a2f[a].size());
  }

  // Distance features: mean RBF over the atom's incoming geometric edges.
  MatrixXd rbf_feat = MatrixXd::Zero(n, r);
  VectorXd count = VectorXd::Zero(n);
  for (const AtomEdge &e: g.atom_edges) {
    if (!g.atoms[e.receiver].coords || !g.atoms[e.sender].coords)
      continue;
    rbf_feat.row(e.receiver) +=
        rbf(params, atom_distance(g, e.receiver, e.sender)).transpose();
    count[e.receiver] += 1;
  }
  for (Eigen::Index a = 0; a < n; ++a) {
    if (count[a] > 0)
      rbf_feat.row(a) /= count[a];
  }

  MatrixXd y(n, 2 * d + r);
  y << h, h_prime, rbf_feat;
  LayerState out { h };
  out.h += affine_rows(silu(affine_rows(y, params.ffn_w1, params.ffn_b1)),
                       params.ffn_w2, params.ffn_b2);
  return out;
}

LayerState layer_norm(const LayerState &state, const LayerParams &params) {
  params.validate();
  if (state.h.cols() != params.config.dim)
    throw Error(ErrorCode::kShapeMismatch, "layer state width mismatch");
  const double mean = state.h.mean();
  const double var = (state.h.array() - mean).square().mean();
  const double inv = 1.0 / std::sqrt(var + params.config.ln_eps);
  LayerState out;
  out.h = ((state.h.array() - mean) * inv).matrix()
          * params.ln_sigma.asDiagonal();
  out.h.rowwise() += params.ln_mu.transpose();
  return out;
}

LayerState encoder_layer(const LayerState &state, const HierGraph &g,
                         const LayerParams &params, AttentionTrace *trace) {
  return layer_norm(
      ffn_bidirectional(bilevel_attention(state, g, params, trace), g, params),
      params);
}

}  // namespace fragtok

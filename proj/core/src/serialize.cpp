//
// fragtok - Copyright 2026 The fragtok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <bit>
#include <charconv>
#include <cstring>
#include <map>

#include "json.hpp"

#include "fragtok/attention.h"
#include "fragtok/error.h"
#include "fragtok/io.h"

namespace fragtok {
namespace {

using nlohmann::json;

// JSONL framing -----------------------------------------------------------------

struct Line {
  std::size_t offset = 0;
  std::string_view text;
};

std::vector<Line> nonblank_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos)
      end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (line.find_first_not_of(" \t\r") != std::string_view::npos)
      out.push_back({ pos, line });
    pos = end + 1;
  }
  return out;
}

Error corrupt(std::size_t offset, const std::string &msg) {
  return Error(ErrorCode::kCorruptRecord,
               "byte " + std::to_string(offset) + ": " + msg);
}

json parse_line(const Line &line) {
  try {
    json j = json::parse(line.text);
    if (!j.is_object())
      throw corrupt(line.offset, "record is not a JSON object");
    return j;
  } catch (const json::exception &e) {
    throw corrupt(line.offset, e.what());
  }
}

std::string dump_jsonl(const json &header, const std::vector<json> &records) {
  std::string out = header.dump();
  out += '\n';
  for (const json &r: records) {
    out += r.dump();
    out += '\n';
  }
  return out;
}

json make_header(std::string_view format, std::size_t count) {
  return json { { "format", format },
                { "version", kFormatVersion },
                { "count", count } };
}

/// Validates the header and splits off exactly `count` records.
struct Framed {
  json header;
  std::vector<Line> records;
};

Framed read_framed(std::string_view text, std::string_view format) {
  const auto lines = nonblank_lines(text);
  if (lines.empty())
    throw corrupt(0, "missing header");
  Framed f;
  f.header = parse_line(lines[0]);
  const auto fmt = f.header.find("format");
  if (fmt == f.header.end() || !fmt->is_string() || *fmt != format)
    throw corrupt(lines[0].offset,
                  "expected a '" + std::string(format) + "' header");
  const auto ver = f.header.find("version");
  if (ver == f.header.end() || !ver->is_number_integer())
    throw corrupt(lines[0].offset, "header has no version");
  if (ver->get<int>() != kFormatVersion)
    throw Error(ErrorCode::kVersionMismatch,
                std::string(format) + " version " + ver->dump()
                    + " is not supported (expected "
                    + std::to_string(kFormatVersion) + ")");
  const auto cnt = f.header.find("count");
  if (cnt == f.header.end() || !cnt->is_number_unsigned())
    throw corrupt(lines[0].offset, "header has no count");
  const std::size_t count = cnt->get<std::size_t>();
  if (lines.size() - 1 < count)
    throw corrupt(text.size(), "expected " + std::to_string(count)
                                   + " records, found "
                                   + std::to_string(lines.size() - 1));
  if (lines.size() - 1 > count)
    throw corrupt(lines[count + 1].offset, "unexpected record after count");
  f.records.assign(lines.begin() + 1, lines.end());
  return f;
}

/// Runs `fn` on each parsed record, converting JSON type errors into
/// kCorruptRecord at the record's offset.
template <typename T, typename Fn>
std::vector<T> decode_records(const Framed &f, Fn fn) {
  std::vector<T> out;
  out.reserve(f.records.size());
  for (const Line &line: f.records) {
    const json j = parse_line(line);
    try {
      out.push_back(fn(j));
    } catch (const json::exception &e) {
      throw corrupt(line.offset, e.what());
    } catch (const Error &e) {
      if (e.code() == ErrorCode::kCorruptRecord)
        throw;
      throw corrupt(line.offset, e.what());
    }
  }
  return out;
}

std::string_view role_name(EntityRole r) {
  return r == EntityRole::kPocket ? "pocket" : "ligand";
}

EntityRole role_from_name(const std::string &s) {
  if (s == "pocket")
    return EntityRole::kPocket;
  if (s == "ligand")
    return EntityRole::kLigand;
  throw Error(ErrorCode::kCorruptRecord, "unknown role '" + s + "'");
}

TokenKind kind_from_json(const json &j) {
  const auto kind = token_kind_from_name(j.get<std::string>());
  if (!kind)
    throw Error(ErrorCode::kCorruptRecord,
                "unknown token kind " + j.dump());
  return *kind;
}

void check_index(int v, std::size_t n, const char *what) {
  if (v < 0 || static_cast<std::size_t>(v) >= n)
    throw Error(ErrorCode::kCorruptRecord,
                std::string(what) + " index " + std::to_string(v)
                    + " out of range");
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

// Vocabulary --------------------------------------------------------------------

std::string write_vocabulary(const Vocabulary &vocab) {
  json header = make_header("fragtok-vocab", vocab.tokens().size());
  header["min_freq"] = vocab.min_freq();
  header["chiral"] = vocab.chiral();
  std::vector<json> records;
  for (const Token &t: vocab.tokens()) {
    records.push_back({ { "id", t.id },
                        { "kind", token_kind_name(t.kind) },
                        { "freq", t.frequency },
                        { "merge_chain", t.merge_chain } });
  }
  return dump_jsonl(header, records);
}

Vocabulary read_vocabulary(std::string_view text) {
  const Framed f = read_framed(text, "fragtok-vocab");
  std::int64_t min_freq = 0;
  bool chiral = true;
  try {
    min_freq = f.header.at("min_freq").get<std::int64_t>();
    chiral = f.header.value("chiral", true);
  } catch (const json::exception &e) {
    throw corrupt(0, e.what());
  }
  auto tokens = decode_records<Token>(f, [](const json &j) {
    Token t;
    t.id = j.at("id").get<std::string>();
    t.kind = kind_from_json(j.at("kind"));
    t.frequency = j.at("freq").get<std::int64_t>();
    t.merge_chain = j.value("merge_chain", std::vector<std::string> {});
    return t;
  });
  return Vocabulary(std::move(tokens), min_freq, chiral);
}

// Token graphs ------------------------------------------------------------------

std::string write_token_graphs(std::span<const TokenizedRecord> records) {
  std::vector<json> out;
  for (const TokenizedRecord &r: records) {
    json nodes = json::array();
    for (const TokenOccurrence &o: r.graph.nodes) {
      json node = { { "id", o.token_id },
                    { "kind", token_kind_name(o.kind) },
                    { "atoms", o.atoms } };
      if (!o.merged_from.empty())
        node["merged_from"] = o.merged_from;
      nodes.push_back(std::move(node));
    }
    json edges = json::array();
    for (const auto &[a, b]: r.graph.edges)
      edges.push_back({ a, b });
    out.push_back({ { "smiles", r.smiles },
                    { "num_atoms", r.graph.num_atoms },
                    { "nodes", std::move(nodes) },
                    { "edges", std::move(edges) } });
  }
  return dump_jsonl(make_header("fragtok-tokens", records.size()), out);
}

std::vector<TokenizedRecord> read_token_graphs(std::string_view text) {
  const Framed f = read_framed(text, "fragtok-tokens");
  return decode_records<TokenizedRecord>(f, [](const json &j) {
    TokenizedRecord r;
    r.smiles = j.at("smiles").get<std::string>();
    TokenGraph &g = r.graph;
    g.num_atoms = j.at("num_atoms").get<int>();
    if (g.num_atoms < 0)
      throw Error(ErrorCode::kCorruptRecord, "negative atom count");
    g.a2f.assign(static_cast<std::size_t>(g.num_atoms), {});
    for (const json &n: j.at("nodes")) {
      TokenOccurrence o;
      o.token_id = n.at("id").get<std::string>();
      o.kind = kind_from_json(n.at("kind"));
      o.atoms = n.at("atoms").get<std::vector<int>>();
      o.merged_from = n.value("merged_from", std::vector<std::string> {});
      for (int a: o.atoms) {
        check_index(a, g.a2f.size(), "atom");
        g.a2f[a].push_back(static_cast<int>(g.nodes.size()));
      }
      g.nodes.push_back(std::move(o));
    }
    for (const json &e: j.at("edges")) {
      const auto pair = e.get<std::vector<int>>();
      if (pair.size() != 2)
        throw Error(ErrorCode::kCorruptRecord, "edge must have two ends");
      check_index(pair[0], g.nodes.size(), "node");
      check_index(pair[1], g.nodes.size(), "node");
      g.edges.emplace_back(pair[0], pair[1]);
    }
    return r;
  });
}

// Hierarchical graphs -----------------------------------------------------------

std::string write_hier_graphs(std::span<const HierGraph> graphs) {
  std::vector<json> out;
  for (const HierGraph &g: graphs) {
    json atoms = json::array();
    for (const HierAtom &a: g.atoms) {
      json coords = a.coords ? json(*a.coords) : json(nullptr);
      atoms.push_back({ { "symbol", a.symbol },
                        { "pos", a.position_code },
                        { "coords", std::move(coords) },
                        { "role", role_name(a.role) },
                        { "global", a.global } });
    }
    json tokens = json::array();
    for (const HierToken &t: g.tokens) {
      tokens.push_back({ { "id", t.id },
                         { "role", role_name(t.role) },
                         { "global", t.global },
                         { "atoms", t.atoms } });
    }
    json token_edges = json::array();
    for (const TokenEdge &e: g.token_edges)
      token_edges.push_back({ e.receiver, e.sender, edge_type_name(e.type) });
    json atom_edges = json::array();
    for (const AtomEdge &e: g.atom_edges)
      atom_edges.push_back({ e.receiver, e.sender, e.parent });
    out.push_back({ { "k_token", g.k_token },
                    { "k_atom", g.k_atom },
                    { "atoms", std::move(atoms) },
                    { "tokens", std::move(tokens) },
                    { "token_edges", std::move(token_edges) },
                    { "atom_edges", std::move(atom_edges) } });
  }
  return dump_jsonl(make_header("fragtok-hiergraph", graphs.size()), out);
}

std::vector<HierGraph> read_hier_graphs(std::string_view text) {
  const Framed f = read_framed(text, "fragtok-hiergraph");
  return decode_records<HierGraph>(f, [](const json &j) {
    HierGraph g;
    g.k_token = j.at("k_token").get<int>();
    g.k_atom = j.at("k_atom").get<int>();
    for (const json &a: j.at("atoms")) {
      HierAtom atom;
      atom.symbol = a.at("symbol").get<std::string>();
      atom.position_code = a.at("pos").get<std::string>();
      if (!a.at("coords").is_null())
        atom.coords = a.at("coords").get<Vec3>();
      atom.role = role_from_name(a.at("role").get<std::string>());
      atom.global = a.at("global").get<bool>();
      g.atoms.push_back(std::move(atom));
    }
    for (const json &t: j.at("tokens")) {
      HierToken token;
      token.id = t.at("id").get<std::string>();
      token.role = role_from_name(t.at("role").get<std::string>());
      token.global = t.at("global").get<bool>();
      token.atoms = t.at("atoms").get<std::vector<int>>();
      for (int a: token.atoms)
        check_index(a, g.atoms.size(), "atom");
      g.tokens.push_back(std::move(token));
    }
    for (const json &e: j.at("token_edges")) {
      TokenEdge edge;
      edge.receiver = e.at(0).get<int>();
      edge.sender = e.at(1).get<int>();
      const auto type = edge_type_from_name(e.at(2).get<std::string>());
      if (!type)
        throw Error(ErrorCode::kCorruptRecord, "unknown edge type " + e.dump());
      edge.type = *type;
      check_index(edge.receiver, g.tokens.size(), "token");
      check_index(edge.sender, g.tokens.size(), "token");
      g.token_edges.push_back(edge);
    }
    for (const json &e: j.at("atom_edges")) {
      AtomEdge edge { e.at(0).get<int>(), e.at(1).get<int>(),
                      e.at(2).get<int>() };
      check_index(edge.receiver, g.atoms.size(), "atom");
      check_index(edge.sender, g.atoms.size(), "atom");
      check_index(edge.parent, g.token_edges.size(), "token edge");
      g.atom_edges.push_back(edge);
    }
    return g;
  });
}

// Embeddings --------------------------------------------------------------------

std::string write_embeddings(std::span<const LayerState> states) {
  json header = make_header("fragtok-embeddings", states.size());
  header["dim"] = states.empty() ? 0 : states.front().h.cols();
  std::vector<json> out;
  for (const LayerState &s: states) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < s.h.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < s.h.cols(); ++c)
        row.push_back(s.h(r, c));
      rows.push_back(std::move(row));
    }
    out.push_back({ { "h", std::move(rows) } });
  }
  return dump_jsonl(header, out);
}

std::vector<LayerState> read_embeddings(std::string_view text) {
  const Framed f = read_framed(text, "fragtok-embeddings");
  const Eigen::Index dim = f.header.value("dim", 0);
  return decode_records<LayerState>(f, [dim](const json &j) {
    const auto rows = j.at("h").get<std::vector<std::vector<double>>>();
    LayerState s;
    s.h.resize(static_cast<Eigen::Index>(rows.size()), dim);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (static_cast<Eigen::Index>(rows[r].size()) != dim)
        throw Error(ErrorCode::kCorruptRecord,
                    "row " + std::to_string(r) + " has the wrong width");
      for (Eigen::Index c = 0; c < dim; ++c)
        s.h(static_cast<Eigen::Index>(r), c) = rows[r][c];
    }
    return s;
  });
}

// Stats -------------------------------------------------------------------------

std::string write_corpus_stats(const CorpusStats &stats) {
  json j = { { "format", "fragtok-stats" },
             { "version", kFormatVersion },
             { "molecules", stats.molecules },
             { "occurrences", stats.occurrences },
             { "atoms", stats.atoms },
             { "avg_tokens_per_mol", stats.avg_tokens_per_mol },
             { "avg_atoms_per_token", stats.avg_atoms_per_token },
             { "overlap_factor", stats.overlap_factor },
             { "vocab_histogram", stats.vocab_histogram } };
  return j.dump(2) + "\n";
}

// libsvm ------------------------------------------------------------------------

std::string write_features(std::span<const FeatureRecord> records, int dim) {
  std::string out = "# fragtok-features version="
                    + std::to_string(kFormatVersion) + " dim="
                    + std::to_string(dim) + " count="
                    + std::to_string(records.size()) + "\n";
  for (const FeatureRecord &r: records) {
    out += format_double(r.label);
    for (std::size_t i = 0; i < r.features.indices.size(); ++i) {
      out += ' ';
      out += std::to_string(r.features.indices[i] + 1);
      out += ':';
      out += std::to_string(r.features.counts[i]);
    }
    out += '\n';
  }
  return out;
}

std::vector<FeatureRecord> read_features(std::string_view text) {
  const auto lines = nonblank_lines(text);
  constexpr std::string_view kPrefix = "# fragtok-features ";
  if (lines.empty() || !lines[0].text.starts_with(kPrefix))
    throw corrupt(0, "missing fragtok-features header");

  std::map<std::string, long long, std::less<>> fields;
  std::string_view rest = lines[0].text.substr(kPrefix.size());
  while (!rest.empty()) {
    const std::size_t sp = rest.find(' ');
    const std::string_view kv = rest.substr(0, sp);
    rest = sp == std::string_view::npos ? std::string_view {}
                                        : rest.substr(sp + 1);
    const std::size_t eq = kv.find('=');
    if (eq == std::string_view::npos)
      continue;
    long long v = 0;
    const auto val = kv.substr(eq + 1);
    if (std::from_chars(val.data(), val.data() + val.size(), v).ec
        != std::errc())
      throw corrupt(0, "bad header field '" + std::string(kv) + "'");
    fields[std::string(kv.substr(0, eq))] = v;
  }
  if (!fields.contains("version") || !fields.contains("dim")
      || !fields.contains("count"))
    throw corrupt(0, "header needs version, dim and count");
  if (fields["version"] != kFormatVersion)
    throw Error(ErrorCode::kVersionMismatch,
                "features version " + std::to_string(fields["version"])
                    + " is not supported");
  const int dim = static_cast<int>(fields["dim"]);
  const auto count = static_cast<std::size_t>(fields["count"]);
  if (lines.size() - 1 != count)
    throw corrupt(text.size(), "expected " + std::to_string(count)
                                   + " records, found "
                                   + std::to_string(lines.size() - 1));

  std::vector<FeatureRecord> out;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const Line &line = lines[li];
    std::string_view s = line.text;
    if (!s.empty() && s.back() == '\r')
      s.remove_suffix(1);
    FeatureRecord rec;
    rec.features.dim = dim;
    std::size_t sp = s.find(' ');
    const std::string_view label = s.substr(0, sp);
    if (std::from_chars(label.data(), label.data() + label.size(), rec.label)
            .ptr
        != label.data() + label.size())
      throw corrupt(line.offset, "bad label");
    while (sp != std::string_view::npos) {
      s = s.substr(sp + 1);
      sp = s.find(' ');
      const std::string_view item = s.substr(0, sp);
      if (item.empty())
        continue;
      const std::size_t colon = item.find(':');
      int col = 0;
      std::int64_t cnt = 0;
      if (colon == std::string_view::npos
          || std::from_chars(item.data(), item.data() + colon, col).ptr
                 != item.data() + colon
          || std::from_chars(item.data() + colon + 1,
                             item.data() + item.size(), cnt)
                     .ptr
                 != item.data() + item.size())
        throw corrupt(line.offset, "bad item '" + std::string(item) + "'");
      if (col < 1 || col > dim || cnt < 1
          || (!rec.features.indices.empty()
              && col - 1 <= rec.features.indices.back()))
        throw corrupt(line.offset, "invalid item '" + std::string(item) + "'");
      rec.features.indices.push_back(col - 1);
      rec.features.counts.push_back(cnt);
    }
    out.push_back(std::move(rec));
  }
  return out;
}

// Parameters --------------------------------------------------------------------

namespace {

constexpr std::uint32_t kParamsVersion = 1;

class ByteWriter {
public:
  void raw(const void *p, std::size_t n) {
    out_.append(static_cast<const char *>(p), n);
  }
  void u32(std::uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i)
      b[i] = static_cast<unsigned char>(v >> (8 * i));
    raw(b, 4);
  }
  void f64(double v) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    unsigned char b[8];
    for (int i = 0; i < 8; ++i)
      b[i] = static_cast<unsigned char>(bits >> (8 * i));
    raw(b, 8);
  }
  void str(std::string_view s) {
    u32(static_cast<std::uint32_t>(s.size()));
    raw(s.data(), s.size());
  }
  std::string take() { return std::move(out_); }

private:
  std::string out_;
};

class ByteReader {
public:
  explicit ByteReader(std::string_view in) : in_(in) {}

  std::size_t offset() const { return pos_; }
  bool done() const { return pos_ == in_.size(); }

  std::string_view raw(std::size_t n) {
    if (in_.size() - pos_ < n)
      throw corrupt(pos_, "unexpected end of parameter file");
    const auto s = in_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  std::uint32_t u32() {
    const auto s = raw(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
      v |= static_cast<std::uint32_t>(static_cast<unsigned char>(s[i]))
           << (8 * i);
    return v;
  }
  double f64() {
    const auto s = raw(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(s[i]))
           << (8 * i);
    return std::bit_cast<double>(v);
  }
  std::string str() { return std::string(raw(u32())); }

private:
  std::string_view in_;
  std::size_t pos_ = 0;
};

struct TensorRef {
  const char *name;
  Eigen::MatrixXd *matrix = nullptr;
  Eigen::VectorXd *vector = nullptr;
};

std::vector<TensorRef> tensors_of(LayerParams &p) {
  return {
    { "atom_types", &p.atom_types.rows },
    { "token_types", &p.token_types.rows },
    { "position_codes", &p.position_codes.rows },
    { "w_q", &p.w_q },
    { "w_k", &p.w_k },
    { "w_v", &p.w_v },
    { "b_q", nullptr, &p.b_q },
    { "b_k", nullptr, &p.b_k },
    { "b_v", nullptr, &p.b_v },
    { "edge_types", &p.edge_types },
    { "score_w1", &p.score_w1 },
    { "score_b1", nullptr, &p.score_b1 },
    { "score_w2", &p.score_w2 },
    { "score_b2", nullptr, &p.score_b2 },
    { "w_alpha", nullptr, &p.w_alpha },
    { "w_beta", nullptr, &p.w_beta },
    { "msg_w1", &p.msg_w1 },
    { "msg_b1", nullptr, &p.msg_b1 },
    { "msg_w2", &p.msg_w2 },
    { "msg_b2", nullptr, &p.msg_b2 },
    { "ffn_w1", &p.ffn_w1 },
    { "ffn_b1", nullptr, &p.ffn_b1 },
    { "ffn_w2", &p.ffn_w2 },
    { "ffn_b2", nullptr, &p.ffn_b2 },
    { "ln_sigma", nullptr, &p.ln_sigma },
    { "ln_mu", nullptr, &p.ln_mu },
    { "rbf_centers", nullptr, &p.rbf_centers },
  };
}

}  // namespace

std::string serialize_params(const LayerParams &params) {
  params.validate();
  LayerParams &p = const_cast<LayerParams &>(params);
  ByteWriter w;
  w.raw("FTKP", 4);
  w.u32(kParamsVersion);

  const LayerConfig &c = p.config;
  Eigen::MatrixXd config(1, 6);
  config << c.dim, c.hidden, c.rbf_size, c.rbf_max, c.ln_eps, p.rbf_width;

  auto tensors = tensors_of(p);
  w.u32(static_cast<std::uint32_t>(tensors.size() + 1));
  auto put = [&w](std::string_view name, const Eigen::MatrixXd &m) {
    w.str(name);
    w.u32(static_cast<std::uint32_t>(m.rows()));
    w.u32(static_cast<std::uint32_t>(m.cols()));
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index col = 0; col < m.cols(); ++col)
        w.f64(m(r, col));
  };
  put("config", config);
  for (const TensorRef &t: tensors)
    put(t.name, t.matrix ? *t.matrix : Eigen::MatrixXd(*t.vector));

  const std::pair<const char *, const SymbolTable *> lists[] = {
    { "atom_types", &p.atom_types },
    { "token_types", &p.token_types },
    { "position_codes", &p.position_codes },
  };
  w.u32(3);
  for (const auto &[name, table]: lists) {
    w.str(name);
    w.u32(static_cast<std::uint32_t>(table->symbols.size()));
    for (const std::string &s: table->symbols)
      w.str(s);
  }
  return w.take();
}

LayerParams deserialize_params(std::string_view bytes) {
  ByteReader r(bytes);
  if (r.raw(4) != "FTKP")
    throw corrupt(0, "not a fragtok parameter file");
  const std::uint32_t version = r.u32();
  if (version != kParamsVersion)
    throw Error(ErrorCode::kVersionMismatch,
                "parameter file version " + std::to_string(version)
                    + " is not supported");

  std::map<std::string, Eigen::MatrixXd> tensors;
  const std::uint32_t n_tensors = r.u32();
  for (std::uint32_t i = 0; i < n_tensors; ++i) {
    const std::size_t at = r.offset();
    std::string name = r.str();
    const std::uint32_t rows = r.u32();
    const std::uint32_t cols = r.u32();
    if (static_cast<std::uint64_t>(rows) * cols * 8
        > bytes.size() - r.offset())
      throw corrupt(at, "tensor '" + name + "' runs past the end");
    Eigen::MatrixXd m(rows, cols);
    for (std::uint32_t a = 0; a < rows; ++a)
      for (std::uint32_t b = 0; b < cols; ++b)
        m(a, b) = r.f64();
    if (!tensors.emplace(name, std::move(m)).second)
      throw corrupt(at, "duplicate tensor '" + name + "'");
  }
  std::map<std::string, std::vector<std::string>> lists;
  const std::uint32_t n_lists = r.u32();
  for (std::uint32_t i = 0; i < n_lists; ++i) {
    std::string name = r.str();
    const std::uint32_t n = r.u32();
    std::vector<std::string> symbols;
    for (std::uint32_t k = 0; k < n; ++k)
      symbols.push_back(r.str());
    lists[name] = std::move(symbols);
  }
  if (!r.done())
    throw corrupt(r.offset(), "trailing bytes after parameters");

  auto take = [&](const std::string &name) -> Eigen::MatrixXd & {
    const auto it = tensors.find(name);
    if (it == tensors.end())
      throw corrupt(bytes.size(), "missing tensor '" + name + "'");
    return it->second;
  };

  LayerParams p;
  const Eigen::MatrixXd &config = take("config");
  if (config.size() != 6)
    throw Error(ErrorCode::kShapeMismatch, "config tensor must have 6 entries");
  p.config.dim = static_cast<int>(config(0));
  p.config.hidden = static_cast<int>(config(1));
  p.config.rbf_size = static_cast<int>(config(2));
  p.config.rbf_max = config(3);
  p.config.ln_eps = config(4);
  p.rbf_width = config(5);

  for (const TensorRef &t: tensors_of(p)) {
    Eigen::MatrixXd &m = take(t.name);
    if (t.matrix) {
      *t.matrix = std::move(m);
    } else {
      if (m.cols() != 1)
        throw Error(ErrorCode::kShapeMismatch,
                    std::string("tensor '") + t.name + "' must be a vector");
      *t.vector = m.col(0);
    }
  }
  for (auto [name, table]:
       { std::pair { "atom_types", &p.atom_types },
         std::pair { "token_types", &p.token_types },
         std::pair { "position_codes", &p.position_codes } }) {
    const auto it = lists.find(name);
    if (it == lists.end())
      throw corrupt(bytes.size(), std::string("missing symbol list '") + name
                                      + "'");
    table->symbols = it->second;
  }
  p.validate();
  return p;
}

}  // namespace fragtok

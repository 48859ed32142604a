//
// fragtok - Copyright 2026 The fragtok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef FRAGTOK_IO_H_
#define FRAGTOK_IO_H_

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fragtok/attention.h"
#include "fragtok/features.h"
#include "fragtok/hiergraph.h"
#include "fragtok/molecule.h"
#include "fragtok/tokenizer.h"

namespace fragtok {

inline constexpr int kFormatVersion = 1;

// Corpus ----------------------------------------------------------------------

struct CorpusRecord {
  int line = 0;  // 1-based line in the .smi file
  std::string smiles;
  std::optional<double> label;
  std::string title;  // second column when it is not a number
  std::optional<std::vector<Vec3>> coords;  // parse order
  MoleculeGraph molecule;  // coords attached when present
};

struct CorpusWarning {
  int line = 0;
  std::string message;
};

struct Corpus {
  std::vector<CorpusRecord> records;
  std::vector<CorpusWarning> warnings;
};

/// One XYZ frame; the comment line carries the .smi line it belongs to.
struct XyzFrame {
  int smi_line = 0;
  std::vector<std::string> elements;
  std::vector<Vec3> coords;
};

/// Frames of a multi-frame XYZ text. Throws kCorruptRecord.
std::vector<XyzFrame> parse_xyz(std::string_view text);

/// `.smi` lines are "SMILES [label-or-title]"; blank lines and lines starting
/// with '#' are skipped. Unparseable SMILES become warnings. An optional XYZ
/// sidecar supplies coordinates; frames whose atom count or elements do not
/// match are dropped with a warning.
/// Throws kFileNotFound and kEncodingError (non-ASCII input).
Corpus read_corpus(const std::filesystem::path &smi,
                   const std::optional<std::filesystem::path> &xyz = {});
Corpus parse_corpus(std::string_view smi_text,
                    std::optional<std::string_view> xyz_text = {});

/// Attaches coordinates in parse order. Throws kMalformedRecord when the
/// frame does not match the molecule's atoms.
void attach_coords(MoleculeGraph &mol, const XyzFrame &frame);

// Files -----------------------------------------------------------------------

/// Throws kFileNotFound.
std::string read_file(const std::filesystem::path &path);
/// Writes through a temporary file renamed into place.
void write_file(const std::filesystem::path &path, std::string_view bytes);

// Artifacts -------------------------------------------------------------------
//
// Line-delimited JSON with a header line
//   {"format": ..., "version": 1, "count": N, ...}
// followed by N records. Readers validate the header before building any
// state (kVersionMismatch) and report malformed or missing records with their
// byte offset (kCorruptRecord).

std::string write_vocabulary(const Vocabulary &vocab);
Vocabulary read_vocabulary(std::string_view text);

struct TokenizedRecord {
  std::string smiles;
  TokenGraph graph;

  bool operator==(const TokenizedRecord &) const = default;
};
std::string write_token_graphs(std::span<const TokenizedRecord> records);
/// Needs no molecule: a2f is rebuilt from node atom lists.
std::vector<TokenizedRecord> read_token_graphs(std::string_view text);

std::string write_hier_graphs(std::span<const HierGraph> graphs);
std::vector<HierGraph> read_hier_graphs(std::string_view text);

std::string write_embeddings(std::span<const LayerState> states);
std::vector<LayerState> read_embeddings(std::string_view text);

std::string write_corpus_stats(const CorpusStats &stats);

/// libsvm text: a "# fragtok-features version=1 dim=N count=M" comment line,
/// then "label col:count ..." with 1-based columns.
struct FeatureRecord {
  double label = 0;
  FeatureVector features;

  bool operator==(const FeatureRecord &) const = default;
};
std::string write_features(std::span<const FeatureRecord> records, int dim);
std::vector<FeatureRecord> read_features(std::string_view text);

}  // namespace fragtok

#endif  // FRAGTOK_IO_H_

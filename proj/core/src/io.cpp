//
// fragtok - Copyright 2026 The fragtok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "fragtok/io.h"

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "fragtok/error.h"
#include "fragtok/smiles.h"

namespace fragtok {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos)
      end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r')
      line.remove_suffix(1);
    lines.push_back(line);
    pos = end + 1;
  }
  return lines;
}

std::vector<std::string_view> split_fields(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
      ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])))
      ++j;
    if (j > i)
      out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::optional<double> parse_double(std::string_view s) {
  double v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    return std::nullopt;
  return v;
}

void check_ascii(std::string_view text, const std::string &what) {
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (static_cast<unsigned char>(text[i]) > 127)
      throw Error(ErrorCode::kEncodingError,
                  what + ": non-ASCII byte at offset " + std::to_string(i));
  }
}

}  // namespace

std::vector<XyzFrame> parse_xyz(std::string_view text) {
  const auto lines = split_lines(text);
  std::vector<XyzFrame> frames;
  std::size_t i = 0;
  auto fail = [](std::size_t line, const std::string &msg) {
    return Error(ErrorCode::kCorruptRecord,
                 "xyz line " + std::to_string(line + 1) + ": " + msg);
  };
  while (i < lines.size()) {
    if (trim(lines[i]).empty()) {
      ++i;
      continue;
    }
    const std::string_view count_field = trim(lines[i]);
    int count = 0;
    const auto [ptr, ec] = std::from_chars(
        count_field.data(), count_field.data() + count_field.size(), count);
    if (ec != std::errc() || ptr != count_field.data() + count_field.size()
        || count < 0)
      throw fail(i, "expected an atom count");
    if (i + 1 >= lines.size())
      throw fail(i, "missing comment line");

    XyzFrame frame;
    const std::string_view comment = lines[i + 1];
    const auto digit = std::find_if(comment.begin(), comment.end(), [](char c) {
      return std::isdigit(static_cast<unsigned char>(c));
    });
    if (digit == comment.end())
      throw fail(i + 1, "comment must name the .smi line number");
    std::from_chars(&*digit, comment.data() + comment.size(), frame.smi_line);

    if (i + 2 + static_cast<std::size_t>(count) > lines.size())
      throw fail(lines.size(), "frame truncated");
    for (int a = 0; a < count; ++a) {
      const std::size_t ln = i + 2 + static_cast<std::size_t>(a);
      const auto fields = split_fields(lines[ln]);
      if (fields.size() < 4)
        throw fail(ln, "expected 'element x y z'");
      Vec3 xyz {};
      for (int k = 0; k < 3; ++k) {
        const auto v = parse_double(fields[k + 1]);
        if (!v)
          throw fail(ln, "bad coordinate");
        xyz[k] = *v;
      }
      frame.elements.emplace_back(fields[0]);
      frame.coords.push_back(xyz);
    }
    frames.push_back(std::move(frame));
    i += 2 + static_cast<std::size_t>(count);
  }
  return frames;
}

void attach_coords(MoleculeGraph &mol, const XyzFrame &frame) {
  if (static_cast<int>(frame.coords.size()) != mol.num_atoms())
    throw Error(ErrorCode::kMalformedRecord,
                "frame has " + std::to_string(frame.coords.size())
                    + " atoms, molecule has " + std::to_string(mol.num_atoms()));
  for (int i = 0; i < mol.num_atoms(); ++i) {
    std::string sym = frame.elements[i];
    for (std::size_t k = 0; k < sym.size(); ++k)
      sym[k] = static_cast<char>(
          k == 0 ? std::toupper(static_cast<unsigned char>(sym[k]))
                 : std::tolower(static_cast<unsigned char>(sym[k])));
    if (element_from_symbol(sym) != mol.atom(i).element)
      throw Error(ErrorCode::kMalformedRecord,
                  "frame atom " + std::to_string(i) + " is " + frame.elements[i]
                      + ", molecule atom is "
                      + std::string(element_symbol(mol.atom(i).element)));
  }
  for (int i = 0; i < mol.num_atoms(); ++i)
    mol.atom(i).coords = frame.coords[i];
}

Corpus parse_corpus(std::string_view smi_text,
                    std::optional<std::string_view> xyz_text) {
  check_ascii(smi_text, "corpus");
  Corpus corpus;
  const auto lines = split_lines(smi_text);
  std::map<int, std::size_t> by_line;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const int line_no = static_cast<int>(i) + 1;
    const std::string_view line = trim(lines[i]);
    if (line.empty() || line.front() == '#')
      continue;
    const auto fields = split_fields(line);
    CorpusRecord rec;
    rec.line = line_no;
    rec.smiles = std::string(fields[0]);
    if (fields.size() > 1) {
      const std::string_view rest =
          trim(line.substr(fields[1].data() - line.data()));
      if (const auto v = parse_double(rest))
        rec.label = *v;
      else
        rec.title = std::string(rest);
    }
    try {
      rec.molecule = parse_smiles(rec.smiles);
    } catch (const Error &e) {
      corpus.warnings.push_back({ line_no, e.what() });
      continue;
    }
    by_line.emplace(line_no, corpus.records.size());
    corpus.records.push_back(std::move(rec));
  }

  if (xyz_text) {
    check_ascii(*xyz_text, "coordinates");
    for (const XyzFrame &frame: parse_xyz(*xyz_text)) {
      const auto it = by_line.find(frame.smi_line);
      if (it == by_line.end()) {
        corpus.warnings.push_back(
            { frame.smi_line, "coordinates for a line without a molecule" });
        continue;
      }
      CorpusRecord &rec = corpus.records[it->second];
      if (rec.coords) {
        corpus.warnings.push_back(
            { frame.smi_line, "duplicate coordinate frame ignored" });
        continue;
      }
      MoleculeGraph with_coords = rec.molecule;
      try {
        attach_coords(with_coords, frame);
      } catch (const Error &e) {
        corpus.warnings.push_back(
            { frame.smi_line, std::string("coordinates dropped: ") + e.what() });
        continue;
      }
      rec.molecule = std::move(with_coords);
      rec.coords = frame.coords;
    }
  }
  return corpus;
}

Corpus read_corpus(const std::filesystem::path &smi,
                   const std::optional<std::filesystem::path> &xyz) {
  const std::string smi_text = read_file(smi);
  if (!xyz)
    return parse_corpus(smi_text);
  const std::string xyz_text = read_file(*xyz);
  return parse_corpus(smi_text, xyz_text);
}

std::string read_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorCode::kFileNotFound, "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path &path, std::string_view bytes) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
      throw Error(ErrorCode::kFileNotFound,
                  "cannot write '" + path.string() + "'");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out)
      throw Error(ErrorCode::kFileNotFound,
                  "write to '" + path.string() + "' failed");
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace fragtok

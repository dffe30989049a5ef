#include "paircover/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace paircover {

namespace {

std::vector<std::string> tokenize(const std::string& s) {
  std::vector<std::string> tokens;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

int parse_int(const std::string& token, int line) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size())
    throw format_error(line, "invalid integer '" + token + "'");
  return value;
}

block_tag parse_annotation(const std::string& comment, int line) {
  const auto tokens = tokenize(comment);
  if (tokens.size() == 2 && tokens[0] == "base") {
    const int i = parse_int(tokens[1], line);
    if (i < 1) throw format_error(line, "malformed structure annotation: base index must be >= 1");
    return base_tag{i};
  }
  if (tokens.size() == 4 && tokens[0] == "recomb") {
    const int m = parse_int(tokens[1], line);
    const int u = parse_int(tokens[2], line);
    const int v = parse_int(tokens[3], line);
    if (m < 1) throw format_error(line, "malformed structure annotation: pair index must be >= 1");
    if (u < 1 || u > 2 || v < 1 || v > 2)
      throw format_error(line, "malformed structure annotation: half labels must be 1 or 2");
    return recomb_tag{m, u, v};
  }
  throw format_error(line, "malformed structure annotation '" + comment + "'");
}

}  // namespace

std::string write_design(const design_family& fam) {
  validate_family(fam);
  std::ostringstream out;
  out << fam.n << ' ' << fam.k << ' ' << fam.blocks.size() << '\n';
  for (std::size_t i = 0; i < fam.blocks.size(); ++i) {
    const block& b = fam.blocks[i];
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (j > 0) out << ' ';
      out << b[j];
    }
    if (fam.structure) {
      const block_tag& tag = (*fam.structure)[i];
      if (const auto* bt = std::get_if<base_tag>(&tag))
        out << " # base " << bt->index;
      else {
        const auto& rt = std::get<recomb_tag>(tag);
        out << " # recomb " << rt.pair << ' ' << rt.left_half << ' ' << rt.right_half;
      }
    }
    out << '\n';
  }
  return out.str();
}

design_family read_design(const std::string& text) {
  design_family fam;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool have_header = false;
  int expected_blocks = 0;
  std::vector<block_tag> tags;
  std::vector<int> untagged_lines;

  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;       // blank
    if (line[first] == '#') continue;               // full-line comment
    std::string content = line;
    std::string comment;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      content = line.substr(0, hash);
      comment = line.substr(hash + 1);
    }
    const auto tokens = tokenize(content);

    if (!have_header) {
      if (tokens.size() != 3)
        throw format_error(lineno, "header must be 'n k b', found " +
                                       std::to_string(tokens.size()) + " fields");
      fam.n = parse_int(tokens[0], lineno);
      fam.k = parse_int(tokens[1], lineno);
      expected_blocks = parse_int(tokens[2], lineno);
      if (fam.n < 1) throw format_error(lineno, "ground set size must be >= 1");
      if (fam.k < 1 || fam.k > fam.n)
        throw format_error(lineno, "block size must satisfy 1 <= k <= n");
      if (expected_blocks < 0) throw format_error(lineno, "block count must be >= 0");
      have_header = true;
      continue;
    }

    if (static_cast<int>(fam.blocks.size()) == expected_blocks)
      throw format_error(lineno, "unexpected content after " +
                                     std::to_string(expected_blocks) + " blocks");
    if (static_cast<int>(tokens.size()) != fam.k)
      throw format_error(lineno, "expected " + std::to_string(fam.k) +
                                     " members, found " + std::to_string(tokens.size()));
    block b(fam.k);
    for (int j = 0; j < fam.k; ++j) {
      b[j] = parse_int(tokens[j], lineno);
      if (b[j] < 1 || b[j] > fam.n)
        throw format_error(lineno, "element " + std::to_string(b[j]) +
                                       " out of range [1, " + std::to_string(fam.n) + "]");
      if (j > 0) {
        if (b[j] == b[j - 1])
          throw format_error(lineno, "duplicate member " + std::to_string(b[j]));
        if (b[j] < b[j - 1])
          throw format_error(lineno, "members not in ascending order");
      }
    }
    fam.blocks.push_back(std::move(b));
    if (!comment.empty() && !tokenize(comment).empty())
      tags.push_back(parse_annotation(comment, lineno));
    else
      untagged_lines.push_back(lineno);
  }

  if (!have_header) throw format_error(lineno + 1, "missing header");
  if (static_cast<int>(fam.blocks.size()) != expected_blocks)
    throw format_error(lineno + 1, "expected " + std::to_string(expected_blocks) +
                                       " block lines, found " +
                                       std::to_string(fam.blocks.size()));
  if (!tags.empty()) {
    if (!untagged_lines.empty())
      throw format_error(untagged_lines.front(),
                         "structure annotations incomplete: block lacks one");
    fam.structure = std::move(tags);
  }
  validate_family(fam);
  return fam;
}

design_family read_design_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("cannot open design file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return read_design(buf.str());
}

void write_design_file(const design_family& fam, const std::filesystem::path& path) {
  const std::string text = write_design(fam);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw error("cannot open output file: " + path.string());
  out << text;
  if (!out) throw error("failed writing design file: " + path.string());
}

}  // namespace paircover

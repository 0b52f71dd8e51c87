#include "iposets/io.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "iposets/algebra.hpp"

namespace iposets {

namespace {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(&in) {}

  // Next non-blank line, split into whitespace tokens.
  bool next(std::vector<std::string>& tokens) {
    std::string line;
    while (std::getline(*in_, line)) {
      ++line_no_;
      tokens.clear();
      std::istringstream split(line);
      std::string tok;
      while (split >> tok) {
        tokens.push_back(tok);
      }
      if (!tokens.empty()) {
        return true;
      }
    }
    return false;
  }

  int line_no() const { return line_no_; }

 private:
  std::istream* in_;
  int line_no_ = 0;
};

[[noreturn]] void parse_fail(const LineReader& reader, const std::string& what) {
  throw_error(Errc::ParseError,
              "line " + std::to_string(reader.line_no()) + ": " + what);
}

int parse_int(const LineReader& reader, const std::string& tok) {
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(tok, &used);
  } catch (const std::exception&) {
    parse_fail(reader, "expected an integer, got '" + tok + "'");
  }
  if (used != tok.size() || value < 0) {
    parse_fail(reader, "expected a non-negative integer, got '" + tok + "'");
  }
  return value;
}

std::vector<int> parse_index_list(const LineReader& reader,
                                  const std::vector<std::string>& tokens) {
  std::vector<int> out;
  out.reserve(tokens.size() - 1);
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    out.push_back(parse_int(reader, tokens[i]));
  }
  return out;
}

}  // namespace

Iposet read_ipos(std::istream& in) {
  LineReader reader(in);
  std::vector<std::string> tokens;

  if (!reader.next(tokens) || tokens.size() != 2 || tokens[0] != "ipos" ||
      tokens[1] != "v1") {
    parse_fail(reader, "expected header 'ipos v1'");
  }
  if (!reader.next(tokens) || tokens.size() != 2 || tokens[0] != "points") {
    parse_fail(reader, "expected 'points <n>'");
  }
  int n = parse_int(reader, tokens[1]);
  if (n > kMaxPoints) {
    parse_fail(reader, "points " + std::to_string(n) + " exceeds the limit " +
                           std::to_string(kMaxPoints));
  }
  if (!reader.next(tokens) || tokens[0] != "source") {
    parse_fail(reader, "expected 'source <i...>'");
  }
  std::vector<int> sources = parse_index_list(reader, tokens);
  if (!reader.next(tokens) || tokens[0] != "target") {
    parse_fail(reader, "expected 'target <j...>'");
  }
  std::vector<int> targets = parse_index_list(reader, tokens);
  if (!reader.next(tokens) || tokens.size() != 1 || tokens[0] != "rel") {
    parse_fail(reader, "expected 'rel'");
  }

  std::vector<std::pair<int, int>> rel;
  for (;;) {
    if (!reader.next(tokens)) {
      parse_fail(reader, "missing 'end'");
    }
    if (tokens.size() == 1 && tokens[0] == "end") {
      break;
    }
    if (tokens.size() != 2) {
      parse_fail(reader, "expected '<a> <b>' or 'end'");
    }
    rel.emplace_back(parse_int(reader, tokens[0]),
                     parse_int(reader, tokens[1]));
  }
  if (reader.next(tokens)) {
    parse_fail(reader, "unexpected content after 'end'");
  }
  return Iposet::make(n, rel, sources, targets);
}

Iposet read_ipos_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw_error(Errc::ParseError, "cannot open '" + path + "'");
  }
  try {
    return read_ipos(in);
  } catch (const IposetError& e) {
    throw IposetError(e.code(), path + ": " + e.what());
  }
}

Iposet read_ipos_string(const std::string& text) {
  std::istringstream in(text);
  return read_ipos(in);
}

void write_ipos(std::ostream& out, const Iposet& p) {
  Iposet canon = canonical_representative(p);
  out << "ipos v1\n";
  out << "points " << canon.size() << "\n";
  out << "source";
  for (int i : canon.sources()) {
    out << ' ' << i;
  }
  out << "\n";
  out << "target";
  for (int i : canon.targets()) {
    out << ' ' << i;
  }
  out << "\n";
  out << "rel\n";
  for (int i = 0; i < canon.size(); ++i) {
    for (int j = 0; j < canon.size(); ++j) {
      if (canon.less(i, j)) {
        out << i << ' ' << j << "\n";
      }
    }
  }
  out << "end\n";
}

void write_ipos_file(const std::string& path, const Iposet& p) {
  std::ofstream out(path);
  if (!out) {
    throw_error(Errc::ParseError, "cannot open '" + path + "' for writing");
  }
  write_ipos(out, p);
  out.flush();
  if (!out) {
    throw_error(Errc::ParseError, "failed writing '" + path + "'");
  }
}

std::string write_ipos_string(const Iposet& p) {
  std::ostringstream out;
  write_ipos(out, p);
  return out.str();
}

}  // namespace iposets

#include "fiberwalk/move.hpp"

#include <fstream>
#include <sstream>

namespace fiberwalk {

std::string to_text(const LatticeBasis& basis) {
  std::ostringstream out;
  for (const Move& m : basis) {
    for (int i = 0; i < m.dimension(); ++i) {
      if (i) out << ' ';
      out << m.z[i];
    }
    out << '\n';
  }
  return out.str();
}

std::vector<Move> parse_moves_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<Move> moves;
  std::string line;
  int lineno = 0;
  int dimension = -1;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream row(line);
    std::vector<Int> z;
    Int v;
    while (row >> v) z.push_back(v);
    if (!row.eof())
      throw ParseError("invalid integer in move file", lineno);
    if (z.empty()) continue;  // blank lines are ignored
    if (dimension < 0)
      dimension = static_cast<int>(z.size());
    else if (static_cast<int>(z.size()) != dimension)
      throw ParseError("expected " + std::to_string(dimension) +
                           " entries, found " + std::to_string(z.size()),
                       lineno);
    moves.emplace_back(std::move(z));
  }
  return moves;
}

std::vector<Move> read_moves_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_moves_text(buf.str());
}

void write_moves_file(const std::filesystem::path& path,
                      const LatticeBasis& basis) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << to_text(basis);
}

}  // namespace fiberwalk

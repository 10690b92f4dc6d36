#include "fiberwalk/int_matrix.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace fiberwalk {

Int checked_add(Int a, Int b) {
  Int out;
  if (__builtin_add_overflow(a, b, &out))
    throw OverflowError("integer overflow in addition");
  return out;
}

Int checked_sub(Int a, Int b) {
  Int out;
  if (__builtin_sub_overflow(a, b, &out))
    throw OverflowError("integer overflow in subtraction");
  return out;
}

Int checked_mul(Int a, Int b) {
  Int out;
  if (__builtin_mul_overflow(a, b, &out))
    throw OverflowError("integer overflow in multiplication");
  return out;
}

Int checked_neg(Int a) {
  if (a == std::numeric_limits<Int>::min())
    throw OverflowError("integer overflow in negation");
  return -a;
}

Int floor_div(Int a, Int b) {
  Int q = a / b;
  Int r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

Xgcd extended_gcd(Int a, Int b) {
  // Invariant: old_r = old_s*a + old_t*b and r = s*a + t*b.
  Int old_r = a, r = b;
  Int old_s = 1, s = 0;
  Int old_t = 0, t = 1;
  while (r != 0) {
    Int q = old_r / r;
    Int tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_r = checked_neg(old_r);
    old_s = checked_neg(old_s);
    old_t = checked_neg(old_t);
  }
  return {old_r, old_s, old_t};
}

IntMatrix::IntMatrix(int rows, int cols)
    : rows_(rows),
      cols_(cols),
      entries_(static_cast<std::size_t>(rows) * cols, 0) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("negative dimension");
}

IntMatrix::IntMatrix(int rows, int cols, std::vector<Int> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("negative dimension");
  if (entries_.size() != static_cast<std::size_t>(rows) * cols)
    throw std::invalid_argument("entry count does not match dimensions");
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(
    std::initializer_list<std::initializer_list<Int>> rows) {
  int nr = static_cast<int>(rows.size());
  int nc = nr == 0 ? 0 : static_cast<int>(rows.begin()->size());
  IntMatrix m(nr, nc);
  int r = 0;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != nc)
      throw std::invalid_argument("ragged rows");
    int c = 0;
    for (Int v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

std::vector<Int> IntMatrix::column(int c) const {
  std::vector<Int> out(rows_);
  for (int r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

bool IntMatrix::is_zero() const {
  for (Int v : entries_)
    if (v != 0) return false;
  return true;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntMatrix IntMatrix::times(const IntMatrix& other) const {
  if (cols_ != other.rows_) throw std::invalid_argument("dimension mismatch");
  IntMatrix out(rows_, other.cols_);
  for (int r = 0; r < rows_; ++r)
    for (int k = 0; k < cols_; ++k) {
      Int a = (*this)(r, k);
      if (a == 0) continue;
      for (int c = 0; c < other.cols_; ++c)
        out(r, c) = checked_add(out(r, c), checked_mul(a, other(k, c)));
    }
  return out;
}

std::vector<Int> IntMatrix::apply(std::span<const Int> x) const {
  if (static_cast<int>(x.size()) != cols_)
    throw std::invalid_argument("vector length does not match column count");
  std::vector<Int> out(rows_, 0);
  for (int r = 0; r < rows_; ++r) {
    Int acc = 0;
    auto row_span = row(r);
    for (int c = 0; c < cols_; ++c) {
      if (row_span[c] == 0 || x[c] == 0) continue;
      acc = checked_add(acc, checked_mul(row_span[c], x[c]));
    }
    out[r] = acc;
  }
  return out;
}

void IntMatrix::swap_columns(int a, int b) {
  if (a == b) return;
  for (int r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

void IntMatrix::negate_column(int c) {
  for (int r = 0; r < rows_; ++r) (*this)(r, c) = checked_neg((*this)(r, c));
}

void IntMatrix::add_multiple_of_column(int dst, Int factor, int src) {
  if (factor == 0) return;
  for (int r = 0; r < rows_; ++r)
    (*this)(r, dst) =
        checked_add((*this)(r, dst), checked_mul(factor, (*this)(r, src)));
}

void IntMatrix::combine_columns(int a, int b, Int p, Int q, Int u, Int v) {
  for (int r = 0; r < rows_; ++r) {
    Int va = (*this)(r, a);
    Int vb = (*this)(r, b);
    (*this)(r, a) = checked_add(checked_mul(p, va), checked_mul(q, vb));
    (*this)(r, b) = checked_add(checked_mul(u, va), checked_mul(v, vb));
  }
}

std::string to_text(const IntMatrix& m) {
  std::ostringstream out;
  out << m.rows() << ' ' << m.cols() << '\n';
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) {
      if (c) out << ' ';
      out << m(r, c);
    }
    out << '\n';
  }
  return out.str();
}

namespace {

std::vector<Int> parse_int_line(const std::string& line, int lineno) {
  std::vector<Int> out;
  std::istringstream in(line);
  std::string token;
  while (in >> token) {
    errno = 0;
    char* end = nullptr;
    long long v = std::strtoll(token.c_str(), &end, 10);
    if (end == token.c_str() || *end != '\0' || errno == ERANGE)
      throw ParseError("invalid integer '" + token + "'", lineno);
    out.push_back(static_cast<Int>(v));
  }
  return out;
}

}  // namespace

IntMatrix parse_matrix_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;

  // Header line: rows cols. Blank lines before it are rejected.
  if (!std::getline(in, line)) throw ParseError("empty matrix file", 1);
  ++lineno;
  auto header = parse_int_line(line, lineno);
  if (header.size() != 2)
    throw ParseError("expected header 'rows cols'", lineno);
  if (header[0] < 0 || header[1] < 0)
    throw ParseError("negative dimension in header", lineno);
  int rows = static_cast<int>(header[0]);
  int cols = static_cast<int>(header[1]);

  IntMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    if (!std::getline(in, line))
      throw ParseError("unexpected end of file: expected " +
                           std::to_string(rows) + " rows",
                       lineno + 1);
    ++lineno;
    auto values = parse_int_line(line, lineno);
    if (static_cast<int>(values.size()) != cols)
      throw ParseError("expected " + std::to_string(cols) +
                           " entries, found " + std::to_string(values.size()),
                       lineno);
    for (int c = 0; c < cols; ++c) m(r, c) = values[c];
  }
  while (std::getline(in, line)) {
    ++lineno;
    if (!parse_int_line(line, lineno).empty())
      throw ParseError("trailing data after matrix rows", lineno);
  }
  return m;
}

IntMatrix read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_matrix_text(buf.str());
}

void write_matrix_file(const std::filesystem::path& path, const IntMatrix& m) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << to_text(m);
}

}  // namespace fiberwalk

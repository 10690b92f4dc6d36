#ifndef FIBERWALK_INT_MATRIX_HPP
#define FIBERWALK_INT_MATRIX_HPP

#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fiberwalk {

using Int = std::int64_t;

/// Thrown when an exact integer operation would leave the representable range.
class OverflowError : public std::runtime_error {
 public:
  explicit OverflowError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown on malformed text input; line is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

Int checked_add(Int a, Int b);
Int checked_sub(Int a, Int b);
Int checked_mul(Int a, Int b);
Int checked_neg(Int a);

/// Floor division, exact for all sign combinations.
Int floor_div(Int a, Int b);

/// Extended gcd: returns g = gcd(a, b) >= 0 and (s, t) with s*a + t*b = g.
struct Xgcd {
  Int g;
  Int s;
  Int t;
};
Xgcd extended_gcd(Int a, Int b);

/// Dense integer matrix, row-major. All arithmetic is overflow-checked.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols);
  IntMatrix(int rows, int cols, std::vector<Int> entries);

  static IntMatrix identity(int n);
  static IntMatrix from_rows(
      std::initializer_list<std::initializer_list<Int>> rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Int& operator()(int r, int c) { return entries_[index(r, c)]; }
  Int operator()(int r, int c) const { return entries_[index(r, c)]; }

  std::span<const Int> row(int r) const {
    return {entries_.data() + static_cast<std::size_t>(r) * cols_,
            static_cast<std::size_t>(cols_)};
  }
  std::vector<Int> column(int c) const;

  bool operator==(const IntMatrix&) const = default;

  bool is_zero() const;
  IntMatrix transposed() const;
  IntMatrix times(const IntMatrix& other) const;

  /// Matrix-vector product A*x with overflow checking.
  std::vector<Int> apply(std::span<const Int> x) const;

  // In-place column operations used by the normal-form routines.
  void swap_columns(int a, int b);
  void negate_column(int c);
  /// col_dst += factor * col_src
  void add_multiple_of_column(int dst, Int factor, int src);
  /// (col_a, col_b) <- (p*col_a + q*col_b, u*col_a + v*col_b)
  void combine_columns(int a, int b, Int p, Int q, Int u, Int v);

 private:
  std::size_t index(int r, int c) const {
    return static_cast<std::size_t>(r) * cols_ + c;
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<Int> entries_;
};

/// Shared text format: first line "rows cols", then one line per row of
/// whitespace-separated integers.
std::string to_text(const IntMatrix& m);
IntMatrix parse_matrix_text(std::string_view text);
IntMatrix read_matrix_file(const std::filesystem::path& path);
void write_matrix_file(const std::filesystem::path& path, const IntMatrix& m);

}  // namespace fiberwalk

#endif

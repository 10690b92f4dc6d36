#ifndef FIBERWALK_MOVE_HPP
#define FIBERWALK_MOVE_HPP

#include <algorithm>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <vector>

#include "fiberwalk/int_matrix.hpp"

namespace fiberwalk {

/// An integer vector z over the cells of a configuration. For a move of the
/// model, A*z = 0; this type itself does not carry the owning matrix.
struct Move {
  std::vector<Int> z;

  Move() = default;
  explicit Move(std::vector<Int> entries) : z(std::move(entries)) {}

  int dimension() const { return static_cast<int>(z.size()); }

  bool is_zero() const {
    return std::all_of(z.begin(), z.end(), [](Int v) { return v == 0; });
  }

  /// z+ with z+(i) = max(z(i), 0).
  std::vector<Int> positive_part() const {
    std::vector<Int> out(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) out[i] = std::max<Int>(z[i], 0);
    return out;
  }

  /// z- with z-(i) = max(-z(i), 0).
  std::vector<Int> negative_part() const {
    std::vector<Int> out(z.size());
    for (std::size_t i = 0; i < z.size(); ++i)
      out[i] = std::max<Int>(-z[i], 0);
    return out;
  }

  /// max(sum z+, sum z-); the two sums agree for homogeneous configurations.
  Int degree() const {
    Int pos = 0, neg = 0;
    for (Int v : z) {
      if (v > 0)
        pos = checked_add(pos, v);
      else if (v < 0)
        neg = checked_add(neg, checked_neg(v));
    }
    return std::max(pos, neg);
  }

  Move negated() const {
    Move out;
    out.z.reserve(z.size());
    for (Int v : z) out.z.push_back(checked_neg(v));
    return out;
  }

  bool operator==(const Move&) const = default;
};

/// A finite set of moves whose integer combinations generate the full integer
/// kernel of the owning configuration. Redundancy is allowed: size() may
/// exceed kernel_dim().
class LatticeBasis {
 public:
  LatticeBasis() = default;
  LatticeBasis(int dimension, std::vector<Move> moves, int kernel_dim)
      : dimension_(dimension),
        kernel_dim_(kernel_dim),
        moves_(std::move(moves)) {
    for (const Move& m : moves_)
      if (m.dimension() != dimension_)
        throw std::invalid_argument("move dimension mismatch in basis");
    if (kernel_dim_ > static_cast<int>(moves_.size()))
      throw std::invalid_argument("kernel dimension exceeds move count");
  }

  int dimension() const { return dimension_; }
  int kernel_dim() const { return kernel_dim_; }
  int size() const { return static_cast<int>(moves_.size()); }
  bool empty() const { return moves_.empty(); }

  const Move& operator[](int k) const { return moves_[k]; }
  const std::vector<Move>& moves() const { return moves_; }

  auto begin() const { return moves_.begin(); }
  auto end() const { return moves_.end(); }

  /// Moves as columns of a dimension x size matrix.
  IntMatrix as_columns() const {
    IntMatrix m(dimension_, size());
    for (int k = 0; k < size(); ++k)
      for (int i = 0; i < dimension_; ++i) m(i, k) = moves_[k].z[i];
    return m;
  }

 private:
  int dimension_ = 0;
  int kernel_dim_ = 0;
  std::vector<Move> moves_;
};

/// Move-file format: one move per line, entries whitespace-separated, no
/// header. The dimension is taken from the first line.
std::string to_text(const LatticeBasis& basis);
std::vector<Move> parse_moves_text(std::string_view text);
std::vector<Move> read_moves_file(const std::filesystem::path& path);
void write_moves_file(const std::filesystem::path& path,
                      const LatticeBasis& basis);

}  // namespace fiberwalk

#endif

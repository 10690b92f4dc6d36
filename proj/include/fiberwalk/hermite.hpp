#ifndef FIBERWALK_HERMITE_HPP
#define FIBERWALK_HERMITE_HPP

#include <optional>
#include <span>
#include <vector>

#include "fiberwalk/int_matrix.hpp"
#include "fiberwalk/move.hpp"

namespace fiberwalk {

/// Column-style Hermite normal form: M * U = H with U unimodular.
///
/// H has its nonzero columns first, in column echelon form: the topmost
/// nonzero row of each successive column strictly increases, pivot entries
/// are positive, and in each pivot row the entries of earlier columns are
/// reduced modulo the pivot (0 <= entry < pivot).
struct HermiteResult {
  IntMatrix h;
  IntMatrix u;
  int rank = 0;
  /// Pivot row of each nonzero column of h, strictly increasing.
  std::vector<int> pivot_rows;
};

HermiteResult hermite_normal_form(const IntMatrix& m);

/// Exact rank over the rationals (pivot count of the Hermite form).
int rank(const IntMatrix& m);

/// Lattice basis of the integer kernel of a: exactly cols - rank moves, each
/// with a*z = 0, spanning every integer kernel vector with unique integer
/// coefficients. Each basis vector is normalized so its first nonzero entry
/// is positive.
LatticeBasis kernel_lattice_basis(const IntMatrix& a);

/// Solves B*alpha = z over the integers for the matrix B whose columns are
/// the basis moves. The Hermite form of B is computed once at construction;
/// each query is a forward substitution.
class CombinationSolver {
 public:
  explicit CombinationSolver(const LatticeBasis& basis);

  /// Integer coefficients alpha with sum_k alpha_k * z_k = z, or nullopt if z
  /// is not in the integer span. Unique for a non-redundant basis.
  std::optional<std::vector<Int>> solve(std::span<const Int> z) const;

 private:
  int dimension_;
  int size_;
  HermiteResult hnf_;
};

std::optional<std::vector<Int>> is_integer_combination(
    const Move& z, const LatticeBasis& basis);

}  // namespace fiberwalk

#endif

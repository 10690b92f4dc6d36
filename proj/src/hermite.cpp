#include "fiberwalk/hermite.hpp"

namespace fiberwalk {

HermiteResult hermite_normal_form(const IntMatrix& m) {
  HermiteResult res{m, IntMatrix::identity(m.cols()), 0, {}};
  IntMatrix& h = res.h;
  IntMatrix& u = res.u;
  const int rows = m.rows();
  const int cols = m.cols();

  int pivot = 0;
  for (int row = 0; row < rows && pivot < cols; ++row) {
    // Gather the gcd of the active entries of this row into column `pivot`.
    if (h(row, pivot) == 0) {
      for (int j = pivot + 1; j < cols; ++j)
        if (h(row, j) != 0) {
          h.swap_columns(pivot, j);
          u.swap_columns(pivot, j);
          break;
        }
    }
    if (h(row, pivot) == 0) continue;  // row is zero on the active columns

    for (int j = pivot + 1; j < cols; ++j) {
      Int b = h(row, j);
      if (b == 0) continue;
      Int a = h(row, pivot);
      if (b % a == 0) {
        Int q = checked_neg(b / a);
        h.add_multiple_of_column(j, q, pivot);
        u.add_multiple_of_column(j, q, pivot);
      } else {
        auto [g, s, t] = extended_gcd(a, b);
        // det [[s, -b/g], [t, a/g]] = (s*a + t*b)/g = 1
        h.combine_columns(pivot, j, s, t, checked_neg(b / g), a / g);
        u.combine_columns(pivot, j, s, t, checked_neg(b / g), a / g);
      }
    }

    if (h(row, pivot) < 0) {
      h.negate_column(pivot);
      u.negate_column(pivot);
    }
    // Reduce earlier columns modulo the pivot in this row.
    Int p = h(row, pivot);
    for (int c = 0; c < pivot; ++c) {
      Int q = floor_div(h(row, c), p);
      if (q != 0) {
        h.add_multiple_of_column(c, checked_neg(q), pivot);
        u.add_multiple_of_column(c, checked_neg(q), pivot);
      }
    }
    res.pivot_rows.push_back(row);
    ++pivot;
  }
  res.rank = pivot;
  return res;
}

int rank(const IntMatrix& m) { return hermite_normal_form(m).rank; }

LatticeBasis kernel_lattice_basis(const IntMatrix& a) {
  HermiteResult hnf = hermite_normal_form(a);
  const int n = a.cols();
  const int d = n - hnf.rank;

  std::vector<Move> moves;
  moves.reserve(d);
  for (int j = hnf.rank; j < n; ++j) {
    std::vector<Int> z = hnf.u.column(j);
    for (Int v : z) {
      if (v > 0) break;
      if (v < 0) {
        for (Int& w : z) w = checked_neg(w);
        break;
      }
    }
    moves.emplace_back(std::move(z));
  }
  return LatticeBasis(n, std::move(moves), d);
}

CombinationSolver::CombinationSolver(const LatticeBasis& basis)
    : dimension_(basis.dimension()),
      size_(basis.size()),
      hnf_(hermite_normal_form(basis.as_columns())) {}

std::optional<std::vector<Int>> CombinationSolver::solve(
    std::span<const Int> z) const {
  if (static_cast<int>(z.size()) != dimension_)
    throw std::invalid_argument("vector dimension does not match basis");

  std::vector<Int> residual(z.begin(), z.end());
  std::vector<Int> beta(size_, 0);

  // H is column echelon; peel off one pivot per nonzero column.
  for (int c = 0; c < hnf_.rank; ++c) {
    int r = hnf_.pivot_rows[c];
    Int p = hnf_.h(r, c);
    if (residual[r] % p != 0) return std::nullopt;
    Int coeff = residual[r] / p;
    beta[c] = coeff;
    if (coeff != 0)
      for (int i = r; i < dimension_; ++i)
        residual[i] =
            checked_sub(residual[i], checked_mul(coeff, hnf_.h(i, c)));
  }
  for (Int v : residual)
    if (v != 0) return std::nullopt;

  return hnf_.u.apply(beta);
}

std::optional<std::vector<Int>> is_integer_combination(
    const Move& z, const LatticeBasis& basis) {
  return CombinationSolver(basis).solve(z.z);
}

}  // namespace fiberwalk

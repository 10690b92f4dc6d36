#ifndef FIBERWALK_CONFIGURATION_HPP
#define FIBERWALK_CONFIGURATION_HPP

#include <string>
#include <vector>

#include "fiberwalk/int_matrix.hpp"
#include "fiberwalk/move.hpp"

namespace fiberwalk {

/// A configuration matrix A together with labeled cells. Column j of the
/// matrix belongs to cells()[j]; the label is a tuple of level indices.
struct Configuration {
  IntMatrix matrix;
  std::vector<std::vector<int>> cells;
  std::string description;

  int cell_count() const { return matrix.cols(); }
};

/// Covariate design: an ordered list of points, each a tuple of integer
/// levels, one entry per covariate axis.
struct Design {
  std::vector<std::vector<int>> points;
  std::vector<int> levels;  // level count per axis

  int axes() const { return static_cast<int>(levels.size()); }
  int size() const { return static_cast<int>(points.size()); }
};

std::string to_text(const Design& design);
Design parse_design_text(std::string_view text);
Design read_design_file(const std::filesystem::path& path);
void write_design_file(const std::filesystem::path& path,
                       const Design& design);

/// Two-way complete independence model on an i1 x i2 table. Cells (a, b) in
/// row-major order; rows are the i1 row-margin and i2 column-margin
/// indicators. Rank is i1 + i2 - 1.
Configuration independence_config(int i1, int i2);

/// The (i1-1)(i2-1) adjacent degree-two moves: +1 at (a,b) and (a+1,b+1),
/// -1 at (a,b+1) and (a+1,b). They span the integer kernel of
/// independence_config(i1, i2).
LatticeBasis two_way_basic_moves(int i1, int i2);

/// Lawrence lifting: block matrix (A 0; I I) over 2n cells read as two
/// slices of the base table.
Configuration lawrence(const Configuration& a);

/// r-th Lawrence configuration: r-1 diagonal copies of A over a final zero
/// column block, with a bottom band of r identity blocks. The r*n cells are
/// ordered slice-major and labeled (slice, base cell...).
Configuration lawrence_r(const Configuration& a, int r);

enum class LiftStyle {
  /// One move per (slice j, base move): +B in slice j, -B in slice r.
  LastSlicePivot,
  /// One move per slice pair j < k: +B in slice j, -B in slice k.
  PairwiseSymmetric,
};

LiftStyle parse_lift_style(std::string_view name);
std::string to_string(LiftStyle style);

/// Lifts a lattice basis of `base` to a lattice basis of lawrence_r(base, r).
/// Every base move must lie in the kernel of the base configuration.
LatticeBasis lift_lattice_basis(const Configuration& base,
                                const LatticeBasis& b, int r, LiftStyle style);

/// No-three-factor interaction model for an i1 x i2 x i3 table: the i3-th
/// Lawrence configuration of the two-way independence model, cells relabeled
/// (a, b, c) with the slice index last. Kernel dimension is
/// (i1-1)(i2-1)(i3-1).
Configuration no_three_factor_config(int i1, int i2, int i3);

/// The degree-four lattice basis of the no-three-factor model: the two-way
/// basic moves lifted across slices.
LatticeBasis no_three_factor_lattice_basis(int i1, int i2, int i3,
                                           LiftStyle style);

/// Poisson regression over the design points: an intercept row of ones plus
/// one row per selected covariate axis carrying the level values. An empty
/// axis list selects every axis.
Configuration poisson_regression_config(const Design& design,
                                        std::vector<int> covariate_axes = {});

/// Logistic regression with r response levels: the r-th Lawrence
/// configuration of the Poisson regression model. Cells are
/// (response level, design point).
Configuration logistic_config(const Design& design, int r,
                              std::vector<int> covariate_axes = {});

enum class CheckerParity { Even, Odd };

/// Design of the (i2, i3) grid points with (i2 + i3) of the given parity,
/// optionally crossed with the levels 1..extra_axis of one more axis.
Design checkered_design(int i2, int i3, int extra_axis = 0,
                        CheckerParity parity = CheckerParity::Even);

}  // namespace fiberwalk

#endif

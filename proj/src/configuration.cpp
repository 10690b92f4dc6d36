#include "fiberwalk/configuration.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "fiberwalk/hermite.hpp"

namespace fiberwalk {

std::string to_text(const Design& design) {
  std::ostringstream out;
  for (const auto& point : design.points) {
    for (std::size_t i = 0; i < point.size(); ++i) {
      if (i) out << ' ';
      out << point[i];
    }
    out << '\n';
  }
  return out.str();
}

Design parse_design_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  Design design;
  std::string line;
  int lineno = 0;
  int axes = -1;
  std::set<std::vector<int>> seen;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream row(line);
    std::vector<int> point;
    int v;
    while (row >> v) point.push_back(v);
    if (!row.eof()) throw ParseError("invalid integer in design file", lineno);
    if (point.empty()) continue;
    if (axes < 0)
      axes = static_cast<int>(point.size());
    else if (static_cast<int>(point.size()) != axes)
      throw ParseError("expected " + std::to_string(axes) +
                           " covariate values, found " +
                           std::to_string(point.size()),
                       lineno);
    if (!seen.insert(point).second)
      throw ParseError("duplicate design point", lineno);
    design.points.push_back(std::move(point));
  }
  if (axes < 0) throw ParseError("empty design file", 1);
  design.levels.assign(axes, 0);
  for (const auto& point : design.points)
    for (int i = 0; i < axes; ++i)
      design.levels[i] = std::max(design.levels[i], point[i]);
  return design;
}

Design read_design_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_design_text(buf.str());
}

void write_design_file(const std::filesystem::path& path,
                       const Design& design) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << to_text(design);
}

Configuration independence_config(int i1, int i2) {
  if (i1 < 2 || i2 < 2)
    throw std::invalid_argument("independence model needs sizes >= 2");
  Configuration cfg;
  cfg.matrix = IntMatrix(i1 + i2, i1 * i2);
  cfg.cells.reserve(i1 * i2);
  for (int a = 1; a <= i1; ++a)
    for (int b = 1; b <= i2; ++b) {
      int col = static_cast<int>(cfg.cells.size());
      cfg.matrix(a - 1, col) = 1;       // row margin
      cfg.matrix(i1 + b - 1, col) = 1;  // column margin
      cfg.cells.push_back({a, b});
    }
  cfg.description =
      "independence " + std::to_string(i1) + "x" + std::to_string(i2);
  return cfg;
}

LatticeBasis two_way_basic_moves(int i1, int i2) {
  if (i1 < 2 || i2 < 2)
    throw std::invalid_argument("independence model needs sizes >= 2");
  auto cell = [i2](int a, int b) { return (a - 1) * i2 + (b - 1); };
  std::vector<Move> moves;
  for (int a = 1; a < i1; ++a)
    for (int b = 1; b < i2; ++b) {
      std::vector<Int> z(static_cast<std::size_t>(i1) * i2, 0);
      z[cell(a, b)] = 1;
      z[cell(a + 1, b + 1)] = 1;
      z[cell(a, b + 1)] = -1;
      z[cell(a + 1, b)] = -1;
      moves.emplace_back(std::move(z));
    }
  return LatticeBasis(i1 * i2, std::move(moves), (i1 - 1) * (i2 - 1));
}

Configuration lawrence(const Configuration& a) { return lawrence_r(a, 2); }

Configuration lawrence_r(const Configuration& a, int r) {
  if (r < 2) throw std::invalid_argument("Lawrence lifting needs r >= 2");
  const int m = a.matrix.rows();
  const int n = a.matrix.cols();
  Configuration cfg;
  cfg.matrix = IntMatrix((r - 1) * m + n, r * n);
  for (int slice = 0; slice < r - 1; ++slice)
    for (int row = 0; row < m; ++row)
      for (int col = 0; col < n; ++col)
        cfg.matrix(slice * m + row, slice * n + col) = a.matrix(row, col);
  for (int slice = 0; slice < r; ++slice)
    for (int col = 0; col < n; ++col)
      cfg.matrix((r - 1) * m + col, slice * n + col) = 1;

  cfg.cells.reserve(static_cast<std::size_t>(r) * n);
  for (int slice = 1; slice <= r; ++slice)
    for (int col = 0; col < n; ++col) {
      std::vector<int> label;
      label.reserve(a.cells[col].size() + 1);
      label.push_back(slice);
      label.insert(label.end(), a.cells[col].begin(), a.cells[col].end());
      cfg.cells.push_back(std::move(label));
    }
  cfg.description = "Lawrence-" + std::to_string(r) + " of " + a.description;
  return cfg;
}

LiftStyle parse_lift_style(std::string_view name) {
  if (name == "last-slice" || name == "last-slice-pivot")
    return LiftStyle::LastSlicePivot;
  if (name == "pairwise" || name == "pairwise-symmetric")
    return LiftStyle::PairwiseSymmetric;
  throw std::invalid_argument("unknown lift style '" + std::string(name) +
                              "' (expected last-slice or pairwise)");
}

std::string to_string(LiftStyle style) {
  return style == LiftStyle::LastSlicePivot ? "last-slice-pivot"
                                            : "pairwise-symmetric";
}

namespace {

Move slice_pair_move(const Move& b, int n, int r, int pos_slice,
                     int neg_slice) {
  std::vector<Int> z(static_cast<std::size_t>(r) * n, 0);
  for (int i = 0; i < n; ++i) {
    z[(pos_slice - 1) * n + i] = b.z[i];
    z[(neg_slice - 1) * n + i] = checked_neg(b.z[i]);
  }
  return Move(std::move(z));
}

}  // namespace

LatticeBasis lift_lattice_basis(const Configuration& base,
                                const LatticeBasis& b, int r,
                                LiftStyle style) {
  if (r < 2) throw std::invalid_argument("Lawrence lifting needs r >= 2");
  const int n = base.matrix.cols();
  if (b.dimension() != n)
    throw std::invalid_argument("basis dimension does not match configuration");
  for (int k = 0; k < b.size(); ++k) {
    auto image = base.matrix.apply(b[k].z);
    for (Int v : image)
      if (v != 0)
        throw std::invalid_argument(
            "move " + std::to_string(k) +
            " is not in the kernel of the base configuration");
  }

  std::vector<Move> moves;
  if (style == LiftStyle::LastSlicePivot) {
    moves.reserve(static_cast<std::size_t>(r - 1) * b.size());
    for (int j = 1; j < r; ++j)
      for (const Move& m : b) moves.push_back(slice_pair_move(m, n, r, j, r));
  } else {
    moves.reserve(static_cast<std::size_t>(r) * (r - 1) / 2 * b.size());
    for (int j = 1; j < r; ++j)
      for (int k = j + 1; k <= r; ++k)
        for (const Move& m : b) moves.push_back(slice_pair_move(m, n, r, j, k));
  }
  return LatticeBasis(r * n, std::move(moves), (r - 1) * b.kernel_dim());
}

Configuration no_three_factor_config(int i1, int i2, int i3) {
  if (i3 < 2) throw std::invalid_argument("table sizes must be >= 2");
  Configuration cfg = lawrence_r(independence_config(i1, i2), i3);
  // Relabel (slice, a, b) as (a, b, c) with the slice index as third axis.
  for (auto& label : cfg.cells) label = {label[1], label[2], label[0]};
  cfg.description = "no-three-factor " + std::to_string(i1) + "x" +
                    std::to_string(i2) + "x" + std::to_string(i3);
  return cfg;
}

LatticeBasis no_three_factor_lattice_basis(int i1, int i2, int i3,
                                           LiftStyle style) {
  return lift_lattice_basis(independence_config(i1, i2),
                            two_way_basic_moves(i1, i2), i3, style);
}

Configuration poisson_regression_config(const Design& design,
                                        std::vector<int> covariate_axes) {
  if (design.points.empty()) throw std::invalid_argument("empty design");
  if (covariate_axes.empty()) {
    covariate_axes.resize(design.axes());
    for (int i = 0; i < design.axes(); ++i) covariate_axes[i] = i;
  }
  for (int axis : covariate_axes)
    if (axis < 0 || axis >= design.axes())
      throw std::invalid_argument("covariate axis out of range");

  const int n = design.size();
  Configuration cfg;
  cfg.matrix = IntMatrix(1 + static_cast<int>(covariate_axes.size()), n);
  cfg.cells = design.points;
  for (int col = 0; col < n; ++col) {
    cfg.matrix(0, col) = 1;
    for (std::size_t k = 0; k < covariate_axes.size(); ++k)
      cfg.matrix(1 + static_cast<int>(k), col) =
          design.points[col][covariate_axes[k]];
  }
  cfg.description =
      "poisson-regression " + std::to_string(covariate_axes.size()) +
      " covariates, " + std::to_string(n) + " points";
  return cfg;
}

Configuration logistic_config(const Design& design, int r,
                              std::vector<int> covariate_axes) {
  if (r < 2) throw std::invalid_argument("logistic model needs r >= 2");
  Configuration cfg =
      lawrence_r(poisson_regression_config(design, std::move(covariate_axes)),
                 r);
  cfg.description = "logistic r=" + std::to_string(r) + ", " +
                    std::to_string(design.size()) + " points";
  return cfg;
}

Design checkered_design(int i2, int i3, int extra_axis, CheckerParity parity) {
  if (i2 < 2 || i3 < 2)
    throw std::invalid_argument("checkered design needs sizes >= 2");
  const int want = parity == CheckerParity::Even ? 0 : 1;
  Design design;
  for (int a = 1; a <= i2; ++a)
    for (int b = 1; b <= i3; ++b) {
      if ((a + b) % 2 != want) continue;
      if (extra_axis > 0) {
        for (int c = 1; c <= extra_axis; ++c)
          design.points.push_back({a, b, c});
      } else {
        design.points.push_back({a, b});
      }
    }
  design.levels = extra_axis > 0 ? std::vector<int>{i2, i3, extra_axis}
                                 : std::vector<int>{i2, i3};
  return design;
}

}  // namespace fiberwalk

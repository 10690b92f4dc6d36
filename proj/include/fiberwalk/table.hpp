#ifndef FIBERWALK_TABLE_HPP
#define FIBERWALK_TABLE_HPP

#include <string>
#include <vector>

#include "fiberwalk/int_matrix.hpp"

namespace fiberwalk {

/// Cell counts in the flattened cell order of the owning configuration.
/// Entries are nonnegative by construction.
struct Table {
  std::vector<Int> counts;

  Table() = default;
  explicit Table(std::vector<Int> c);

  int dimension() const { return static_cast<int>(counts.size()); }
  Int total() const;

  bool operator==(const Table&) const = default;
};

/// t = A x for the observed table; fixed for a whole chain run.
struct SufficientStatistic {
  std::vector<Int> t;

  bool operator==(const SufficientStatistic&) const = default;
};

SufficientStatistic sufficient_statistic(const IntMatrix& a, const Table& x);

/// Tables travel in the shared matrix format. Writing always uses a single
/// row; reading accepts any shape and flattens row-major, so a 2x2 table
/// may be written out naturally by hand.
Table read_table_file(const std::string& path);
void write_table_file(const std::string& path, const Table& x);

}  // namespace fiberwalk

#endif

#include "fiberwalk/table.hpp"

#include <stdexcept>

namespace fiberwalk {

Table::Table(std::vector<Int> c) : counts(std::move(c)) {
  for (Int v : counts)
    if (v < 0) throw std::invalid_argument("table cells must be nonnegative");
}

Int Table::total() const {
  Int n = 0;
  for (Int v : counts) n = checked_add(n, v);
  return n;
}

SufficientStatistic sufficient_statistic(const IntMatrix& a, const Table& x) {
  if (a.cols() != x.dimension())
    throw std::invalid_argument("table dimension does not match configuration");
  return {a.apply(x.counts)};
}

Table read_table_file(const std::string& path) {
  IntMatrix m = read_matrix_file(path);
  std::vector<Int> flat;
  flat.reserve(static_cast<std::size_t>(m.rows()) * m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) flat.push_back(m(r, c));
  return Table(std::move(flat));
}

void write_table_file(const std::string& path, const Table& x) {
  IntMatrix m(1, x.dimension());
  for (int i = 0; i < x.dimension(); ++i) m(0, i) = x.counts[i];
  write_matrix_file(path, m);
}

}  // namespace fiberwalk

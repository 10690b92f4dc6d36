#include "fiberwalk/fiber.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fiberwalk {

namespace {

struct Search {
  const IntMatrix& a;
  Int cap;
  std::vector<int> nonneg_rows;  // rows with every coefficient >= 0
  // suffix_positive[r * (cols+1) + i]: row r has a positive coefficient at
  // some cell >= i.
  std::vector<char> suffix_positive;
  std::vector<Int> residual;  // t - A x over the assigned prefix, all rows
  std::vector<Int> x;
  std::vector<Table> out;

  explicit Search(const IntMatrix& m, const SufficientStatistic& t, Int cap_)
      : a(m), cap(cap_), residual(t.t), x(m.cols(), 0) {
    for (int r = 0; r < a.rows(); ++r) {
      bool nonneg = true;
      for (int c = 0; c < a.cols(); ++c)
        if (a(r, c) < 0) nonneg = false;
      if (nonneg) nonneg_rows.push_back(r);
    }
    suffix_positive.assign(
        static_cast<std::size_t>(a.rows()) * (a.cols() + 1), 0);
    for (int r = 0; r < a.rows(); ++r)
      for (int c = a.cols() - 1; c >= 0; --c)
        suffix_positive[static_cast<std::size_t>(r) * (a.cols() + 1) + c] =
            a(r, c) > 0 ||
            suffix_positive[static_cast<std::size_t>(r) * (a.cols() + 1) + c +
                            1];
  }

  bool suffix_has_positive(int r, int cell) const {
    return suffix_positive[static_cast<std::size_t>(r) * (a.cols() + 1) +
                           cell] != 0;
  }

  // A nonnegative row can only shed budget, so its residual must stay
  // nonnegative and must be zero once no later cell can absorb it.
  bool prefix_feasible(int next_cell) const {
    for (int r : nonneg_rows) {
      if (residual[r] < 0) return false;
      if (residual[r] > 0 && !suffix_has_positive(r, next_cell)) return false;
    }
    return true;
  }

  // Callers only descend through prefix_feasible states, so nonnegative
  // rows have residual >= 0 here and the division is a plain floor.
  Int cell_bound(int cell) const {
    Int bound = -1;  // -1 marks "no bounding row found"
    for (int r : nonneg_rows) {
      Int coeff = a(r, cell);
      if (coeff <= 0) continue;
      Int b = residual[r] / coeff;
      bound = bound < 0 ? b : std::min(bound, b);
    }
    if (bound < 0)
      throw std::invalid_argument(
          "cell " + std::to_string(cell) +
          " is not bounded by any nonnegative row; fiber may be infinite");
    return bound;
  }

  void assign(int cell, Int value) {
    x[cell] = value;
    if (value == 0) return;
    for (int r = 0; r < a.rows(); ++r)
      if (a(r, cell) != 0)
        residual[r] = checked_sub(residual[r], checked_mul(a(r, cell), value));
  }

  void unassign(int cell) {
    Int value = x[cell];
    x[cell] = 0;
    if (value == 0) return;
    for (int r = 0; r < a.rows(); ++r)
      if (a(r, cell) != 0)
        residual[r] = checked_add(residual[r], checked_mul(a(r, cell), value));
  }

  void run(int cell) {
    if (cell == a.cols()) {
      for (Int v : residual)
        if (v != 0) return;  // mixed-sign rows checked here
      if (static_cast<Int>(out.size()) >= cap) throw FiberCapExceeded(cap);
      out.emplace_back(x);
      return;
    }
    Int bound = cell_bound(cell);
    for (Int v = 0; v <= bound; ++v) {
      assign(cell, v);
      if (prefix_feasible(cell + 1)) run(cell + 1);
      unassign(cell);
    }
  }
};

}  // namespace

std::vector<Table> enumerate_fiber_elements(const IntMatrix& a,
                                            const SufficientStatistic& t,
                                            Int cap) {
  if (static_cast<int>(t.t.size()) != a.rows())
    throw std::invalid_argument("statistic length does not match row count");
  if (cap < 1) throw std::invalid_argument("cap must be positive");
  Search search(a, t, cap);
  if (search.prefix_feasible(0)) search.run(0);
  return std::move(search.out);
}

std::vector<double> exact_hypergeometric(const std::vector<Table>& elements) {
  if (elements.empty())
    throw std::invalid_argument("exact distribution of an empty fiber");
  std::vector<double> logw(elements.size());
  for (std::size_t k = 0; k < elements.size(); ++k)
    logw[k] = log_unnormalized_target(elements[k]);
  double m = *std::max_element(logw.begin(), logw.end());
  double total = 0.0;
  for (double& w : logw) {
    w = std::exp(w - m);
    total += w;
  }
  for (double& w : logw) w /= total;
  return logw;
}

Fiber enumerate_fiber(const IntMatrix& a, const SufficientStatistic& t,
                      Int cap) {
  Fiber fiber;
  fiber.elements = enumerate_fiber_elements(a, t, cap);
  if (!fiber.elements.empty())
    fiber.probabilities = exact_hypergeometric(fiber.elements);
  return fiber;
}

ConnectivityReport verify_one_step_connectivity(const Fiber& fiber,
                                                const LatticeBasis& basis) {
  ConnectivityReport report;
  const int n = fiber.size();
  report.ordered_pairs = static_cast<Int>(n) * (n - 1);
  if (n <= 1) {
    report.connected = true;
    return report;
  }
  CombinationSolver solver(basis);
  const auto& anchor = fiber.elements[0].counts;
  std::vector<Int> diff(anchor.size());
  for (int k = 1; k < n; ++k) {
    const auto& other = fiber.elements[k].counts;
    for (std::size_t i = 0; i < diff.size(); ++i)
      diff[i] = checked_sub(other[i], anchor[i]);
    if (!solver.solve(diff)) {
      report.connected = false;
      report.failing_pair = {0, k};
      return report;
    }
  }
  report.connected = true;
  return report;
}

FiberIndex::FiberIndex(const Fiber& fiber) {
  for (int k = 0; k < fiber.size(); ++k)
    by_counts_.emplace(fiber.elements[k].counts, k);
}

int FiberIndex::index_of(const Table& x) const {
  auto it = by_counts_.find(x.counts);
  if (it == by_counts_.end())
    throw FiberBreachError("observed state is not a fiber element");
  return it->second;
}

double empirical_vs_exact(const std::vector<Int>& visits, const Fiber& fiber) {
  if (static_cast<int>(visits.size()) != fiber.size())
    throw std::invalid_argument("visit counts do not align with the fiber");
  Int total = 0;
  for (Int v : visits) {
    if (v < 0) throw std::invalid_argument("negative visit count");
    total = checked_add(total, v);
  }
  if (total == 0) throw std::invalid_argument("no visits recorded");
  double tv = 0.0;
  for (int k = 0; k < fiber.size(); ++k)
    tv += std::abs(static_cast<double>(visits[k]) / total -
                   fiber.probabilities[k]);
  return 0.5 * tv;
}

}  // namespace fiberwalk

#ifndef FIBERWALK_FIBER_HPP
#define FIBERWALK_FIBER_HPP

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "fiberwalk/hermite.hpp"
#include "fiberwalk/sampler.hpp"
#include "fiberwalk/table.hpp"

namespace fiberwalk {

/// Enumeration hit the element cap before finishing.
class FiberCapExceeded : public std::runtime_error {
 public:
  explicit FiberCapExceeded(Int cap)
      : std::runtime_error("fiber has more than " + std::to_string(cap) +
                           " elements"),
        cap_(cap) {}
  Int cap() const { return cap_; }

 private:
  Int cap_;
};

/// A fully enumerated fiber with its exact conditional distribution.
struct Fiber {
  std::vector<Table> elements;        // deterministic lexicographic order
  std::vector<double> probabilities;  // aligned; positive; sums to 1

  int size() const { return static_cast<int>(elements.size()); }
};

/// All nonnegative integer solutions of A x = t by depth-first search in
/// cell order. Per-cell upper bounds come from rows with all-nonnegative
/// coefficients; a cell no such row touches makes the search space
/// unbounded and is an error. An infeasible t gives an empty list.
std::vector<Table> enumerate_fiber_elements(const IntMatrix& a,
                                            const SufficientStatistic& t,
                                            Int cap = 1'000'000);

/// Mass proportional to 1 / prod_i x(i)!, normalized by log-sum-exp.
std::vector<double> exact_hypergeometric(const std::vector<Table>& elements);

Fiber enumerate_fiber(const IntMatrix& a, const SufficientStatistic& t,
                      Int cap = 1'000'000);

struct ConnectivityReport {
  bool connected = false;
  Int ordered_pairs = 0;  // pairs the verdict covers
  /// Indices into the fiber of a pair whose difference is not an integer
  /// combination of the basis; empty when connected.
  std::optional<std::pair<int, int>> failing_pair;
};

/// Checks that y - x lies in the integer span of the basis for every
/// ordered fiber pair. Representable differences form a group under
/// addition, so checking every element against a fixed anchor settles all
/// pairs at once; a failing anchor difference is itself a failing pair.
ConnectivityReport verify_one_step_connectivity(const Fiber& fiber,
                                                const LatticeBasis& basis);

/// Table -> position lookup for chain observers counting fiber visits.
class FiberIndex {
 public:
  explicit FiberIndex(const Fiber& fiber);

  /// Throws FiberBreachError when x is not a fiber element.
  int index_of(const Table& x) const;
  int size() const { return static_cast<int>(by_counts_.size()); }

 private:
  std::map<std::vector<Int>, int> by_counts_;
};

/// Total-variation distance between visit frequencies and the exact law.
double empirical_vs_exact(const std::vector<Int>& visits, const Fiber& fiber);

}  // namespace fiberwalk

#endif

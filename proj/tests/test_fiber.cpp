#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "fiberwalk/configuration.hpp"
#include "fiberwalk/fiber.hpp"

using namespace fiberwalk;

TEST_CASE("pair-sum fiber enumerates all three tables with exact masses") {
  const IntMatrix a = IntMatrix::from_rows({{1, 1}});
  const Fiber fiber = enumerate_fiber(a, SufficientStatistic{{2}});
  REQUIRE(fiber.size() == 3);
  CHECK(fiber.elements[0].counts == std::vector<Int>{0, 2});
  CHECK(fiber.elements[1].counts == std::vector<Int>{1, 1});
  CHECK(fiber.elements[2].counts == std::vector<Int>{2, 0});
  CHECK(fiber.probabilities[0] == doctest::Approx(0.25));
  CHECK(fiber.probabilities[1] == doctest::Approx(0.5));
  CHECK(fiber.probabilities[2] == doctest::Approx(0.25));
}

TEST_CASE("2x2 margin fiber with totals (2,2) has the 1/6, 2/3, 1/6 law") {
  const Configuration cfg = independence_config(2, 2);
  const Table observed{{1, 1, 1, 1}};
  const Fiber fiber =
      enumerate_fiber(cfg.matrix, sufficient_statistic(cfg.matrix, observed));
  REQUIRE(fiber.size() == 3);
  // The free cell x11 takes 0, 1, 2; the diagonal tables carry mass 1/6.
  for (int i = 0; i < 3; ++i) {
    const auto& x = fiber.elements[i].counts;
    CHECK(x[0] + x[1] == 2);
    CHECK(x[0] + x[2] == 2);
  }
  std::vector<double> probs = fiber.probabilities;
  std::sort(probs.begin(), probs.end());
  CHECK(probs[0] == doctest::Approx(1.0 / 6));
  CHECK(probs[1] == doctest::Approx(1.0 / 6));
  CHECK(probs[2] == doctest::Approx(2.0 / 3));
}

TEST_CASE("infeasible statistics give an empty fiber, not an error") {
  const IntMatrix a = IntMatrix::from_rows({{2, 2}});
  CHECK(enumerate_fiber_elements(a, SufficientStatistic{{3}}).empty());
}

TEST_CASE("a singleton fiber carries probability one") {
  const IntMatrix a = IntMatrix::identity(3);
  const Fiber fiber = enumerate_fiber(a, SufficientStatistic{{4, 0, 1}});
  REQUIRE(fiber.size() == 1);
  CHECK(fiber.elements[0].counts == std::vector<Int>{4, 0, 1});
  CHECK(fiber.probabilities[0] == doctest::Approx(1.0));
}

TEST_CASE("enumeration matches a brute-force box filter") {
  const Configuration cfg = independence_config(2, 2);
  const Table observed{{2, 0, 0, 1}};
  const SufficientStatistic t = sufficient_statistic(cfg.matrix, observed);
  const std::vector<Table> fast = enumerate_fiber_elements(cfg.matrix, t);

  std::vector<std::vector<Int>> slow;
  const Int n = observed.total();
  for (Int a0 = 0; a0 <= n; ++a0)
    for (Int a1 = 0; a1 <= n; ++a1)
      for (Int a2 = 0; a2 <= n; ++a2)
        for (Int a3 = 0; a3 <= n; ++a3) {
          const std::vector<Int> x{a0, a1, a2, a3};
          if (cfg.matrix.apply(x) == t.t) slow.push_back(x);
        }

  REQUIRE(fast.size() == slow.size());
  std::sort(slow.begin(), slow.end());
  for (std::size_t i = 0; i < fast.size(); ++i)
    CHECK(fast[i].counts == slow[i]);
  // The enumerated order itself is lexicographic.
  for (std::size_t i = 1; i < fast.size(); ++i)
    CHECK(fast[i - 1].counts < fast[i].counts);
}

TEST_CASE("probabilities sum to one on a larger fiber") {
  const IntMatrix a = IntMatrix::from_rows({{1, 1, 1}});
  const Fiber fiber = enumerate_fiber(a, SufficientStatistic{{12}});
  REQUIRE(fiber.size() == 91);
  double sum = 0;
  for (double p : fiber.probabilities) {
    CHECK(p > 0);
    sum += p;
  }
  CHECK(std::abs(sum - 1.0) < 1e-12);
}

TEST_CASE("the element cap stops runaway enumerations") {
  const IntMatrix a = IntMatrix::from_rows({{1, 1}});
  CHECK_THROWS_AS(enumerate_fiber_elements(a, SufficientStatistic{{10}}, 5),
                  FiberCapExceeded);
}

TEST_CASE("an unconstrained cell is rejected") {
  // No all-nonnegative row touches the second cell, so the fiber is an
  // infinite set; the enumerator must refuse rather than loop.
  const IntMatrix a = IntMatrix::from_rows({{1, 0}, {0, -1}});
  CHECK_THROWS_AS(enumerate_fiber_elements(a, SufficientStatistic{{1, -1}}),
                  std::invalid_argument);
}

TEST_CASE("one-step connectivity holds for a true lattice basis") {
  const Configuration cfg = independence_config(3, 3);
  const Table observed{{1, 0, 0, 0, 1, 0, 0, 0, 1}};
  const Fiber fiber =
      enumerate_fiber(cfg.matrix, sufficient_statistic(cfg.matrix, observed));
  REQUIRE(fiber.size() == 6);  // permutation tables
  const ConnectivityReport ok =
      verify_one_step_connectivity(fiber, two_way_basic_moves(3, 3));
  CHECK(ok.connected);
  CHECK(ok.ordered_pairs == 30);
  CHECK_FALSE(ok.failing_pair.has_value());
}

TEST_CASE("a missing generator breaks connectivity") {
  const Configuration cfg = independence_config(3, 3);
  const Table observed{{1, 0, 0, 0, 1, 0, 0, 0, 1}};
  const Fiber fiber =
      enumerate_fiber(cfg.matrix, sufficient_statistic(cfg.matrix, observed));
  const LatticeBasis full = two_way_basic_moves(3, 3);
  std::vector<Move> pruned(full.begin(), full.end() - 1);
  const LatticeBasis partial(full.dimension(), pruned,
                             static_cast<int>(pruned.size()));
  const ConnectivityReport report =
      verify_one_step_connectivity(fiber, partial);
  CHECK_FALSE(report.connected);
  REQUIRE(report.failing_pair.has_value());
  const auto [i, j] = *report.failing_pair;
  const auto& x = fiber.elements[i].counts;
  const auto& y = fiber.elements[j].counts;
  std::vector<Int> diff(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) diff[k] = y[k] - x[k];
  CHECK_FALSE(is_integer_combination(Move{diff}, partial).has_value());
}

TEST_CASE("a singleton fiber is vacuously connected") {
  const Fiber fiber =
      enumerate_fiber(IntMatrix::identity(2), SufficientStatistic{{1, 2}});
  const ConnectivityReport report =
      verify_one_step_connectivity(fiber, LatticeBasis(2, {}, 0));
  CHECK(report.connected);
  CHECK(report.ordered_pairs == 0);
}

TEST_CASE("fiber index finds elements and rejects strangers") {
  const IntMatrix a = IntMatrix::from_rows({{1, 1}});
  const Fiber fiber = enumerate_fiber(a, SufficientStatistic{{2}});
  const FiberIndex index(fiber);
  CHECK(index.size() == 3);
  for (int i = 0; i < fiber.size(); ++i)
    CHECK(index.index_of(fiber.elements[i]) == i);
  CHECK_THROWS_AS(index.index_of(Table{{3, 0}}), FiberBreachError);
}

TEST_CASE("total variation against the exact law") {
  const IntMatrix a = independence_config(2, 2).matrix;
  const Table observed{{1, 0, 0, 1}};
  const Fiber fiber =
      enumerate_fiber(a, sufficient_statistic(a, observed));
  REQUIRE(fiber.size() == 2);  // two permutation tables, uniform law

  SUBCASE("matching frequencies give zero distance") {
    CHECK(empirical_vs_exact({500, 500}, fiber) == doctest::Approx(0.0));
  }
  SUBCASE("all mass on one element gives (k-1)/k") {
    CHECK(empirical_vs_exact({1000, 0}, fiber) == doctest::Approx(0.5));
  }
  SUBCASE("bad inputs are rejected") {
    CHECK_THROWS_AS(empirical_vs_exact({1, 2, 3}, fiber),
                    std::invalid_argument);
    CHECK_THROWS_AS(empirical_vs_exact({0, 0}, fiber), std::invalid_argument);
  }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <vector>

#include "fiberwalk/configuration.hpp"
#include "fiberwalk/hermite.hpp"
#include "fiberwalk/movegen.hpp"
#include "fiberwalk/random_source.hpp"

using namespace fiberwalk;

namespace {

Int magnitude_sum(const std::vector<Int>& alpha) {
  Int total = 0;
  for (Int a : alpha) total += std::abs(a);
  return total;
}

}  // namespace

TEST_CASE("distribution specs parse and print") {
  const CoefficientDistribution p = CoefficientDistribution::parse("poisson:2");
  CHECK(p.kind == CoefficientDistribution::Kind::Poisson);
  CHECK(p.param == doctest::Approx(2.0));
  const CoefficientDistribution g =
      CoefficientDistribution::parse("geometric:0.1");
  CHECK(g.kind == CoefficientDistribution::Kind::Geometric);
  CHECK(g.param == doctest::Approx(0.1));
  CHECK(CoefficientDistribution::parse(p.to_string()).param ==
        doctest::Approx(2.0));

  CHECK_THROWS_AS(CoefficientDistribution::parse("uniform:1"),
                  std::invalid_argument);
  CHECK_THROWS_AS(CoefficientDistribution::parse("poisson:0"),
                  std::invalid_argument);
  CHECK_THROWS_AS(CoefficientDistribution::parse("geometric:1.5"),
                  std::invalid_argument);
}

TEST_CASE("Poisson sampler matches its mean at small and large rates") {
  RandomSource rng(7);
  SUBCASE("lambda = 1") {
    const PoissonSampler sampler(1.0);
    double sum = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) sum += static_cast<double>(sampler.draw(rng));
    CHECK(sum / n == doctest::Approx(1.0).epsilon(0.02));
  }
  SUBCASE("lambda = 40 keeps exact mean and variance") {
    const PoissonSampler sampler(40.0);
    double sum = 0, sumsq = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
      const double v = static_cast<double>(sampler.draw(rng));
      sum += v;
      sumsq += v * v;
    }
    const double mean = sum / n;
    const double var = sumsq / n - mean * mean;
    CHECK(mean == doctest::Approx(40.0).epsilon(0.005));
    CHECK(var == doctest::Approx(40.0).epsilon(0.05));
  }
}

TEST_CASE("geometric draw starts at one with mean 1/p") {
  RandomSource rng(11);
  double sum = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const Int v = draw_geometric(0.25, rng);
    REQUIRE(v >= 1);
    sum += static_cast<double>(v);
  }
  CHECK(sum / n == doctest::Approx(4.0).epsilon(0.02));
}

TEST_CASE("Poisson coefficient draw never returns the zero vector") {
  RandomSource rng(3);
  for (int i = 0; i < 2000; ++i) {
    const auto alpha = draw_coefficients_poisson(1, 0.2, rng);
    REQUIRE(alpha.size() == 1);
    CHECK(std::abs(alpha[0]) >= 1);
  }
}

TEST_CASE("Poisson coefficient total matches the conditioned closed form") {
  // Sum of three iid Poisson(1) magnitudes conditioned on not all zero:
  // E = 3 / (1 - e^-3).
  RandomSource rng(19);
  const double expected = 3.0 / (1.0 - std::exp(-3.0));
  double sum = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i)
    sum += static_cast<double>(magnitude_sum(draw_coefficients_poisson(3, 1.0, rng)));
  CHECK(std::abs(sum / n - expected) < 0.05);
}

TEST_CASE("Poisson coefficient signs are balanced") {
  RandomSource rng(23);
  const int n = 100000;
  double sum = 0;
  Int magnitude = 0;
  for (int i = 0; i < n; ++i) {
    const auto alpha = draw_coefficients_poisson(2, 1.0, rng);
    sum += static_cast<double>(alpha[0] + alpha[1]);
    magnitude += magnitude_sum(alpha);
  }
  // Under sign symmetry each signed component has mean zero; the spread of
  // the sum is at most the total magnitude drawn.
  const double se = std::sqrt(static_cast<double>(magnitude));
  CHECK(std::abs(sum) < 4 * se);
}

TEST_CASE("geometric coefficient draw") {
  RandomSource rng(101);
  SUBCASE("total magnitude is never zero") {
    for (int i = 0; i < 2000; ++i)
      CHECK(magnitude_sum(draw_coefficients_geometric(3, 0.5, rng)) >= 1);
  }
  SUBCASE("pinned point probability at K=2, p=1/2") {
    // P(alpha = (1,0)) = P(total=1) * P(first cell) * P(plus sign) = 1/8.
    const int n = 100000;
    int hits = 0;
    for (int i = 0; i < n; ++i) {
      const auto alpha = draw_coefficients_geometric(2, 0.5, rng);
      if (alpha[0] == 1 && alpha[1] == 0) ++hits;
    }
    const double p = static_cast<double>(hits) / n;
    const double se = std::sqrt(0.125 * 0.875 / n);
    CHECK(std::abs(p - 0.125) < 3 * se);
  }
  SUBCASE("mean total magnitude is 1/p") {
    const int n = 100000;
    double sum = 0;
    for (int i = 0; i < n; ++i)
      sum += static_cast<double>(
          magnitude_sum(draw_coefficients_geometric(4, 0.1, rng)));
    CHECK(std::abs(sum / n - 10.0) < 0.2);
  }
}

TEST_CASE("compose_move") {
  const LatticeBasis basis = two_way_basic_moves(3, 3);
  SUBCASE("unit coefficients select the basis move") {
    std::vector<Int> alpha(basis.size(), 0);
    alpha[2] = 1;
    CHECK(compose_move(basis, alpha) == basis[2]);
  }
  SUBCASE("coefficients cancel on a redundant basis") {
    const Move z{{1, -1, -1, 1}};
    const LatticeBasis redundant(4, {z, z.negated()}, 1);
    const Move composed = compose_move(redundant, std::vector<Int>{1, 1});
    CHECK(composed.is_zero());
  }
  SUBCASE("random combinations stay in the kernel") {
    const IntMatrix a = no_three_factor_config(3, 3, 3).matrix;
    const LatticeBasis lifted =
        no_three_factor_lattice_basis(3, 3, 3, LiftStyle::LastSlicePivot);
    RandomSource rng(5);
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<Int> alpha(lifted.size());
      for (Int& c : alpha) c = static_cast<Int>(rng.next_below(9)) - 4;
      const Move z = compose_move(lifted, alpha);
      for (Int v : a.apply(z.z)) CHECK(v == 0);
    }
  }
}

TEST_CASE("move generator scales the Poisson rate by the basis size") {
  // The distribution parameter is the expected total magnitude: with K moves
  // each coefficient is Poisson(lambda/K), so the total is Poisson(lambda)
  // conditioned on not all zero, mean lambda / (1 - e^-lambda).
  const LatticeBasis basis =
      no_three_factor_lattice_basis(3, 3, 3, LiftStyle::LastSlicePivot);
  REQUIRE(basis.size() == 8);
  const MoveGenerator gen(basis, CoefficientDistribution::poisson(2.0));
  RandomSource rng(31);
  const int n = 100000;
  double sum = 0;
  for (int i = 0; i < n; ++i) {
    const auto alpha = gen.draw_coefficients(rng);
    const Int total = magnitude_sum(alpha);
    REQUIRE(total >= 1);
    sum += static_cast<double>(total);
  }
  const double expected = 2.0 / (1.0 - std::exp(-2.0));
  CHECK(std::abs(sum / n - expected) < 0.05);
}

TEST_CASE("move generator keeps the geometric total law") {
  const LatticeBasis basis =
      no_three_factor_lattice_basis(3, 3, 3, LiftStyle::LastSlicePivot);
  const MoveGenerator gen(basis, CoefficientDistribution::geometric(0.25));
  RandomSource rng(37);
  const int n = 100000;
  double sum = 0;
  for (int i = 0; i < n; ++i)
    sum += static_cast<double>(magnitude_sum(gen.draw_coefficients(rng)));
  CHECK(std::abs(sum / n - 4.0) < 0.1);
}

TEST_CASE("drawn moves cover every small kernel vector") {
  // ker A for 2x2 independence is spanned by one square move; the kernel
  // vectors with entries in [-3,3] are c*(1,-1,-1,1) for c in [-3,3]\{0}.
  const LatticeBasis basis = two_way_basic_moves(2, 2);
  const MoveGenerator gen(basis, CoefficientDistribution::poisson(1.0));
  RandomSource rng(41);
  bool seen[7] = {};
  for (int i = 0; i < 1000000; ++i) {
    const Move z = gen.draw(rng);
    const Int c = z.z[0];
    if (c >= -3 && c <= 3) seen[c + 3] = true;
  }
  for (int c = -3; c <= 3; ++c) {
    if (c == 0) continue;
    CHECK(seen[c + 3]);
  }
}

TEST_CASE("proposal law is symmetric under negation") {
  const LatticeBasis basis = two_way_basic_moves(2, 3);
  const MoveGenerator gen(basis, CoefficientDistribution::geometric(0.3));
  RandomSource rng(53);
  std::map<std::vector<Int>, int> counts;
  const int n = 200000;
  for (int i = 0; i < n; ++i) ++counts[gen.draw(rng).z];

  // The five most frequent moves must pair with their negations within
  // Monte Carlo error.
  std::vector<std::pair<int, std::vector<Int>>> ranked;
  for (const auto& [z, c] : counts) ranked.emplace_back(c, z);
  std::sort(ranked.rbegin(), ranked.rend());
  REQUIRE(ranked.size() >= 5);
  for (int i = 0; i < 5; ++i) {
    const auto& z = ranked[i].second;
    std::vector<Int> neg(z.size());
    for (std::size_t j = 0; j < z.size(); ++j) neg[j] = -z[j];
    const double a = ranked[i].first;
    const double b = counts.count(neg) ? counts.at(neg) : 0;
    CHECK(std::abs(a - b) <= 3 * std::sqrt(a + b));
  }
}

TEST_CASE("seeded draws are reproducible") {
  const LatticeBasis basis =
      no_three_factor_lattice_basis(3, 3, 3, LiftStyle::PairwiseSymmetric);
  const CoefficientDistribution dist = CoefficientDistribution::geometric(0.4);
  RandomSource a(99), b(99);
  for (int i = 0; i < 100; ++i) CHECK(draw_move(basis, dist, a) == draw_move(basis, dist, b));
}

TEST_CASE("independent basis never composes the zero move") {
  const LatticeBasis basis =
      no_three_factor_lattice_basis(3, 3, 3, LiftStyle::LastSlicePivot);
  const MoveGenerator gen(basis, CoefficientDistribution::poisson(1.0));
  RandomSource rng(61);
  for (int i = 0; i < 10000; ++i) CHECK_FALSE(gen.draw(rng).is_zero());
}

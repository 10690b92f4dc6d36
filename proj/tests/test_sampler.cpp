#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fiberwalk/configuration.hpp"
#include "fiberwalk/fiber.hpp"
#include "fiberwalk/sampler.hpp"

using namespace fiberwalk;

namespace {

const IntMatrix kPairSum = IntMatrix::from_rows({{1, 1}});

LatticeBasis pair_basis() { return LatticeBasis(2, {Move{{1, -1}}}, 1); }

}  // namespace

TEST_CASE("log_factorial agrees with the gamma function") {
  CHECK(log_factorial(0) == doctest::Approx(0.0));
  CHECK(log_factorial(1) == doctest::Approx(0.0));
  CHECK(log_factorial(5) == doctest::Approx(std::log(120.0)));
  CHECK(log_factorial(20) == doctest::Approx(std::lgamma(21.0)).epsilon(1e-12));
  // Outside the cached range the direct path must agree too.
  CHECK(log_factorial(1000005) ==
        doctest::Approx(std::lgamma(1000006.0)).epsilon(1e-12));
}

TEST_CASE("unnormalized target is 1/prod x!") {
  CHECK(log_unnormalized_target(Table{std::vector<Int>(6, 0)}) ==
        doctest::Approx(0.0));
  const double ratio =
      std::exp(log_unnormalized_target(Table{{1, 1}}) -
               log_unnormalized_target(Table{{2, 0}}));
  CHECK(ratio == doctest::Approx(2.0));
}

TEST_CASE("target_log_ratio matches the full difference on touched cells") {
  const Table x{{1, 1}};
  const Move z{{1, -1}};
  CHECK(target_log_ratio(x, z) ==
        doctest::Approx(log_unnormalized_target(Table{{2, 0}}) -
                        log_unnormalized_target(x)));

  const Table big{{3, 0, 7, 2, 5, 1}};
  const Move sparse{{0, 2, -1, 0, -1, 0}};
  std::vector<Int> moved = big.counts;
  for (std::size_t i = 0; i < moved.size(); ++i) moved[i] += sparse.z[i];
  CHECK(target_log_ratio(big, sparse) ==
        doctest::Approx(log_unnormalized_target(Table{moved}) -
                        log_unnormalized_target(big)));
}

TEST_CASE("single steps realize the exact transition kernel") {
  // Fiber of A=[1 1], t=2: states (2,0),(1,1),(0,2) with masses
  // (1/4,1/2,1/4). With one basis move and Poisson(1) coefficients the
  // proposal is z = c*(1,-1), |c| ~ Poisson(1) conditioned nonzero:
  //   q(|c|=1) = e^-1/(1-e^-1), halved per sign.
  const double q1 = std::exp(-1.0) / (1.0 - std::exp(-1.0)) / 2.0;
  const double q2 = q1 / 2.0;
  const CoefficientDistribution dist = CoefficientDistribution::poisson(1.0);
  const LatticeBasis basis = pair_basis();
  RandomSource rng(17);
  const int n = 200000;

  SUBCASE("from the mode, moving out accepts with probability 1/2") {
    int to_20 = 0, to_02 = 0;
    for (int i = 0; i < n; ++i) {
      const Table next = mh_step(Table{{1, 1}}, basis, dist, rng);
      if (next.counts == std::vector<Int>{2, 0}) ++to_20;
      if (next.counts == std::vector<Int>{0, 2}) ++to_02;
    }
    CHECK(std::abs(static_cast<double>(to_20) / n - q1 * 0.5) < 0.005);
    CHECK(std::abs(static_cast<double>(to_02) / n - q1 * 0.5) < 0.005);
  }
  SUBCASE("from a corner, moving to the mode accepts with probability 1") {
    int to_11 = 0, to_02 = 0;
    for (int i = 0; i < n; ++i) {
      const Table next = mh_step(Table{{2, 0}}, basis, dist, rng);
      if (next.counts == std::vector<Int>{1, 1}) ++to_11;
      if (next.counts == std::vector<Int>{0, 2}) ++to_02;
    }
    CHECK(std::abs(static_cast<double>(to_11) / n - q1) < 0.005);
    CHECK(std::abs(static_cast<double>(to_02) / n - q2) < 0.005);
  }
}

TEST_CASE("negative proposals reject in place") {
  // On the t = 0 fiber every nonzero move leaves a negative cell.
  Table x{{0, 0}};
  const MoveGenerator gen(pair_basis(), CoefficientDistribution::poisson(1.0));
  RandomSource rng(29);
  StepCounters counters;
  for (int i = 0; i < 100; ++i) CHECK_FALSE(mh_step(x, gen, rng, counters));
  CHECK(x.counts == std::vector<Int>{0, 0});
  CHECK(counters.proposals == 100);
  CHECK(counters.accepted == 0);
  CHECK(counters.negative_rejections == 100);
}

TEST_CASE("series length is iterations over thin") {
  const Table start{{1, 1}};
  const StatisticFn stat = [](const Table& x) {
    return static_cast<double>(x.counts[0]);
  };
  ChainConfig cfg;
  cfg.dist = CoefficientDistribution::poisson(1.0);
  cfg.iterations = 1;
  cfg.thin = 1;
  CHECK(run_chain(start, kPairSum, pair_basis(), cfg, stat).series.size() == 1);
  cfg.iterations = 10;
  cfg.thin = 3;
  CHECK(run_chain(start, kPairSum, pair_basis(), cfg, stat).series.size() == 3);
}

TEST_CASE("long run matches the exact fiber law") {
  const Fiber fiber =
      enumerate_fiber(kPairSum, SufficientStatistic{{2}});
  REQUIRE(fiber.size() == 3);
  const FiberIndex index(fiber);
  std::vector<Int> visits(fiber.size(), 0);

  ChainConfig cfg;
  cfg.dist = CoefficientDistribution::poisson(1.0);
  cfg.burn_in = 1000;
  cfg.iterations = 100000;
  cfg.seed = 2024;
  const StatisticFn stat = [](const Table&) { return 0.0; };
  const StepObserver observer = [&](const Table& x, Int) {
    ++visits[index.index_of(x)];
  };
  run_chain(Table{{2, 0}}, kPairSum, pair_basis(), cfg, stat, observer);
  CHECK(empirical_vs_exact(visits, fiber) < 0.02);
}

TEST_CASE("constant statistic gives a constant series") {
  ChainConfig cfg;
  cfg.dist = CoefficientDistribution::geometric(0.5);
  cfg.iterations = 500;
  const ChainRun run =
      run_chain(Table{{1, 1}}, kPairSum, pair_basis(), cfg,
                [](const Table&) { return 7.5; });
  for (double v : run.series) CHECK(v == 7.5);
}

TEST_CASE("chains are deterministic under the seed") {
  ChainConfig cfg;
  cfg.dist = CoefficientDistribution::poisson(1.0);
  cfg.burn_in = 100;
  cfg.iterations = 2000;
  cfg.seed = 555;
  const StatisticFn stat = [](const Table& x) {
    return static_cast<double>(x.counts[0]);
  };
  const ChainRun a = run_chain(Table{{1, 1}}, kPairSum, pair_basis(), cfg, stat);
  const ChainRun b = run_chain(Table{{1, 1}}, kPairSum, pair_basis(), cfg, stat);
  CHECK(a.series == b.series);
  CHECK(a.final_table.counts == b.final_table.counts);
  CHECK(a.accepted == b.accepted);
}

TEST_CASE("chain bookkeeping is consistent") {
  ChainConfig cfg;
  cfg.dist = CoefficientDistribution::geometric(0.3);
  cfg.burn_in = 500;
  cfg.iterations = 5000;
  cfg.seed = 7;
  cfg.check_fiber = true;
  const ChainRun run = run_chain(Table{{3, 1}}, kPairSum, pair_basis(), cfg,
                                 [](const Table&) { return 0.0; });
  CHECK(run.proposals == cfg.burn_in + cfg.iterations);
  CHECK(run.accepted <= run.proposals);
  CHECK(run.negative_rejections <= run.proposals - run.accepted);
  CHECK(run.acceptance_rate() > 0.0);
  CHECK(run.final_table.total() == 4);
}

TEST_CASE("a basis outside the kernel is rejected up front") {
  const LatticeBasis bad(2, {Move{{1, 1}}}, 1);
  ChainConfig cfg;
  cfg.dist = CoefficientDistribution::poisson(1.0);
  CHECK_THROWS_AS(run_chain(Table{{1, 1}}, kPairSum, bad, cfg,
                            [](const Table&) { return 0.0; }),
                  std::invalid_argument);
}

TEST_CASE("statistic failures carry the step") {
  ChainConfig cfg;
  cfg.dist = CoefficientDistribution::poisson(1.0);
  cfg.iterations = 50;
  cfg.thin = 10;
  int calls = 0;
  try {
    run_chain(Table{{1, 1}}, kPairSum, pair_basis(), cfg,
              [&](const Table&) -> double {
                if (++calls == 3) throw std::runtime_error("refit blew up");
                return 0.0;
              });
    FAIL("expected StatisticError");
  } catch (const StatisticError& e) {
    CHECK(e.step() == 30);
    CHECK(std::string(e.what()).find("refit blew up") != std::string::npos);
  }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "fiberwalk/configuration.hpp"
#include "fiberwalk/mle.hpp"
#include "fiberwalk/random_source.hpp"

using namespace fiberwalk;

namespace {

double refit_residual(const IntMatrix& a, const FittedModel& fit,
                      const SufficientStatistic& t) {
  double worst = 0, scale = 1;
  for (int r = 0; r < a.rows(); ++r) {
    double sum = 0;
    for (int c = 0; c < a.cols(); ++c)
      sum += static_cast<double>(a(r, c)) * fit.fitted_means[c];
    worst = std::max(worst, std::abs(sum - static_cast<double>(t.t[r])));
    scale = std::max(scale, std::abs(static_cast<double>(t.t[r])));
  }
  return worst / scale;
}

Table random_positive_table(int cells, RandomSource& rng) {
  std::vector<Int> counts(cells);
  for (Int& c : counts) c = 1 + static_cast<Int>(rng.next_below(5));
  return Table{std::move(counts)};
}

}  // namespace

TEST_CASE("a table already in the model is its own fit") {
  const Configuration cfg = independence_config(2, 2);
  const Table x{{1, 1, 1, 1}};
  const FittedModel fit =
      fit_toric_mle(cfg.matrix, sufficient_statistic(cfg.matrix, x));
  for (int i = 0; i < 4; ++i)
    CHECK(fit.fitted_means[i] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(lr_statistic(x, fit) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("the diagonal 2x2 table fits to the uniform table") {
  const Configuration cfg = independence_config(2, 2);
  const Table x{{2, 0, 0, 2}};
  const FittedModel fit =
      fit_toric_mle(cfg.matrix, sufficient_statistic(cfg.matrix, x));
  for (int i = 0; i < 4; ++i)
    CHECK(fit.fitted_means[i] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(lr_statistic(x, fit) ==
        doctest::Approx(8.0 * std::log(2.0)).epsilon(1e-9));
}

TEST_CASE("random no-three-factor tables fit within tolerance") {
  const Configuration cfg = no_three_factor_config(3, 3, 3);
  RandomSource rng(404);
  for (int trial = 0; trial < 10; ++trial) {
    const Table x = random_positive_table(cfg.cell_count(), rng);
    const SufficientStatistic t = sufficient_statistic(cfg.matrix, x);
    const FittedModel fit = fit_toric_mle(cfg.matrix, t);
    CHECK(refit_residual(cfg.matrix, fit, t) <= 1e-8);
    for (double m : fit.fitted_means) CHECK(m > 0);
    CHECK(lr_statistic(x, fit) >= -1e-9);
  }
}

TEST_CASE("a zero margin raises a boundary error naming the row") {
  const Configuration cfg = independence_config(2, 2);
  const Table x{{0, 0, 1, 1}};  // first row margin is zero
  try {
    fit_toric_mle(cfg.matrix, sufficient_statistic(cfg.matrix, x));
    FAIL("expected BoundaryError");
  } catch (const BoundaryError& e) {
    REQUIRE(!e.rows().empty());
    CHECK(std::find(e.rows().begin(), e.rows().end(), 0) != e.rows().end());
  }
}

TEST_CASE("tighter tolerances are honored") {
  const Configuration cfg = independence_config(3, 3);
  RandomSource rng(7);
  const Table x = random_positive_table(9, rng);
  const SufficientStatistic t = sufficient_statistic(cfg.matrix, x);
  FitOptions opts;
  opts.tolerance = 1e-10;
  const FittedModel fit = fit_toric_mle(cfg.matrix, t, opts);
  CHECK(refit_residual(cfg.matrix, fit, t) <= 1e-10);
}

TEST_CASE("the fitter exposes the exact rank and is reusable") {
  const ToricFitter fitter(independence_config(3, 3).matrix);
  CHECK(fitter.rank() == 5);
  const IntMatrix a = independence_config(3, 3).matrix;
  RandomSource rng(99);
  const Table x = random_positive_table(9, rng);
  const SufficientStatistic t = sufficient_statistic(a, x);
  const FittedModel first = fitter.fit(t);
  const FittedModel second = fitter.fit(t);
  for (int i = 0; i < 9; ++i)
    CHECK(first.fitted_means[i] == doctest::Approx(second.fitted_means[i]));
}

TEST_CASE("warm starts reach the same optimum faster") {
  const IntMatrix a = no_three_factor_config(3, 3, 2).matrix;
  const ToricFitter fitter(a);
  RandomSource rng(31);
  const Table x = random_positive_table(a.cols(), rng);
  const SufficientStatistic t = sufficient_statistic(a, x);
  const FittedModel cold = fitter.fit(t);

  // Re-fitting the same statistic from its own solution is nearly free.
  const FittedModel resumed = fitter.fit(t, {}, &cold);
  CHECK(resumed.iterations <= cold.iterations);
  for (int i = 0; i < a.cols(); ++i)
    CHECK(resumed.fitted_means[i] ==
          doctest::Approx(cold.fitted_means[i]).epsilon(1e-8));

  // A neighboring statistic warm-started from here matches its cold fit.
  std::vector<Int> shifted = x.counts;
  shifted[0] += 1;
  shifted[1] += 1;
  const SufficientStatistic t2 = sufficient_statistic(a, Table{shifted});
  const FittedModel warm = fitter.fit(t2, {}, &cold);
  const FittedModel cold2 = fitter.fit(t2);
  for (int i = 0; i < a.cols(); ++i)
    CHECK(warm.fitted_means[i] ==
          doctest::Approx(cold2.fitted_means[i]).epsilon(1e-7));

  FittedModel wrong_shape;
  wrong_shape.theta = {0.0, 0.0};
  CHECK_THROWS_AS(fitter.fit(t, {}, &wrong_shape), std::invalid_argument);
}

TEST_CASE("nested-model statistic matches the saturated difference") {
  const Configuration null_cfg = independence_config(2, 2);
  Configuration saturated;
  saturated.matrix = IntMatrix::identity(4);
  saturated.cells = {{0}, {1}, {2}, {3}};
  RandomSource rng(17);
  const Table x = random_positive_table(4, rng);
  const FittedModel null_fit = fit_toric_mle(
      null_cfg.matrix, sufficient_statistic(null_cfg.matrix, x));
  const FittedModel alt_fit = fit_toric_mle(
      saturated.matrix, sufficient_statistic(saturated.matrix, x));

  // The saturated fit reproduces the table, so the nested LR equals the
  // goodness-of-fit LR of the null model.
  CHECK(lr_statistic(x, null_fit, alt_fit) ==
        doctest::Approx(lr_statistic(x, null_fit)).epsilon(1e-9));
  CHECK(lr_statistic(x, null_fit, null_fit) == doctest::Approx(0.0));
}

TEST_CASE("fitted means ignore the row order of A") {
  const IntMatrix a = independence_config(3, 3).matrix;
  IntMatrix permuted(a.rows(), a.cols());
  const std::vector<int> order{4, 2, 0, 5, 1, 3};
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) permuted(r, c) = a(order[r], c);

  RandomSource rng(23);
  const Table x = random_positive_table(9, rng);
  const FittedModel base = fit_toric_mle(a, sufficient_statistic(a, x));
  const FittedModel swapped =
      fit_toric_mle(permuted, sufficient_statistic(permuted, x));
  for (int i = 0; i < 9; ++i)
    CHECK(base.fitted_means[i] ==
          doctest::Approx(swapped.fitted_means[i]).epsilon(1e-8));
}

TEST_CASE("the configuration overload matches the matrix overload") {
  const Configuration cfg = independence_config(2, 3);
  RandomSource rng(29);
  const Table x = random_positive_table(6, rng);
  const SufficientStatistic t = sufficient_statistic(cfg.matrix, x);
  const FittedModel via_matrix = fit_toric_mle(cfg.matrix, t);
  const FittedModel via_config = fit_toric_mle(cfg, t);
  for (int i = 0; i < 6; ++i)
    CHECK(via_matrix.fitted_means[i] ==
          doctest::Approx(via_config.fitted_means[i]));
}

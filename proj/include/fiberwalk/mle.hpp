#ifndef FIBERWALK_MLE_HPP
#define FIBERWALK_MLE_HPP

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

#include "fiberwalk/configuration.hpp"
#include "fiberwalk/table.hpp"

namespace fiberwalk {

/// Some margin of t is zero while its row has nonnegative coefficients, so
/// the MLE pushes the touched cells to zero and leaves the model interior.
class BoundaryError : public std::runtime_error {
 public:
  explicit BoundaryError(std::vector<int> rows);
  const std::vector<int>& rows() const { return rows_; }

 private:
  std::vector<int> rows_;
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(double residual, int iterations);
  double residual() const { return residual_; }

 private:
  double residual_;
};

struct FitOptions {
  int max_iterations = 500;
  double tolerance = 1e-8;  // on |A m - t|_inf / max(1, |t|_inf)
};

struct FittedModel {
  std::vector<double> fitted_means;  // one positive mean per cell
  std::vector<double> theta;         // one natural parameter per row of A
  int iterations = 0;
  double residual = 0.0;
};

/// Maximizes t.theta - sum_i exp(a_i.theta) by damped Newton steps, with
/// theta confined to the column space of A so the reduced Hessian stays
/// positive definite. The orthonormal reduction of A is computed once at
/// construction (the rank by exact integer elimination, not a float
/// threshold), so repeated fits against the same A only pay for the Newton
/// iterations. fit() is const and safe to share across threads.
class ToricFitter {
 public:
  explicit ToricFitter(const IntMatrix& a);

  /// Fitted means m(i) = exp(a_i.theta) with A m = t within opts.tolerance.
  /// warm_start, when given, seeds Newton from an earlier fit's theta; a
  /// nearby statistic then converges in a couple of steps instead of a
  /// cold run. The result is the same optimum either way.
  FittedModel fit(const SufficientStatistic& t, const FitOptions& opts = {},
                  const FittedModel* warm_start = nullptr) const;

  int rank() const { return rank_; }

 private:
  int rows_;
  int cols_;
  int rank_;
  std::vector<int> nonneg_rows_;  // rows with all coefficients >= 0
  std::vector<int> zero_rows_;
  Eigen::MatrixXd a_;
  Eigen::MatrixXd q_;  // rows x rank, orthonormal basis of col(A)
  Eigen::MatrixXd m_;  // cols x rank, M = A^T Q
};

FittedModel fit_toric_mle(const IntMatrix& a, const SufficientStatistic& t,
                          const FitOptions& opts = {});
FittedModel fit_toric_mle(const Configuration& config,
                          const SufficientStatistic& t,
                          const FitOptions& opts = {});

/// 2 sum_{i: x(i)>0} x(i) log(x(i)/m(i)) against the saturated model.
/// Positive counts over a zero fitted mean give +infinity.
double lr_statistic(const Table& x, const FittedModel& fitted);

/// LR of the null fit against a larger model's fit on the same table,
/// 2 sum_i x(i) log(m_alt(i)/m_null(i)). Equals the difference of the two
/// saturated-model statistics without the infinity cancellation hazard.
double lr_statistic(const Table& x, const FittedModel& null_fit,
                    const FittedModel& alt_fit);

}  // namespace fiberwalk

#endif

#include "fiberwalk/mle.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "fiberwalk/hermite.hpp"

namespace fiberwalk {

namespace {

std::string join_rows(const std::vector<int>& rows) {
  std::string s;
  for (int r : rows) {
    if (!s.empty()) s += ", ";
    s += std::to_string(r);
  }
  return s;
}

std::string format_residual(double residual) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", residual);
  return buf;
}

}  // namespace

BoundaryError::BoundaryError(std::vector<int> rows)
    : std::runtime_error("statistic lies on the model boundary: rows " +
                         join_rows(rows) + " force structural zeros"),
      rows_(std::move(rows)) {}

ConvergenceError::ConvergenceError(double residual, int iterations)
    : std::runtime_error("fit did not converge in " +
                         std::to_string(iterations) +
                         " iterations (residual " + format_residual(residual) +
                         ")"),
      residual_(residual) {}

ToricFitter::ToricFitter(const IntMatrix& a)
    : rows_(a.rows()), cols_(a.cols()), rank_(fiberwalk::rank(a)) {
  if (rank_ == 0) throw std::invalid_argument("configuration has rank zero");
  for (int r = 0; r < rows_; ++r) {
    bool nonneg = true, nonzero = false;
    for (int c = 0; c < cols_; ++c) {
      if (a(r, c) < 0) nonneg = false;
      if (a(r, c) != 0) nonzero = true;
    }
    if (!nonzero)
      zero_rows_.push_back(r);
    else if (nonneg)
      nonneg_rows_.push_back(r);
  }
  a_.resize(rows_, cols_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) a_(r, c) = static_cast<double>(a(r, c));
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a_);
  q_ = qr.householderQ() * Eigen::MatrixXd::Identity(rows_, rank_);
  m_ = a_.transpose() * q_;
}

FittedModel ToricFitter::fit(const SufficientStatistic& t,
                             const FitOptions& opts,
                             const FittedModel* warm_start) const {
  if (static_cast<int>(t.t.size()) != rows_)
    throw std::invalid_argument("statistic length does not match row count");
  for (int r : zero_rows_)
    if (t.t[r] != 0)
      throw std::invalid_argument("zero row " + std::to_string(r) +
                                  " with nonzero statistic entry");
  std::vector<int> boundary_rows;
  for (int r : nonneg_rows_) {
    if (t.t[r] < 0)
      throw std::invalid_argument("negative statistic entry at row " +
                                  std::to_string(r) +
                                  " is infeasible for nonnegative counts");
    if (t.t[r] == 0) boundary_rows.push_back(r);
  }
  if (!boundary_rows.empty()) throw BoundaryError(std::move(boundary_rows));

  Eigen::VectorXd td(rows_);
  for (int r = 0; r < rows_; ++r) td(r) = static_cast<double>(t.t[r]);
  const Eigen::VectorXd tq = q_.transpose() * td;

  auto log_likelihood = [&](const Eigen::VectorXd& phi,
                            const Eigen::VectorXd& eta) {
    return tq.dot(phi) - eta.array().exp().sum();
  };

  Eigen::VectorXd phi = Eigen::VectorXd::Zero(rank_);
  if (warm_start) {
    if (static_cast<int>(warm_start->theta.size()) != rows_)
      throw std::invalid_argument("warm start does not match row count");
    // theta = Q phi, so the previous reduced coordinates are Q^T theta.
    Eigen::Map<const Eigen::VectorXd> theta(warm_start->theta.data(), rows_);
    phi = q_.transpose() * theta;
  }
  Eigen::VectorXd eta = m_ * phi;
  Eigen::VectorXd mu = eta.array().exp();
  const double t_inf = std::max(1.0, td.cwiseAbs().maxCoeff());
  double residual = (a_ * mu - td).cwiseAbs().maxCoeff() / t_inf;
  int iter = 0;

  while (residual > opts.tolerance && iter < opts.max_iterations) {
    ++iter;
    Eigen::VectorXd grad = tq - m_.transpose() * mu;
    Eigen::MatrixXd hess = m_.transpose() * mu.asDiagonal() * m_;
    Eigen::VectorXd delta = hess.llt().solve(grad);
    const double value = log_likelihood(phi, eta);
    // Near the optimum the per-step improvement underflows against |value|,
    // so a strict-improvement test would reject full Newton steps exactly
    // when they converge quadratically. Accept anything that does not lose
    // more than a relative slack; halve only on real decreases or non-finite
    // candidates (overflowing eta, near-singular Hessian).
    const double slack = 1e-12 * (1.0 + std::abs(value));
    double step = 1.0;
    Eigen::VectorXd next_phi = phi + delta;
    Eigen::VectorXd next_eta = m_ * next_phi;
    double candidate = log_likelihood(next_phi, next_eta);
    bool accepted = false;
    for (int halvings = 0; halvings < 64; ++halvings) {
      if (std::isfinite(candidate) && candidate >= value - slack) {
        accepted = true;
        break;
      }
      step *= 0.5;
      next_phi = phi + step * delta;
      next_eta = m_ * next_phi;
      candidate = log_likelihood(next_phi, next_eta);
    }
    if (!accepted) break;
    phi = next_phi;
    eta = next_eta;
    mu = eta.array().exp();
    residual = (a_ * mu - td).cwiseAbs().maxCoeff() / t_inf;
  }

  if (residual > opts.tolerance) throw ConvergenceError(residual, iter);

  FittedModel fit;
  fit.fitted_means.assign(mu.data(), mu.data() + cols_);
  Eigen::VectorXd theta = q_ * phi;
  fit.theta.assign(theta.data(), theta.data() + rows_);
  fit.iterations = iter;
  fit.residual = residual;
  return fit;
}

FittedModel fit_toric_mle(const IntMatrix& a, const SufficientStatistic& t,
                          const FitOptions& opts) {
  return ToricFitter(a).fit(t, opts);
}

FittedModel fit_toric_mle(const Configuration& config,
                          const SufficientStatistic& t,
                          const FitOptions& opts) {
  return fit_toric_mle(config.matrix, t, opts);
}

double lr_statistic(const Table& x, const FittedModel& fitted) {
  if (x.dimension() != static_cast<int>(fitted.fitted_means.size()))
    throw std::invalid_argument("table does not match fitted model");
  double acc = 0.0;
  for (int i = 0; i < x.dimension(); ++i) {
    Int xi = x.counts[i];
    if (xi == 0) continue;
    double mi = fitted.fitted_means[i];
    if (!(mi > 0.0)) return std::numeric_limits<double>::infinity();
    acc += static_cast<double>(xi) * std::log(static_cast<double>(xi) / mi);
  }
  return 2.0 * acc;
}

double lr_statistic(const Table& x, const FittedModel& null_fit,
                    const FittedModel& alt_fit) {
  if (x.dimension() != static_cast<int>(null_fit.fitted_means.size()) ||
      x.dimension() != static_cast<int>(alt_fit.fitted_means.size()))
    throw std::invalid_argument("table does not match fitted models");
  double acc = 0.0;
  for (int i = 0; i < x.dimension(); ++i) {
    Int xi = x.counts[i];
    if (xi == 0) continue;
    acc += static_cast<double>(xi) *
           std::log(alt_fit.fitted_means[i] / null_fit.fitted_means[i]);
  }
  return 2.0 * acc;
}

}  // namespace fiberwalk

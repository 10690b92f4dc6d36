#ifndef FIBERWALK_SAMPLER_HPP
#define FIBERWALK_SAMPLER_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "fiberwalk/movegen.hpp"
#include "fiberwalk/table.hpp"

namespace fiberwalk {

/// Raised when a chain state stops satisfying A x = t. This is a program
/// defect, never a data problem, so it gets its own type for the CLI to
/// map to a distinct exit code.
class FiberBreachError : public std::runtime_error {
 public:
  explicit FiberBreachError(const std::string& what)
      : std::runtime_error(what) {}
};

/// The statistic callback failed during a chain run; carries the step for
/// context. In practice this means a per-sample refit did not converge.
class StatisticError : public std::runtime_error {
 public:
  StatisticError(Int step, const std::string& what)
      : std::runtime_error("statistic evaluation failed at step " +
                           std::to_string(step) + ": " + what),
        step_(step) {}
  Int step() const { return step_; }

 private:
  Int step_;
};

struct ChainConfig {
  Int burn_in = 0;
  Int iterations = 1;
  Int thin = 1;
  std::uint64_t seed = 0;
  CoefficientDistribution dist;
  /// Re-verify A x = t after every step even in release builds.
  bool check_fiber = false;
};

struct ChainRun {
  std::vector<double> series;  // one value per retained step
  Int proposals = 0;
  Int accepted = 0;
  Int negative_rejections = 0;
  Int zero_moves = 0;
  Table final_table;

  double acceptance_rate() const {
    return proposals == 0 ? 0.0
                          : static_cast<double>(accepted) / proposals;
  }
};

/// log(n!) via the log-gamma function; cached for n <= 10^6.
double log_factorial(Int n);

/// -sum_i log(x(i)!): the log of the hypergeometric mass on the fiber, up
/// to the additive normalizing constant.
double log_unnormalized_target(const Table& x);

/// log pi(x + z) - log pi(x), summed over the cells z touches only. The
/// caller must have checked x + z is nonnegative.
double target_log_ratio(const Table& x, const Move& z);

struct StepCounters {
  Int proposals = 0;
  Int accepted = 0;
  Int negative_rejections = 0;
  Int zero_moves = 0;
};

/// One Metropolis-Hastings step in place. Zero proposals and proposals
/// leaving a negative cell reject automatically; otherwise the move is
/// accepted with probability min(1, pi(y)/pi(x)), valid because the
/// proposal law is symmetric. Returns whether the state changed.
bool mh_step(Table& x, const MoveGenerator& gen, RandomSource& rng,
             StepCounters& counters);

/// Out-of-place convenience for single-step experiments.
Table mh_step(const Table& x, const LatticeBasis& basis,
              const CoefficientDistribution& dist, RandomSource& rng);

using StatisticFn = std::function<double(const Table&)>;
using StepObserver = std::function<void(const Table&, Int step)>;

/// Runs burn_in discarded steps, then cfg.iterations steps, recording
/// statistic(x) every cfg.thin steps. The observer, when set, sees the
/// state after every retained-phase step (before thinning). Deterministic
/// under cfg.seed. Basis moves are verified to lie in ker A up front.
ChainRun run_chain(const Table& start, const IntMatrix& a,
                   const LatticeBasis& basis, const ChainConfig& cfg,
                   const StatisticFn& statistic,
                   const StepObserver& observer = {});

}  // namespace fiberwalk

#endif

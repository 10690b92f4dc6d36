#include "fiberwalk/sampler.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fiberwalk {

namespace {

constexpr Int kLogFactCache = 1'000'000;

const std::vector<double>& log_fact_table() {
  static const std::vector<double> table = [] {
    std::vector<double> t(kLogFactCache + 1);
    for (Int k = 0; k <= kLogFactCache; ++k)
      t[static_cast<std::size_t>(k)] =
          std::lgamma(static_cast<double>(k) + 1.0);
    return t;
  }();
  return table;
}

}  // namespace

double log_factorial(Int n) {
  if (n < 0) throw std::domain_error("log_factorial of a negative count");
  if (n <= kLogFactCache)
    return log_fact_table()[static_cast<std::size_t>(n)];
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double log_unnormalized_target(const Table& x) {
  double s = 0.0;
  for (Int v : x.counts) s += log_factorial(v);
  return -s;
}

double target_log_ratio(const Table& x, const Move& z) {
  double delta = 0.0;
  for (int i = 0; i < z.dimension(); ++i) {
    if (z.z[i] == 0) continue;
    delta += log_factorial(x.counts[i]) -
             log_factorial(checked_add(x.counts[i], z.z[i]));
  }
  return delta;
}

bool mh_step(Table& x, const MoveGenerator& gen, RandomSource& rng,
             StepCounters& counters) {
  Move z = gen.draw(rng);
  ++counters.proposals;
  if (z.is_zero()) {
    ++counters.zero_moves;
    return false;
  }
  for (int i = 0; i < z.dimension(); ++i) {
    if (z.z[i] < 0 && x.counts[i] + z.z[i] < 0) {
      ++counters.negative_rejections;
      return false;
    }
  }
  double delta = target_log_ratio(x, z);
  if (delta < 0.0 && rng.next_unit() >= std::exp(delta)) return false;
  for (int i = 0; i < z.dimension(); ++i)
    if (z.z[i] != 0) x.counts[i] += z.z[i];
  ++counters.accepted;
  return true;
}

Table mh_step(const Table& x, const LatticeBasis& basis,
              const CoefficientDistribution& dist, RandomSource& rng) {
  Table out = x;
  MoveGenerator gen(basis, dist);
  StepCounters counters;
  mh_step(out, gen, rng, counters);
  return out;
}

ChainRun run_chain(const Table& start, const IntMatrix& a,
                   const LatticeBasis& basis, const ChainConfig& cfg,
                   const StatisticFn& statistic,
                   const StepObserver& observer) {
  if (a.cols() != start.dimension())
    throw std::invalid_argument("start table does not match configuration");
  if (basis.dimension() != a.cols())
    throw std::invalid_argument("basis dimension does not match configuration");
  if (cfg.iterations < 1) throw std::invalid_argument("iterations must be >= 1");
  if (cfg.thin < 1) throw std::invalid_argument("thin must be >= 1");
  if (cfg.burn_in < 0) throw std::invalid_argument("burn-in must be >= 0");
  for (int k = 0; k < basis.size(); ++k) {
    for (Int v : a.apply(basis[k].z))
      if (v != 0)
        throw std::invalid_argument("basis move " + std::to_string(k) +
                                    " is not in the kernel of A");
  }

  const std::vector<Int> t = a.apply(start.counts);
  Table x = start;
  MoveGenerator gen(basis, cfg.dist);
  RandomSource rng(cfg.seed);
  ChainRun run;
  run.series.reserve(static_cast<std::size_t>(cfg.iterations / cfg.thin));
  StepCounters counters;

#ifndef NDEBUG
  const bool check_fiber = true;
#else
  const bool check_fiber = cfg.check_fiber;
#endif
  auto checked_step = [&](Int global_step) {
    mh_step(x, gen, rng, counters);
    if (check_fiber && a.apply(x.counts) != t)
      throw FiberBreachError("chain left the fiber at step " +
                             std::to_string(global_step));
  };

  for (Int s = 0; s < cfg.burn_in; ++s) checked_step(s + 1);
  for (Int s = 1; s <= cfg.iterations; ++s) {
    checked_step(cfg.burn_in + s);
    if (observer) observer(x, s);
    if (s % cfg.thin == 0) {
      try {
        run.series.push_back(statistic(x));
      } catch (const StatisticError&) {
        throw;
      } catch (const std::exception& e) {
        throw StatisticError(s, e.what());
      }
    }
  }

  run.proposals = counters.proposals;
  run.accepted = counters.accepted;
  run.negative_rejections = counters.negative_rejections;
  run.zero_moves = counters.zero_moves;
  run.final_table = std::move(x);
  return run;
}

}  // namespace fiberwalk

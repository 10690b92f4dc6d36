#ifndef FIBERWALK_STATS_HPP
#define FIBERWALK_STATS_HPP

#include <span>
#include <vector>

#include "fiberwalk/configuration.hpp"
#include "fiberwalk/random_source.hpp"
#include "fiberwalk/table.hpp"

namespace fiberwalk {

/// Regularized lower incomplete gamma P(df/2, v/2); absolute error below
/// 1e-10 over the tested range.
double chi_square_cdf(double v, int df);

struct PValue {
  double value = 0.0;
  double std_error = 0.0;  // sqrt(p (1-p) / N)
};

/// Proportion of sampled statistics >= observed. The observed table's own
/// statistic enters only through its presence in the series.
PValue exact_pvalue(std::span<const double> series, double observed);

/// Biased-normalization autocorrelation rho(0..max_lag); rho(0) = 1.
/// A constant series has no autocorrelation and raises domain_error.
std::vector<double> autocorrelation(std::span<const double> series,
                                    int max_lag);

/// Multinomial sample of size n with uniform cell probabilities.
Table generate_null_table(const IntMatrix& a, Int n, RandomSource& rng);
Table generate_null_table(const Configuration& config, Int n,
                          RandomSource& rng);

struct Histogram {
  std::vector<double> edges;  // size bins+1, equal width
  std::vector<Int> counts;    // size bins, sums to the series length
};

/// Freedman-Diaconis width by default; bins_override > 0 forces the count.
Histogram build_histogram(std::span<const double> series,
                          int bins_override = 0);

struct PathPoint {
  Int step = 0;
  double value = 0.0;
};

struct Diagnostics {
  Histogram histogram;
  std::vector<double> autocorr;  // lags 0..max_lag
  std::vector<PathPoint> path;   // subsampled trace
};

/// step_stride maps series positions back to chain steps (the thinning
/// interval). max_lag is clamped below the series length.
Diagnostics compute_diagnostics(std::span<const double> series,
                                int max_lag = 50, int bins_override = 0,
                                int path_points = 1000, Int step_stride = 1);

}  // namespace fiberwalk

#endif

#include "fiberwalk/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fiberwalk {

namespace {

// Series expansion of P(a, x), reliable for x < a + 1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int n = 0; n < 4000; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for Q(a, x) by the modified Lentz method, reliable
// for x >= a + 1.
double gamma_q_continued_fraction(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 4000; ++i) {
    double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double chi_square_cdf(double v, int df) {
  if (df < 1) throw std::invalid_argument("degrees of freedom must be >= 1");
  if (!(v >= 0.0))
    throw std::invalid_argument("chi-square statistic must be >= 0");
  double a = 0.5 * df;
  double x = 0.5 * v;
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_continued_fraction(a, x);
}

PValue exact_pvalue(std::span<const double> series, double observed) {
  if (series.empty()) throw std::invalid_argument("empty statistic series");
  std::size_t hits = 0;
  for (double v : series)
    if (v >= observed) ++hits;
  double n = static_cast<double>(series.size());
  double p = static_cast<double>(hits) / n;
  return {p, std::sqrt(p * (1.0 - p) / n)};
}

std::vector<double> autocorrelation(std::span<const double> series,
                                    int max_lag) {
  const std::size_t n = series.size();
  if (max_lag < 0) throw std::invalid_argument("max_lag must be >= 0");
  if (n <= static_cast<std::size_t>(max_lag))
    throw std::invalid_argument("series shorter than requested lag range");
  double mean = 0.0;
  for (double v : series) mean += v;
  mean /= static_cast<double>(n);
  double c0 = 0.0;
  for (double v : series) c0 += (v - mean) * (v - mean);
  if (c0 == 0.0)
    throw std::domain_error("autocorrelation of a constant series");
  std::vector<double> rho(static_cast<std::size_t>(max_lag) + 1);
  rho[0] = 1.0;
  for (int lag = 1; lag <= max_lag; ++lag) {
    double c = 0.0;
    for (std::size_t i = 0; i + lag < n; ++i)
      c += (series[i] - mean) * (series[i + lag] - mean);
    rho[static_cast<std::size_t>(lag)] = c / c0;
  }
  return rho;
}

Table generate_null_table(const IntMatrix& a, Int n, RandomSource& rng) {
  if (n < 1) throw std::invalid_argument("sample size must be >= 1");
  if (a.cols() < 1) throw std::invalid_argument("configuration has no cells");
  std::vector<Int> counts(a.cols(), 0);
  for (Int draw = 0; draw < n; ++draw)
    ++counts[rng.next_below(static_cast<std::uint64_t>(a.cols()))];
  return Table(std::move(counts));
}

Table generate_null_table(const Configuration& config, Int n,
                          RandomSource& rng) {
  return generate_null_table(config.matrix, n, rng);
}

Histogram build_histogram(std::span<const double> series, int bins_override) {
  if (series.empty()) throw std::invalid_argument("empty statistic series");
  for (double v : series)
    if (!std::isfinite(v))
      throw std::invalid_argument("histogram input must be finite");
  const std::size_t n = series.size();
  double lo = *std::min_element(series.begin(), series.end());
  double hi = *std::max_element(series.begin(), series.end());

  int bins;
  if (bins_override > 0) {
    bins = bins_override;
  } else if (hi == lo) {
    bins = 1;
  } else {
    std::vector<double> sorted(series.begin(), series.end());
    std::sort(sorted.begin(), sorted.end());
    double q1 = sorted[n / 4];
    double q3 = sorted[(3 * n) / 4];
    double width = 2.0 * (q3 - q1) / std::cbrt(static_cast<double>(n));
    if (width > 0.0)
      bins = static_cast<int>(std::ceil((hi - lo) / width));
    else
      bins = static_cast<int>(std::round(std::sqrt(static_cast<double>(n))));
    bins = std::clamp(bins, 1, 400);
  }

  if (hi == lo) hi = lo + 1.0;  // degenerate range gets a unit-width bin
  Histogram h;
  h.edges.resize(static_cast<std::size_t>(bins) + 1);
  double width = (hi - lo) / bins;
  for (int b = 0; b <= bins; ++b)
    h.edges[static_cast<std::size_t>(b)] = lo + width * b;
  h.edges.back() = hi;  // guard against accumulated rounding
  h.counts.assign(static_cast<std::size_t>(bins), 0);
  for (double v : series) {
    int b = static_cast<int>((v - lo) / width);
    b = std::clamp(b, 0, bins - 1);  // top edge lands in the last bin
    ++h.counts[static_cast<std::size_t>(b)];
  }
  return h;
}

Diagnostics compute_diagnostics(std::span<const double> series, int max_lag,
                                int bins_override, int path_points,
                                Int step_stride) {
  if (series.empty()) throw std::invalid_argument("empty statistic series");
  if (path_points < 1) throw std::invalid_argument("path_points must be >= 1");
  if (step_stride < 1)
    throw std::invalid_argument("step_stride must be >= 1");
  Diagnostics d;
  d.histogram = build_histogram(series, bins_override);
  int lag = std::min<int>(max_lag, static_cast<int>(series.size()) - 1);
  try {
    d.autocorr = autocorrelation(series, lag);
  } catch (const std::domain_error&) {
    d.autocorr.clear();  // constant series: no correlogram
  }
  std::size_t stride =
      std::max<std::size_t>(1, series.size() / static_cast<std::size_t>(
                                                   path_points));
  for (std::size_t i = 0; i < series.size(); i += stride)
    d.path.push_back(
        {static_cast<Int>(i + 1) * step_stride, series[i]});
  return d;
}

}  // namespace fiberwalk

#ifndef FIBERWALK_PIPELINE_HPP
#define FIBERWALK_PIPELINE_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fiberwalk/configuration.hpp"
#include "fiberwalk/mle.hpp"
#include "fiberwalk/sampler.hpp"
#include "fiberwalk/stats.hpp"

namespace fiberwalk {

/// Wraps a bare matrix as a configuration with cells labeled by column.
Configuration matrix_config(IntMatrix m, std::string description = "matrix");

/// "checkered<I2>x<I3>x<L>" builds the parity design crossed with L levels;
/// anything else is read as a design file.
Design parse_design_spec(const std::string& spec);

/// A ready-to-run testing problem: the null configuration whose fiber the
/// chain walks, the proposal basis, the test statistic, and how to draw a
/// null table. Built from a spec string:
///   no3f:I1,I2,I3                  no-three-factor interaction model
///   logistic:binomial,<design>,2   two-covariate null against the design's
///   logistic:trinomial,<design>,3  last covariate, per-sample refits
///   <path>                         matrix file, statistic against saturated
struct TestCase {
  std::string name;
  Configuration config;
  LatticeBasis basis;
  int chi_square_df = 0;
  /// Draws a table from the uniform null. Logistic cases balance the
  /// per-design-point totals first and split them over responses, the
  /// sampling scheme the per-point identity band conditions on.
  std::function<Table(Int, RandomSource&)> simulate;
  /// Binds the statistic to the start table's fiber (the null fit happens
  /// here once); the returned function is then applied to every sample.
  std::function<StatisticFn(const Table&)> make_statistic;
};

TestCase build_test_case(const std::string& spec,
                         LiftStyle style = LiftStyle::LastSlicePivot);

struct TestRunOptions {
  std::string config_spec;
  std::string table_file;  // observed table; empty means simulate
  Int simulate_n = 0;
  CoefficientDistribution dist = CoefficientDistribution::poisson(1.0);
  Int burn_in = 1000;
  Int iterations = 10000;
  Int thin = 1;
  std::uint64_t seed = 0;
  LiftStyle style = LiftStyle::LastSlicePivot;
  std::string moves_file;  // optional replacement proposal moves
  int bins = 0;            // histogram bins; 0 picks automatically
  bool check_fiber = false;
  std::string out_dir = ".";
  std::string label;  // plot title; defaults to the config spec
};

struct RunReport {
  std::string report_text;  // the report file's exact content
  double observed = 0.0;
  PValue p_value;
  int chi_square_df = 0;
  ChainRun run;
  std::vector<std::string> outputs;  // files written, relative to out_dir
};

/// Fits the null model, runs the chain from the observed or simulated
/// table, and writes the report, the chain dump, and CSV + SVG diagnostics
/// into out_dir. Byte-identical outputs under identical options.
RunReport run_exact_test(const TestRunOptions& opts);

struct ReproduceResult {
  std::string summary_text;
  std::vector<std::string> variant_dirs;
};

const std::vector<std::string>& experiment_ids();

/// Runs every coefficient-distribution variant of one named experiment
/// into out_root/<id>/<variant>/ and writes out_root/<id>/summary.txt.
ReproduceResult reproduce_experiment(const std::string& id,
                                     std::uint64_t seed,
                                     const std::string& out_root);

}  // namespace fiberwalk

#endif

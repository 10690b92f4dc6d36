#include "fiberwalk/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <numeric>
#include <sstream>

#include "fiberwalk/fiber.hpp"
#include "fiberwalk/hermite.hpp"
#include "fiberwalk/svg.hpp"

namespace fs = std::filesystem;

namespace fiberwalk {

namespace {

std::string fmt10(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    std::size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

int parse_positive_int(const std::string& s, const char* what) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || v < 1)
    throw std::invalid_argument(std::string("invalid ") + what + " '" + s +
                                "'");
  return v;
}

void write_text_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

/// Balanced per-point totals (remainder spread over rng-chosen points),
/// each split uniformly over the r responses. Cells are slice-major.
Table simulate_product_multinomial(int r, int points, Int n,
                                   RandomSource& rng) {
  if (n < points)
    throw std::invalid_argument(
        "sample size below the design size leaves empty design points");
  std::vector<Int> totals(points, n / points);
  Int rem = n % points;
  std::vector<int> order(points);
  std::iota(order.begin(), order.end(), 0);
  for (Int i = 0; i < rem; ++i) {
    std::uint64_t j =
        static_cast<std::uint64_t>(i) +
        rng.next_below(static_cast<std::uint64_t>(points) - i);
    std::swap(order[static_cast<std::size_t>(i)],
              order[static_cast<std::size_t>(j)]);
    ++totals[order[static_cast<std::size_t>(i)]];
  }
  std::vector<Int> counts(static_cast<std::size_t>(r) * points, 0);
  for (int i = 0; i < points; ++i)
    for (Int trial = 0; trial < totals[i]; ++trial) {
      std::uint64_t slice = rng.next_below(static_cast<std::uint64_t>(r));
      ++counts[slice * points + i];
    }
  return Table(std::move(counts));
}

TestCase build_no3f_case(const std::string& args, LiftStyle style,
                         const std::string& name) {
  auto parts = split(args, ',');
  if (parts.size() != 3)
    throw std::invalid_argument("no3f spec needs three sizes: no3f:I1,I2,I3");
  int i1 = parse_positive_int(parts[0], "table size");
  int i2 = parse_positive_int(parts[1], "table size");
  int i3 = parse_positive_int(parts[2], "table size");
  if (i1 < 2 || i2 < 2 || i3 < 2)
    throw std::invalid_argument("no3f sizes must be at least 2");

  TestCase tc;
  tc.name = name;
  tc.config = no_three_factor_config(i1, i2, i3);
  tc.basis = no_three_factor_lattice_basis(i1, i2, i3, style);
  tc.chi_square_df = (i1 - 1) * (i2 - 1) * (i3 - 1);
  auto cfg = std::make_shared<const Configuration>(tc.config);
  tc.simulate = [cfg](Int n, RandomSource& rng) {
    return generate_null_table(cfg->matrix, n, rng);
  };
  tc.make_statistic = [cfg](const Table& start) -> StatisticFn {
    auto fit = std::make_shared<const FittedModel>(
        fit_toric_mle(cfg->matrix, sufficient_statistic(cfg->matrix, start)));
    return [fit](const Table& x) { return lr_statistic(x, *fit); };
  };
  return tc;
}

TestCase build_logistic_case(const std::string& args, LiftStyle style,
                             const std::string& name) {
  auto parts = split(args, ',');
  if (parts.size() != 3)
    throw std::invalid_argument(
        "logistic spec needs kind, design, responses: "
        "logistic:binomial|trinomial,<design>,<r>");
  int r;
  if (parts[0] == "binomial")
    r = 2;
  else if (parts[0] == "trinomial")
    r = 3;
  else
    throw std::invalid_argument("logistic kind must be binomial or trinomial");
  if (parse_positive_int(parts[2], "response count") != r)
    throw std::invalid_argument("response count does not match '" + parts[0] +
                                "'");
  Design design = parse_design_spec(parts[1]);
  if (design.axes() < 2)
    throw std::invalid_argument(
        "the logistic test needs at least two covariate axes: the last axis "
        "is tested, the rest form the null model");

  std::vector<int> null_axes(design.axes() - 1);
  std::iota(null_axes.begin(), null_axes.end(), 0);
  Configuration base_null = poisson_regression_config(design, null_axes);
  Configuration base_alt = poisson_regression_config(design);

  TestCase tc;
  tc.name = name;
  tc.config = logistic_config(design, r, null_axes);
  tc.basis = lift_lattice_basis(base_null, kernel_lattice_basis(base_null.matrix),
                                r, style);
  auto null_cfg = std::make_shared<const Configuration>(tc.config);
  auto alt_cfg = std::make_shared<const Configuration>(
      logistic_config(design, r));
  tc.chi_square_df = rank(alt_cfg->matrix) - rank(null_cfg->matrix);
  const int points = design.size();
  tc.simulate = [r, points](Int n, RandomSource& rng) {
    return simulate_product_multinomial(r, points, n, rng);
  };
  auto alt_fitter = std::make_shared<const ToricFitter>(alt_cfg->matrix);
  tc.make_statistic = [null_cfg, alt_cfg,
                       alt_fitter](const Table& start) -> StatisticFn {
    auto null_fit = std::make_shared<const FittedModel>(fit_toric_mle(
        null_cfg->matrix, sufficient_statistic(null_cfg->matrix, start)));
    // The chain revisits tables (every rejected step) and neighboring
    // tables differ by one move, so the alternative refit caches the last
    // result and warm-starts Newton from it. A warm start that fails to
    // converge falls back to a cold fit before the error surfaces.
    struct RefitCache {
      std::vector<Int> counts;
      double value = 0.0;
      FittedModel fit;
      bool valid = false;
    };
    auto cache = std::make_shared<RefitCache>();
    return [null_fit, alt_cfg, alt_fitter, cache](const Table& x) {
      if (cache->valid && cache->counts == x.counts) return cache->value;
      SufficientStatistic t = sufficient_statistic(alt_cfg->matrix, x);
      FittedModel alt_fit;
      try {
        alt_fit = alt_fitter->fit(t, {}, cache->valid ? &cache->fit : nullptr);
      } catch (const ConvergenceError&) {
        alt_fit = alt_fitter->fit(t);
      }
      double value = lr_statistic(x, *null_fit, alt_fit);
      cache->counts = x.counts;
      cache->value = value;
      cache->fit = std::move(alt_fit);
      cache->valid = true;
      return value;
    };
  };
  return tc;
}

TestCase build_matrix_case(const std::string& path, const std::string& name) {
  TestCase tc;
  tc.name = name;
  tc.config = matrix_config(read_matrix_file(path), "matrix file " + path);
  tc.basis = kernel_lattice_basis(tc.config.matrix);
  tc.chi_square_df = tc.basis.kernel_dim();
  auto cfg = std::make_shared<const Configuration>(tc.config);
  tc.simulate = [cfg](Int n, RandomSource& rng) {
    return generate_null_table(cfg->matrix, n, rng);
  };
  tc.make_statistic = [cfg](const Table& start) -> StatisticFn {
    auto fit = std::make_shared<const FittedModel>(
        fit_toric_mle(cfg->matrix, sufficient_statistic(cfg->matrix, start)));
    return [fit](const Table& x) { return lr_statistic(x, *fit); };
  };
  return tc;
}

}  // namespace

Configuration matrix_config(IntMatrix m, std::string description) {
  Configuration config;
  config.cells.reserve(m.cols());
  for (int j = 0; j < m.cols(); ++j) config.cells.push_back({j});
  config.matrix = std::move(m);
  config.description = std::move(description);
  return config;
}

Design parse_design_spec(const std::string& spec) {
  const std::string prefix = "checkered";
  if (spec.rfind(prefix, 0) == 0) {
    auto parts = split(spec.substr(prefix.size()), 'x');
    if (parts.size() != 2 && parts.size() != 3)
      throw std::invalid_argument(
          "checkered design spec is checkered<I2>x<I3> or "
          "checkered<I2>x<I3>x<L>");
    int i2 = parse_positive_int(parts[0], "design size");
    int i3 = parse_positive_int(parts[1], "design size");
    int extra =
        parts.size() == 3 ? parse_positive_int(parts[2], "level count") : 0;
    return checkered_design(i2, i3, extra);
  }
  return read_design_file(spec);
}

TestCase build_test_case(const std::string& spec, LiftStyle style) {
  auto colon = spec.find(':');
  if (colon != std::string::npos) {
    std::string head = spec.substr(0, colon);
    std::string args = spec.substr(colon + 1);
    if (head == "no3f") return build_no3f_case(args, style, spec);
    if (head == "logistic") return build_logistic_case(args, style, spec);
    throw std::invalid_argument("unknown configuration builder '" + head +
                                "'");
  }
  return build_matrix_case(spec, spec);
}

RunReport run_exact_test(const TestRunOptions& opts) {
  if (opts.config_spec.empty())
    throw std::invalid_argument("no configuration given");
  if (!opts.table_file.empty() && opts.simulate_n > 0)
    throw std::invalid_argument(
        "give an observed table or a simulation size, not both");
  if (opts.table_file.empty() && opts.simulate_n <= 0)
    throw std::invalid_argument(
        "need an observed table file or a simulation size");

  TestCase tc = build_test_case(opts.config_spec, opts.style);
  RandomSource root(opts.seed);

  Table start;
  if (!opts.table_file.empty()) {
    start = read_table_file(opts.table_file);
    if (start.dimension() != tc.config.cell_count())
      throw std::invalid_argument(
          "table has " + std::to_string(start.dimension()) +
          " cells, configuration has " +
          std::to_string(tc.config.cell_count()));
  } else {
    RandomSource sim_rng = root.split(1);
    start = tc.simulate(opts.simulate_n, sim_rng);
  }

  LatticeBasis basis = tc.basis;
  std::string proposal_origin = to_string(opts.style);
  if (!opts.moves_file.empty()) {
    std::vector<Move> moves = read_moves_file(opts.moves_file);
    if (moves.empty())
      throw std::invalid_argument("move file holds no moves");
    if (moves.front().dimension() != tc.config.cell_count())
      throw std::invalid_argument("move dimension does not match the cells");
    int kd = std::min<int>(tc.basis.kernel_dim(),
                           static_cast<int>(moves.size()));
    basis = LatticeBasis(tc.config.cell_count(), std::move(moves), kd);
    proposal_origin = "file:" + opts.moves_file;
  }

  StatisticFn statistic = tc.make_statistic(start);
  double observed = statistic(start);

  ChainConfig cfg;
  cfg.burn_in = opts.burn_in;
  cfg.iterations = opts.iterations;
  cfg.thin = opts.thin;
  cfg.seed = root.split(2).seed();
  cfg.dist = opts.dist;
  cfg.check_fiber = opts.check_fiber;
  ChainRun run = run_chain(start, tc.config.matrix, basis, cfg, statistic);

  PValue p = exact_pvalue(run.series, observed);
  Diagnostics diag =
      compute_diagnostics(run.series, 50, opts.bins, 1000, opts.thin);
  std::string label = opts.label.empty() ? tc.name : opts.label;

  fs::path dir(opts.out_dir);
  fs::create_directories(dir);
  std::vector<std::string> outputs;
  auto emit = [&](const std::string& name) { outputs.push_back(name); };

  write_table_file((dir / "observed-table.txt").string(), start);
  emit("observed-table.txt");
  write_matrix_file(dir / "config.txt", tc.config.matrix);
  emit("config.txt");
  write_moves_file(dir / "basis.txt", basis);
  emit("basis.txt");

  {
    std::ostringstream chain;
    chain << "proposals: " << run.proposals << "\n"
          << "accepted: " << run.accepted << "\n"
          << "negative-rejections: " << run.negative_rejections << "\n"
          << "zero-moves: " << run.zero_moves << "\n"
          << "acceptance-rate: " << fmt10(run.acceptance_rate()) << "\n"
          << "series-length: " << run.series.size() << "\n"
          << "step,value\n";
    for (std::size_t k = 0; k < run.series.size(); ++k)
      chain << (static_cast<Int>(k) + 1) * opts.thin << ","
            << fmt10(run.series[k]) << "\n";
    write_text_file(dir / "chain.txt", chain.str());
    emit("chain.txt");
  }

  {
    std::ostringstream csv;
    csv << "bin_left,bin_right,count\n";
    for (std::size_t b = 0; b < diag.histogram.counts.size(); ++b)
      csv << fmt10(diag.histogram.edges[b]) << ","
          << fmt10(diag.histogram.edges[b + 1]) << ","
          << diag.histogram.counts[b] << "\n";
    write_text_file(dir / "histogram.csv", csv.str());
    emit("histogram.csv");
    write_histogram_svg((dir / "histogram.svg").string(), diag.histogram,
                        tc.chi_square_df, label + " LR histogram");
    emit("histogram.svg");
  }

  {
    std::ostringstream csv;
    csv << "step,value\n";
    for (const auto& pt : diag.path)
      csv << pt.step << "," << fmt10(pt.value) << "\n";
    write_text_file(dir / "path.csv", csv.str());
    emit("path.csv");
    write_path_svg((dir / "path.svg").string(), diag.path,
                   label + " LR path");
    emit("path.svg");
  }

  if (!diag.autocorr.empty()) {
    std::ostringstream csv;
    csv << "lag,rho\n";
    for (std::size_t lag = 0; lag < diag.autocorr.size(); ++lag)
      csv << lag << "," << fmt10(diag.autocorr[lag]) << "\n";
    write_text_file(dir / "correlogram.csv", csv.str());
    emit("correlogram.csv");
    write_correlogram_svg((dir / "correlogram.svg").string(), diag.autocorr,
                          label + " correlogram");
    emit("correlogram.svg");
  }

  std::ostringstream report;
  report << "exact test report\n"
         << "configuration: " << tc.name << "\n"
         << "description: " << tc.config.description << "\n"
         << "cells: " << tc.config.cell_count() << "\n"
         << "statistic-rows: " << tc.config.matrix.rows() << "\n"
         << "kernel-dimension: " << tc.basis.kernel_dim() << "\n"
         << "proposal-moves: " << basis.size() << "\n"
         << "proposal-origin: " << proposal_origin << "\n"
         << "coefficients: " << opts.dist.to_string() << "\n"
         << "burn-in: " << opts.burn_in << "\n"
         << "iterations: " << opts.iterations << "\n"
         << "thin: " << opts.thin << "\n"
         << "seed: " << opts.seed << "\n"
         << "table-source: "
         << (opts.table_file.empty() ? std::string("simulated")
                                     : "file:" + opts.table_file)
         << "\n"
         << "sample-size: " << start.total() << "\n"
         << "observed-lr: " << fmt10(observed) << "\n"
         << "chi-square-df: " << tc.chi_square_df << "\n"
         << "asymptotic-pvalue: "
         << fmt10(1.0 - chi_square_cdf(std::max(0.0, observed),
                                       tc.chi_square_df))
         << "\n"
         << "exact-pvalue: " << fmt10(p.value) << "\n"
         << "exact-pvalue-std-error: " << fmt10(p.std_error) << "\n"
         << "proposals: " << run.proposals << "\n"
         << "accepted: " << run.accepted << "\n"
         << "acceptance-rate: " << fmt10(run.acceptance_rate()) << "\n"
         << "negative-rejections: " << run.negative_rejections << "\n"
         << "zero-moves: " << run.zero_moves << "\n";
  if (diag.autocorr.empty())
    report << "correlogram: omitted (constant statistic series)\n";
  report << "outputs:\n";
  std::vector<std::string> listed = outputs;
  listed.push_back("report.txt");
  for (const auto& name : listed) report << "- " << name << "\n";
  write_text_file(dir / "report.txt", report.str());
  outputs.push_back("report.txt");

  RunReport out;
  out.report_text = report.str();
  out.observed = observed;
  out.p_value = p;
  out.chi_square_df = tc.chi_square_df;
  out.run = std::move(run);
  out.outputs = std::move(outputs);
  return out;
}

namespace {

struct Experiment {
  std::string id;
  std::string spec;
  Int n;
  Int burn_in;
  Int iterations;
  std::vector<CoefficientDistribution> dists;
};

const std::vector<Experiment>& catalogue() {
  static const std::vector<Experiment> c = [] {
    auto po = CoefficientDistribution::poisson;
    auto geom = CoefficientDistribution::geometric;
    return std::vector<Experiment>{
        {"no3f-3", "no3f:3,3,3", 135, 1000, 10000,
         {po(1), po(10), po(50)}},
        {"no3f-5", "no3f:5,5,5", 625, 10000, 100000,
         {geom(0.1), geom(0.5)}},
        {"no3f-10", "no3f:10,10,10", 5000, 10000, 100000,
         {po(10), po(50)}},
        {"logit-bin-4x4", "logistic:binomial,checkered4x4x5,2", 200, 1000,
         10000, {po(1), po(10), po(50)}},
        {"logit-tri-4x4", "logistic:trinomial,checkered4x4x5,3", 200, 1000,
         10000, {po(1), po(10), po(50)}},
        {"logit-bin-10x10", "logistic:binomial,checkered10x10x5,2", 625, 1000,
         10000, {geom(0.1), geom(0.5)}},
        {"logit-tri-10x10", "logistic:trinomial,checkered10x10x5,3", 625,
         1000, 10000, {geom(0.1), geom(0.5)}},
    };
  }();
  return c;
}

std::string variant_tag(const CoefficientDistribution& dist) {
  std::string tag = dist.to_string();
  std::replace(tag.begin(), tag.end(), ':', '-');
  return tag;
}

}  // namespace

const std::vector<std::string>& experiment_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& e : catalogue()) out.push_back(e.id);
    return out;
  }();
  return ids;
}

ReproduceResult reproduce_experiment(const std::string& id,
                                     std::uint64_t seed,
                                     const std::string& out_root) {
  const Experiment* exp = nullptr;
  for (const auto& e : catalogue())
    if (e.id == id) exp = &e;
  if (!exp) {
    std::string known;
    for (const auto& e : catalogue()) {
      if (!known.empty()) known += ", ";
      known += e.id;
    }
    throw std::invalid_argument("unknown experiment '" + id + "' (known: " +
                                known + ")");
  }

  RandomSource root(seed);
  ReproduceResult result;
  std::ostringstream summary;
  summary << "experiment: " << exp->id << "\n"
          << "configuration: " << exp->spec << "\n"
          << "sample-size: " << exp->n << "\n"
          << "burn-in: " << exp->burn_in << "\n"
          << "iterations: " << exp->iterations << "\n"
          << "seed: " << seed << "\n";

  for (std::size_t v = 0; v < exp->dists.size(); ++v) {
    const auto& dist = exp->dists[v];
    TestRunOptions opts;
    opts.config_spec = exp->spec;
    opts.simulate_n = exp->n;
    opts.dist = dist;
    opts.burn_in = exp->burn_in;
    opts.iterations = exp->iterations;
    opts.thin = 1;
    opts.seed = root.split(v).seed();
    opts.check_fiber = true;
    opts.out_dir =
        (fs::path(out_root) / exp->id / variant_tag(dist)).string();
    opts.label = exp->id + " " + dist.to_string();
    RunReport report = run_exact_test(opts);
    result.variant_dirs.push_back(opts.out_dir);
    summary << "variant " << variant_tag(dist) << ": observed-lr="
            << fmt10(report.observed) << " exact-pvalue="
            << fmt10(report.p_value.value) << " std-error="
            << fmt10(report.p_value.std_error) << " acceptance-rate="
            << fmt10(report.run.acceptance_rate()) << "\n";
  }

  result.summary_text = summary.str();
  fs::path dir = fs::path(out_root) / exp->id;
  fs::create_directories(dir);
  write_text_file(dir / "summary.txt", result.summary_text);
  return result;
}

}  // namespace fiberwalk

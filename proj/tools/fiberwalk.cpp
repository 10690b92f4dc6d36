// Command-line front end: kernel bases, Lawrence liftings, exact tests,
// and the bundled experiment reproductions.
//
// Exit codes: 0 success, 2 input error, 3 numerical failure,
// 4 fiber/consistency breach.

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <iostream>

#include "fiberwalk/fiber.hpp"
#include "fiberwalk/hermite.hpp"
#include "fiberwalk/mle.hpp"
#include "fiberwalk/pipeline.hpp"

namespace fw = fiberwalk;

namespace {

std::string default_out_dir() {
  const char* env = std::getenv("FIBERWALK_OUT");
  return env && *env ? env : ".";
}

int run(int argc, char** argv) {
  CLI::App app{
      "Markov chain exact tests on contingency tables driven by lattice "
      "bases"};
  app.require_subcommand(1);

  auto* kernel = app.add_subcommand(
      "kernel", "Lattice basis of the integer kernel of a matrix");
  std::string kernel_matrix;
  std::string kernel_out;
  kernel->add_option("matrix", kernel_matrix, "configuration matrix file")
      ->required();
  kernel->add_option("-o,--out", kernel_out,
                     "basis output file (default: <matrix>.basis)");

  auto* lift = app.add_subcommand(
      "lift", "Lawrence configuration of a matrix with a lifted basis");
  std::string lift_matrix;
  int lift_r = 2;
  std::string lift_style = "last-slice";
  std::string lift_config_out;
  std::string lift_basis_out;
  lift->add_option("matrix", lift_matrix, "base configuration matrix file")
      ->required();
  lift->add_option("-r,--responses", lift_r, "number of slices (>= 2)")
      ->required();
  lift->add_option("--style", lift_style,
                   "lifted move layout: last-slice or pairwise");
  lift->add_option("--config-out", lift_config_out,
                   "lifted matrix output (default: <matrix>.lifted)");
  lift->add_option("--basis-out", lift_basis_out,
                   "lifted basis output (default: <matrix>.lifted-basis)");

  auto* test = app.add_subcommand(
      "test", "Run the Markov chain exact test for a configuration");
  fw::TestRunOptions topts;
  topts.out_dir = default_out_dir();
  std::string test_dist = "poisson:1";
  std::string test_style = "last-slice";
  test->add_option("config", topts.config_spec,
                   "no3f:I1,I2,I3 | logistic:binomial|trinomial,<design>,<r> "
                   "| matrix file")
      ->required();
  test->add_option("table", topts.table_file, "observed table file");
  test->add_option("--simulate", topts.simulate_n,
                   "draw the observed table from the uniform null");
  test->add_option("--dist", test_dist,
                   "coefficient law: poisson:<lambda> or geometric:<p>");
  test->add_option("--burn-in", topts.burn_in, "discarded leading steps");
  test->add_option("--iterations", topts.iterations, "recorded steps");
  test->add_option("--thin", topts.thin, "record every thin-th step");
  test->add_option("--seed", topts.seed, "random seed");
  test->add_option("--style", test_style,
                   "lifted move layout: last-slice or pairwise");
  test->add_option("--moves", topts.moves_file,
                   "replace the proposal basis with a move file");
  test->add_option("--bins", topts.bins, "histogram bin count (0 = auto)");
  test->add_flag("--check-fiber", topts.check_fiber,
                 "re-verify A x = t after every step");
  test->add_option("--out", topts.out_dir, "output directory");
  test->add_option("--label", topts.label, "plot title");

  auto* reproduce = app.add_subcommand(
      "reproduce", "Re-run a bundled experiment protocol end to end");
  std::string rep_id;
  std::uint64_t rep_seed = 20260821;
  std::string rep_out = default_out_dir();
  bool rep_list = false;
  reproduce->add_option("id", rep_id, "experiment id (see --list)");
  reproduce->add_flag("--list", rep_list, "list experiment ids");
  reproduce->add_option("--seed", rep_seed, "random seed");
  reproduce->add_option("--out", rep_out, "output root directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (kernel->parsed()) {
    fw::IntMatrix m = fw::read_matrix_file(kernel_matrix);
    fw::LatticeBasis basis = fw::kernel_lattice_basis(m);
    if (kernel_out.empty()) kernel_out = kernel_matrix + ".basis";
    fw::write_moves_file(kernel_out, basis);
    std::cout << "kernel dimension: " << basis.kernel_dim() << "\n"
              << "basis: " << kernel_out << "\n";
    return 0;
  }

  if (lift->parsed()) {
    if (lift_r < 2) throw std::invalid_argument("need at least two slices");
    fw::IntMatrix m = fw::read_matrix_file(lift_matrix);
    fw::Configuration base =
        fw::matrix_config(m, "matrix file " + lift_matrix);
    fw::LatticeBasis kb = fw::kernel_lattice_basis(m);
    fw::Configuration lifted = fw::lawrence_r(base, lift_r);
    fw::LatticeBasis lb = fw::lift_lattice_basis(
        base, kb, lift_r, fw::parse_lift_style(lift_style));
    for (int k = 0; k < lb.size(); ++k)
      for (fw::Int v : lifted.matrix.apply(lb[k].z))
        if (v != 0)
          throw fw::FiberBreachError(
              "lifted move " + std::to_string(k) +
              " is not in the lifted kernel; lifting is inconsistent");
    if (lift_config_out.empty()) lift_config_out = lift_matrix + ".lifted";
    if (lift_basis_out.empty())
      lift_basis_out = lift_matrix + ".lifted-basis";
    fw::write_matrix_file(lift_config_out, lifted.matrix);
    fw::write_moves_file(lift_basis_out, lb);
    std::cout << "lifted configuration: " << lifted.matrix.rows() << " x "
              << lifted.matrix.cols() << " -> " << lift_config_out << "\n"
              << "lifted basis: " << lb.size() << " moves (kernel dimension "
              << lb.kernel_dim() << ") -> " << lift_basis_out << "\n"
              << "self-check: all moves lie in the lifted kernel\n";
    return 0;
  }

  if (test->parsed()) {
    topts.dist = fw::CoefficientDistribution::parse(test_dist);
    topts.style = fw::parse_lift_style(test_style);
    fw::RunReport report = fw::run_exact_test(topts);
    std::cout << "observed-lr: " << report.observed << "\n"
              << "chi-square-df: " << report.chi_square_df << "\n"
              << "exact-pvalue: " << report.p_value.value << " (std error "
              << report.p_value.std_error << ")\n"
              << "acceptance-rate: " << report.run.acceptance_rate() << "\n"
              << "report: "
              << (std::filesystem::path(topts.out_dir) / "report.txt").string()
              << "\n";
    return 0;
  }

  if (reproduce->parsed()) {
    if (rep_list) {
      for (const auto& id : fw::experiment_ids()) std::cout << id << "\n";
      return 0;
    }
    if (rep_id.empty())
      throw std::invalid_argument("give an experiment id or --list");
    fw::ReproduceResult result =
        fw::reproduce_experiment(rep_id, rep_seed, rep_out);
    std::cout << result.summary_text << "outputs under "
              << (std::filesystem::path(rep_out) / rep_id).string() << "\n";
    return 0;
  }

  return 2;  // unreachable: a subcommand is required
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const fw::FiberBreachError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const fw::ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const fw::StatisticError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const fw::OverflowError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const fw::BoundaryError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

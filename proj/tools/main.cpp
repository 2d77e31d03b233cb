// sqlr: neural-network sieve quasi-likelihood ratio tests from the command line.
//
//   sqlr test     --input F --response COL --features A,B --seed S [fit flags]
//   sqlr scan     --input F --response COL [--features A,B,...] --seed S [fit flags]
//   sqlr adjust   --input F --response COL --covariates A,B --output F2
//   sqlr simulate --n N[,N...] --reps R --seed S [--features 1,..,6] [fit flags]
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 numeric degeneracy.

#include "commands.hpp"

#include "sqlr/errors.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

using namespace sqlr::cli;

void add_fit_flags(CLI::App* cmd, FitOptions& fit) {
  cmd->add_option("--seed", fit.seed, "Base random seed")->required();
  cmd->add_option("--width", fit.width, "Hidden units (default floor(sqrt(n)))")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--v-budget", fit.v_budget, "l1 budget of the output layer")
      ->check(CLI::Range(4.0, 1e300));
  cmd->add_option("--m-budget", fit.m_budget, "l1 budget of each hidden unit")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--null-iters", fit.null_iters, "Iterations of the null fit")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--alt-iters", fit.alt_iters, "Iterations of the alternative fit")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--null-step", fit.null_step, "Null step constant c in c/ln(e+k)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--alt-step", fit.alt_step, "Alternative step constant c in c/ln(e+k)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--init-scale", fit.init_scale, "Half-width of the uniform initializer")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--level", fit.level, "Nominal test level")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--threads", fit.threads, "Worker threads (0 = all cores)");
}

void add_output_flags(CLI::App* cmd, OutputOptions& out) {
  cmd->add_option("--format", out.format, "Output format")
      ->check(CLI::IsMember({"json", "text"}));
  cmd->add_option("--output", out.output, "Write to this file instead of stdout");
}

void add_data_flags(CLI::App* cmd, DataOptions& data, bool features_required) {
  cmd->add_option("--input", data.input, "CSV file with a header row")->required();
  cmd->add_option("--response", data.response, "Response column")->required();
  auto* f = cmd->add_option("--features", data.features,
                            features_required ? "Tested feature columns"
                                              : "Feature columns to scan (default: all)")
                ->delimiter(',');
  if (features_required) f->required();
  cmd->add_option("--covariates", data.covariates, "Covariates regressed out of the response")
      ->delimiter(',');
  cmd->add_flag("--no-scale", data.no_scale, "Do not min-max scale features onto [-1, 1]");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sieve quasi-likelihood ratio tests with one-hidden-layer networks"};
  app.set_version_flag("--version", sqlr::tool_version());
  app.require_subcommand(1);

  FitOptions fit;
  OutputOptions out;
  DataOptions data;
  AdjustOptions adjust;
  SimulateOptions sim;

  auto* test_cmd = app.add_subcommand("test", "Test whether the given features matter");
  add_data_flags(test_cmd, data, true);
  add_fit_flags(test_cmd, fit);
  add_output_flags(test_cmd, out);

  auto* scan_cmd = app.add_subcommand("scan", "Test every feature one at a time");
  add_data_flags(scan_cmd, data, false);
  add_fit_flags(scan_cmd, fit);
  add_output_flags(scan_cmd, out);

  auto* adjust_cmd = app.add_subcommand("adjust", "Replace the response by covariate residuals");
  adjust_cmd->add_option("--input", adjust.input, "CSV file")->required();
  adjust_cmd->add_option("--response", adjust.response, "Response column")->required();
  adjust_cmd->add_option("--covariates", adjust.covariates, "Covariate columns")
      ->delimiter(',')
      ->required();
  adjust_cmd->add_option("--output", adjust.output, "Output CSV (default stdout)");

  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo type I error and power study");
  sim_cmd->add_option("--n", sim.sizes, "Sample size(s)")->delimiter(',')->required();
  sim_cmd->add_option("--reps", sim.reps, "Replications per sample size")
      ->check(CLI::PositiveNumber);
  sim_cmd->add_option("--features", sim.features, "Features to test (1-6)")
      ->delimiter(',')
      ->check(CLI::Range(1, 6));
  sim_cmd->add_option("--methods", sim.methods, "sqlr, ftest")->delimiter(',');
  add_fit_flags(sim_cmd, fit);
  add_output_flags(sim_cmd, out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  std::vector<std::string> args(argv, argv + argc);
  args.front() = "sqlr";
  try {
    if (*test_cmd) return run_test(data, fit, out, args);
    if (*scan_cmd) return run_scan(data, fit, out, args);
    if (*adjust_cmd) return run_adjust(adjust, args);
    if (*sim_cmd) return run_simulate(sim, fit, out, args);
  } catch (const sqlr::DegenerateError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDegenerate;
  } catch (const sqlr::DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const sqlr::DimensionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  }
  return kUsage;
}

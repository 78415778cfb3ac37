// rcore: r-core formation probabilities in random k-uniform hypergraphs.

#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rcore/commands.hpp"

namespace {

using namespace rcore::cli;

void add_point_options(CLI::App* cmd, PointArgs& args, const char* size_flag, const char* expected_flag,
                       std::optional<double>& p, std::optional<double>& expected) {
  cmd->add_option(size_flag, args.size, "number of vertices")->required();
  cmd->add_option("--k", args.k, "vertices per edge")->required();
  auto* p_opt = cmd->add_option("--p", p, "edge probability");
  auto* e_opt = cmd->add_option(expected_flag, expected, "expected number of edges (sets p = e / C(n, k))");
  p_opt->excludes(e_opt);
  cmd->add_option("--r", args.r, "core order")->capture_default_str();
  cmd->add_option("--method", args.methods,
                  "connectivity | covering | interleaved_lower | interleaved_upper | mc (repeatable)");
  cmd->add_option("--trials", args.trials, "Monte Carlo trials")->capture_default_str();
  cmd->add_option("--seed", args.seed, "Monte Carlo seed")->capture_default_str();
  cmd->add_option("--workers", args.workers, "Monte Carlo threads (0 = hardware)")->capture_default_str();
  cmd->add_option("--format", args.format, "csv | json")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bounds and estimates for r-core formation in random k-uniform hypergraphs"};
  app.require_subcommand(1);

  PointArgs local_args;
  local_args.r = 1;
  std::optional<double> local_p, local_e;
  auto* local = app.add_subcommand("local", "probability of a core on one specific set of u vertices");
  add_point_options(local, local_args, "--u", "--e-u", local_p, local_e);

  PointArgs global_args;
  global_args.r = 2;
  std::optional<double> global_p, global_e;
  auto* global = app.add_subcommand("global", "probability of a core anywhere among v vertices");
  add_point_options(global, global_args, "--v", "--e-v", global_p, global_e);

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "tabulate methods over a range of expected edge counts");
  sweep->add_option("--scope", sweep_args.scope, "local | global")->capture_default_str();
  sweep->add_option("--k", sweep_args.k, "vertices per edge")->required();
  sweep->add_option("--r", sweep_args.r, "core order")->capture_default_str();
  sweep->add_option("--overhead", sweep_args.overhead, "vertices per expected edge")->capture_default_str();
  sweep->add_option("--e-min", sweep_args.e_min, "first expected edge count")->required();
  sweep->add_option("--e-max", sweep_args.e_max, "last expected edge count")->required();
  sweep->add_option("--method", sweep_args.methods, "method (repeatable)")->required();
  sweep->add_option("--trials", sweep_args.trials, "Monte Carlo trials per row")->capture_default_str();
  sweep->add_option("--seed", sweep_args.seed, "Monte Carlo seed")->capture_default_str();
  sweep->add_option("--workers", sweep_args.workers, "Monte Carlo threads (0 = hardware)")->capture_default_str();
  sweep->add_option("--out", sweep_args.out, "output path (default: stdout)");
  sweep->add_option("--format", sweep_args.format, "csv | json")->capture_default_str();

  BreakdownArgs breakdown_args;
  auto* breakdown = app.add_subcommand("breakdown", "find where a formula method breaks down numerically");
  breakdown->add_option("--k", breakdown_args.k, "vertices per edge")->required();
  breakdown->add_option("--r", breakdown_args.r, "core order")->capture_default_str();
  breakdown->add_option("--overhead", breakdown_args.overhead, "vertices per expected edge")->capture_default_str();
  breakdown->add_option("--method", breakdown_args.method, "formula method")->capture_default_str();
  breakdown->add_option("--scope", breakdown_args.scope, "local | global")->capture_default_str();
  breakdown->add_option("--cap", breakdown_args.cap, "largest expected edge count scanned")->capture_default_str();
  breakdown->add_option("--format", breakdown_args.format, "csv | json")->capture_default_str();

  OracleArgs oracle_args;
  auto* oracle = app.add_subcommand("oracle", "exact probabilities by exhaustive enumeration (C(v,k) <= 20)");
  oracle->add_option("--v", oracle_args.v, "number of vertices")->required();
  oracle->add_option("--k", oracle_args.k, "vertices per edge")->required();
  oracle->add_option("--p", oracle_args.p, "edge probability")->required();
  oracle->add_option("--r", oracle_args.r, "core order")->capture_default_str();
  oracle->add_option("--format", oracle_args.format, "csv | json")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalidArgs;
  }

  try {
    if (local->parsed()) {
      local_args.p = local_p;
      local_args.expected_edges = local_e;
      if (local_args.methods.empty()) local_args.methods = {"connectivity"};
      return cmd_local(local_args, std::cout);
    }
    if (global->parsed()) {
      global_args.p = global_p;
      global_args.expected_edges = global_e;
      if (global_args.methods.empty()) global_args.methods = {"interleaved_lower", "interleaved_upper"};
      return cmd_global(global_args, std::cout);
    }
    if (sweep->parsed()) return cmd_sweep(sweep_args, std::cout);
    if (breakdown->parsed()) return cmd_breakdown(breakdown_args, std::cout);
    if (oracle->parsed()) return cmd_oracle(oracle_args, std::cout);
  } catch (const io_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIoFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalidArgs;
  }
  return kInvalidArgs;
}

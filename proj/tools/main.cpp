#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

namespace cli = dtransport::cli;

namespace {

void add_exponent_flags(CLI::App* app, cli::ExponentFlags& e) {
  app->add_option("--alpha", e.alpha, "exponent on the first input (p/q)");
  app->add_option("--beta", e.beta, "exponent on the second input (p/q)");
  app->add_option("--gamma", e.gamma, "exponent on the T- image (p/q)");
  app->add_option("--delta", e.delta, "exponent on the T+ image (p/q)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete transport inequalities on Z^n"};
  app.require_subcommand(1);

  cli::CheckOpOptions check_op;
  auto* check_cmd = app.add_subcommand("check-op", "check (P1), (P2) and the complement property");
  check_cmd->add_option("--op", check_op.op, "operation name or JSON spec");
  check_cmd->add_option("--kind", check_op.kind, "operation kind");
  check_cmd->add_option("--dim", check_op.dim, "ambient dimension");
  check_cmd->add_option("--radius", check_op.radius, "box radius");

  cli::CoupleOptions couple;
  auto* couple_cmd = app.add_subcommand("couple", "build a coupling of two measures");
  couple_cmd->add_option("mu", couple.mu_file, "first measure (JSON)")->required();
  couple_cmd->add_option("nu", couple.nu_file, "second measure (JSON)")->required();
  couple_cmd->add_option("--mode", couple.mode, "monotone | knothe")
      ->check(CLI::IsMember({"monotone", "knothe"}));
  couple_cmd->add_option("--order", couple.order, "order as JSON (monotone mode)");
  couple_cmd->add_option("--decomposition", couple.decomposition,
                         "decomposition as JSON (knothe mode)");

  cli::VerifyOptions verify;
  std::optional<std::string> verify_out;
  auto* verify_cmd = app.add_subcommand("verify", "run one check on an instance file");
  verify_cmd->add_option("instance", verify.instance_file, "instance (JSON)")->required();
  verify_cmd->add_option("--check", verify.check,
                         "dbm | set-bm | entropy | p-bound | pointwise | log-laplace")
      ->required();
  add_exponent_flags(verify_cmd, verify.exponents);
  verify_cmd->add_option("--tolerance", verify.tolerance, "absolute tolerance");
  verify_cmd->add_option("--radius", verify.radius, "box radius for operation checks");
  verify_cmd->add_option("--seed", verify.seed, "seed for randomized checks");
  verify_cmd->add_option("--out", verify_out, "write output to file");

  cli::RandomSuiteOptions suite;
  std::optional<std::string> suite_out;
  auto* suite_cmd = app.add_subcommand("random-suite", "run checks on seeded random instances");
  suite_cmd->add_option("--seed", suite.seed, "base seed");
  suite_cmd->add_option("--instances", suite.instances, "number of instances");
  suite_cmd->add_option("--dim", suite.dim, "ambient dimension");
  suite_cmd->add_option("--op", suite.op, "operation name or JSON spec");
  suite_cmd->add_option("--checks", suite.checks, "comma separated list of checks")
      ->delimiter(',');
  add_exponent_flags(suite_cmd, suite.exponents);
  suite_cmd->add_option("--tolerance", suite.tolerance, "absolute tolerance");
  suite_cmd->add_option("--radius", suite.radius, "box radius for operation checks");
  suite_cmd->add_option("--jobs", suite.jobs, "worker threads");
  suite_cmd->add_option("--out", suite_out, "write output to file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitInputError;
  }

  auto with_output = [](const std::optional<std::string>& path, auto&& run) {
    if (!path) return run(std::cout);
    std::ofstream file(*path);
    if (!file) {
      std::cerr << "error: cannot write '" << *path << "'\n";
      return cli::kExitInputError;
    }
    return run(file);
  };

  if (*check_cmd) return cli::cmd_check_op(check_op, std::cout, std::cerr);
  if (*couple_cmd) return cli::cmd_couple(couple, std::cout, std::cerr);
  if (*verify_cmd) {
    return with_output(verify_out,
                       [&](std::ostream& out) { return cli::cmd_verify(verify, out, std::cerr); });
  }
  return with_output(suite_out,
                     [&](std::ostream& out) { return cli::cmd_random_suite(suite, out, std::cerr); });
}

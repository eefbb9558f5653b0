#pragma once

// Subcommands of the `dt` command-line tool. Each returns the process exit
// code and writes its JSON output to `out`; diagnostics go to `err`.
//
// Exit codes: 0 verified / success, 1 violated, 2 input error, 3 inapplicable.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace dtransport::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolated = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitInapplicable = 3;

/// Tolerance from DT_TOLERANCE when set and parseable, else 1e-9.
double default_tolerance();

struct ExponentFlags {
  std::optional<std::string> alpha, beta, gamma, delta;
};

struct CheckOpOptions {
  std::optional<std::string> op;    // JSON spec or kind name
  std::optional<std::string> kind;  // used with dim when op is absent
  std::size_t dim = 1;
  long radius = 4;
};

int cmd_check_op(const CheckOpOptions& opts, std::ostream& out, std::ostream& err);

struct CoupleOptions {
  std::string mu_file;
  std::string nu_file;
  std::string mode = "monotone";             // monotone | knothe
  std::optional<std::string> order;          // JSON order, monotone mode
  std::optional<std::string> decomposition;  // JSON decomposition, knothe mode
};

int cmd_couple(const CoupleOptions& opts, std::ostream& out, std::ostream& err);

struct VerifyOptions {
  std::string instance_file;
  std::string check;  // dbm | set-bm | entropy | p-bound | pointwise | log-laplace
  ExponentFlags exponents;
  std::optional<double> tolerance;
  std::optional<long> radius;
  std::optional<std::uint64_t> seed;
};

int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err);

struct RandomSuiteOptions {
  std::uint64_t seed = 0;
  std::size_t instances = 100;
  std::size_t dim = 1;
  std::string op = "midpoint";
  std::vector<std::string> checks = {"pointwise", "p-bound", "entropy"};
  ExponentFlags exponents;  // random exponents unless all four are given
  std::optional<double> tolerance;
  long radius = 4;
  unsigned jobs = 1;
};

/// Checks: pointwise, p-bound, entropy, fibers, marginals, dbm, log-laplace.
int cmd_random_suite(const RandomSuiteOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace dtransport::cli

#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "dtransport/coupling.hpp"
#include "dtransport/io.hpp"
#include "dtransport/random_instances.hpp"
#include "dtransport/verify.hpp"

namespace dtransport::cli {

using io::json;

namespace {

/// Input problems detected by the front end; mapped to exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

json parse_json_text(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string(what) + " is not valid JSON: " + e.what());
  }
}

int exit_code(Outcome o) {
  switch (o) {
    case Outcome::verified: return kExitOk;
    case Outcome::violated: return kExitViolated;
    case Outcome::inapplicable: return kExitInapplicable;
  }
  return kExitInputError;
}

/// Runs `body`, converting input errors into exit code 2.
template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
  } catch (const json::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitInputError;
}

ExponentQuadruple resolve_exponents(const json* from_file, const ExponentFlags& flags) {
  json j = from_file ? *from_file : json::object();
  auto put = [&j](const char* key, const std::optional<std::string>& v) {
    if (v) j[key] = *v;
  };
  put("alpha", flags.alpha);
  put("beta", flags.beta);
  put("gamma", flags.gamma);
  put("delta", flags.delta);
  return io::parse_exponents(j);
}

bool any_exponent(const ExponentFlags& f) { return f.alpha || f.beta || f.gamma || f.delta; }

}  // namespace

double default_tolerance() {
  if (const char* env = std::getenv("DT_TOLERANCE")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && *end == '\0' && v >= 0.0) return v;
  }
  return kDefaultTolerance;
}

int cmd_check_op(const CheckOpOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (opts.dim == 0) throw InputError("dim must be positive");
    if (opts.radius < 1) throw InputError("radius must be >= 1");
    LatticeOperation op = opts.op ? io::parse_operation_text(*opts.op, opts.dim)
                                  : io::parse_operation(json{{"kind", opts.kind.value_or("midpoint")},
                                                             {"dim", opts.dim}});
    VerificationReport report = VerificationReport::pass("operation");
    for (auto&& sub : check_operation(op, opts.radius)) {
      if (!sub.verified() && report.verified()) {
        report.outcome = Outcome::violated;
        report.witness = sub.witness;
      }
      report.details.push_back(sub);
    }
    json j = io::to_json(report);
    j["kind"] = to_string(op.kind());
    j["dim"] = op.dim();
    j["radius"] = opts.radius;
    out << j.dump() << '\n';
    return report.verified() ? kExitOk : kExitViolated;
  });
}

int cmd_couple(const CoupleOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ProbabilityMeasure mu = io::parse_probability(read_json_file(opts.mu_file));
    const ProbabilityMeasure nu = io::parse_probability(read_json_file(opts.nu_file));
    if (mu.dim() != nu.dim()) throw InputError("measures have different dimensions");
    std::optional<Coupling> pi;
    if (opts.mode == "monotone") {
      const AdditiveTotalOrder order =
          opts.order ? io::parse_order(parse_json_text(*opts.order, "--order"))
                     : AdditiveTotalOrder::standard(mu.dim());
      pi = monotone_coupling(mu, nu, order);
    } else if (opts.mode == "knothe") {
      const Decomposition d =
          opts.decomposition
              ? io::parse_decomposition(parse_json_text(*opts.decomposition, "--decomposition"))
              : Decomposition::coordinatewise(mu.dim());
      pi = knothe_coupling(mu, nu, d);
    } else {
      throw InputError("unknown coupling mode '" + opts.mode + "'");
    }
    if (!(marginal(*pi, Marginal::first) == mu) || !(marginal(*pi, Marginal::second) == nu)) {
      err << "error: coupling marginals are not exact\n";
      return kExitViolated;
    }
    out << io::to_json(*pi).dump() << '\n';
    return kExitOk;
  });
}

int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    static const std::set<std::string> known = {"dbm",       "set-bm",    "entropy",
                                                "p-bound",   "pointwise", "log-laplace"};
    if (!known.count(opts.check)) throw InputError("unknown check '" + opts.check + "'");
    const json inst = read_json_file(opts.instance_file);
    const double tolerance =
        opts.tolerance.value_or(inst.contains("tolerance") ? inst.at("tolerance").get<double>()
                                                           : default_tolerance());
    const long radius =
        opts.radius.value_or(inst.contains("radius") ? inst.at("radius").get<long>()
                                                     : kDefaultBoxRadius);

    if (opts.check == "log-laplace") {
      const std::uint64_t seed =
          opts.seed.value_or(inst.contains("seed") ? inst.at("seed").get<std::uint64_t>() : 0);
      const auto result =
          log_laplace_gap(io::parse_real_function(inst.at("phi")), tolerance, seed);
      out << io::to_json(result.report).dump() << '\n';
      return exit_code(result.report.outcome);
    }

    const ExponentQuadruple e = resolve_exponents(
        inst.contains("exponents") ? &inst.at("exponents") : nullptr, opts.exponents);
    const std::size_t default_dim = inst.value("dim", std::size_t{1});
    if (!inst.contains("op")) throw InputError("instance has no 'op'");
    const json& op_json = inst.at("op");
    const LatticeOperation op = op_json.is_string()
                                    ? io::parse_operation_text(op_json.get<std::string>(), default_dim)
                                    : io::parse_operation(op_json, default_dim);

    VerificationReport report;
    if (opts.check == "dbm") {
      FunctionQuadruple q{io::parse_measure(inst.at("f")), io::parse_measure(inst.at("g")),
                          io::parse_measure(inst.at("h")), io::parse_measure(inst.at("k"))};
      report = verify_dbm(q, e, op, radius);
    } else if (opts.check == "set-bm") {
      report = set_dbm(io::parse_point_list(inst.at("A")), io::parse_point_list(inst.at("B")),
                       op, e);
    } else {
      const ProbabilityMeasure mu = io::parse_probability(inst.at("mu"));
      const ProbabilityMeasure nu = io::parse_probability(inst.at("nu"));
      const Decomposition d = inst.contains("decomposition")
                                  ? io::parse_decomposition(inst.at("decomposition"))
                                  : op.decomposition();
      if (opts.check == "entropy") {
        report = entropy_gap(mu, nu, op, d, e, tolerance).report;
      } else {
        const Coupling pi = inst.contains("coupling") ? io::parse_coupling(inst.at("coupling"))
                                                      : knothe_coupling(mu, nu, d);
        report = opts.check == "pointwise" ? pointwise_term_bound(mu, nu, pi, op, e)
                                           : p_value(mu, nu, pi, op, e, tolerance).report;
      }
    }
    out << io::to_json(report).dump() << '\n';
    return exit_code(report.outcome);
  });
}

namespace {

struct InstanceResult {
  std::vector<VerificationReport> reports;
};

constexpr std::uint64_t kDbmStream = 0x6462'6d00'0000'0001ULL;
constexpr std::uint64_t kPhiStream = 0x7068'6900'0000'0002ULL;

InstanceResult run_instance(const RandomSuiteOptions& opts, const LatticeOperation& op,
                            const std::vector<VerificationReport>& op_checks,
                            const std::optional<ExponentQuadruple>& fixed, double tolerance,
                            std::uint64_t index) {
  auto rng = instance_engine(opts.seed, index);
  const ProbabilityMeasure mu = random_measure(rng, opts.dim);
  const ProbabilityMeasure nu = random_measure(rng, opts.dim);
  const ExponentQuadruple drawn = random_exponents(rng);
  const ExponentQuadruple& e = fixed ? *fixed : drawn;
  const Decomposition& d = op.decomposition();

  std::optional<Coupling> pi;
  auto coupling = [&]() -> const Coupling& {
    if (!pi) pi = knothe_coupling(mu, nu, d);
    return *pi;
  };

  InstanceResult result;
  for (const auto& check : opts.checks) {
    if (check == "pointwise") {
      result.reports.push_back(pointwise_term_bound(mu, nu, coupling(), op, e));
    } else if (check == "p-bound") {
      result.reports.push_back(p_value(mu, nu, coupling(), op, e, tolerance).report);
    } else if (check == "entropy") {
      result.reports.push_back(entropy_gap(mu, nu, op, d, e, tolerance).report);
    } else if (check == "fibers") {
      result.reports.push_back(d.block_count() == 1
                                   ? check_fiber_structure(coupling(), op)
                                   : check_knothe_fiber_structure(coupling(), op));
    } else if (check == "marginals") {
      VerificationReport r = VerificationReport::pass("marginals");
      if (!(marginal(coupling(), Marginal::first) == mu) ||
          !(marginal(coupling(), Marginal::second) == nu)) {
        r = VerificationReport::fail("marginals", Witness{{}, "projection differs from input"});
      }
      result.reports.push_back(r);
    } else if (check == "dbm") {
      auto drng = instance_engine(opts.seed ^ kDbmStream, index);
      const auto kind = static_cast<QuadrupleKind>(index % 3);
      const FunctionQuadruple q = random_quadruple(drng, op, e, kind);
      result.reports.push_back(verify_dbm(q, e, op, op_checks));
    } else if (check == "log-laplace") {
      auto prng = instance_engine(opts.seed ^ kPhiStream, index);
      const RealFunction phi = random_phi(prng, opts.dim);
      result.reports.push_back(
          log_laplace_gap(phi, tolerance, splitmix64(opts.seed ^ kPhiStream ^ index)).report);
    }
  }
  return result;
}

}  // namespace

int cmd_random_suite(const RandomSuiteOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    static const std::set<std::string> known = {"pointwise", "p-bound", "entropy",   "fibers",
                                                "marginals", "dbm",     "log-laplace"};
    for (const auto& c : opts.checks) {
      if (!known.count(c)) throw InputError("unknown check '" + c + "'");
    }
    if (opts.dim == 0) throw InputError("dim must be positive");
    const LatticeOperation op = io::parse_operation_text(opts.op, opts.dim);
    if (op.dim() != opts.dim) {
      throw InputError("operation has dim " + std::to_string(op.dim()) + " but --dim is " +
                       std::to_string(opts.dim));
    }
    std::optional<ExponentQuadruple> fixed;
    if (any_exponent(opts.exponents)) fixed = resolve_exponents(nullptr, opts.exponents);
    const double tolerance = opts.tolerance.value_or(default_tolerance());
    const bool wants_dbm =
        std::find(opts.checks.begin(), opts.checks.end(), "dbm") != opts.checks.end();
    const std::vector<VerificationReport> op_checks =
        wants_dbm && opts.instances > 0 ? check_operation(op, opts.radius)
                                        : std::vector<VerificationReport>{};

    std::vector<InstanceResult> results(opts.instances);
    std::atomic<std::size_t> next{0};
    std::string failure;
    std::mutex failure_mutex;
    auto worker = [&] {
      for (std::size_t i = next++; i < opts.instances; i = next++) {
        try {
          results[i] = run_instance(opts, op, op_checks, fixed, tolerance, i);
        } catch (const std::exception& e) {
          std::lock_guard lock(failure_mutex);
          if (failure.empty()) failure = e.what();
        }
      }
    };
    const unsigned jobs = std::max(1u, std::min<unsigned>(opts.jobs, 64));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (!failure.empty()) throw std::invalid_argument(failure);

    json counts = json::object();
    for (const auto& c : opts.checks) {
      counts[c] = {{"verified", 0}, {"violated", 0}, {"inapplicable", 0}};
    }
    std::optional<double> worst_gap, worst_log_p;
    json first_failure = nullptr;
    bool all_ok = true;
    for (std::size_t i = 0; i < results.size(); ++i) {
      json reports = json::array();
      for (std::size_t c = 0; c < results[i].reports.size(); ++c) {
        const VerificationReport& r = results[i].reports[c];
        reports.push_back(io::to_json(r));
        counts[opts.checks[c]][to_string(r.outcome)] =
            counts[opts.checks[c]][to_string(r.outcome)].get<int>() + 1;
        if (r.gap && opts.checks[c] == "entropy") {
          worst_gap = std::min(worst_gap.value_or(*r.gap), *r.gap);
        }
        if (r.log_p) worst_log_p = std::max(worst_log_p.value_or(*r.log_p), *r.log_p);
        if (!r.verified()) {
          all_ok = false;
          if (first_failure.is_null()) {
            first_failure = {{"instance", i}, {"report", io::to_json(r)}};
          }
        }
      }
      out << json{{"instance", i}, {"reports", reports}}.dump() << '\n';
    }
    json summary = {{"instances", opts.instances}, {"seed", opts.seed}, {"op", to_string(op.kind())},
                    {"dim", opts.dim},             {"counts", counts},  {"passed", all_ok}};
    summary["worst_gap"] = worst_gap ? json(*worst_gap) : json(nullptr);
    summary["worst_log_p"] = worst_log_p ? json(*worst_log_p) : json(nullptr);
    summary["first_failure"] = first_failure;
    out << json{{"summary", summary}}.dump() << '\n';
    return all_ok ? kExitOk : kExitViolated;
  });
}

}  // namespace dtransport::cli

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "doctest.h"
#include "dtransport/io.hpp"

namespace cli = dtransport::cli;
using dtransport::io::json;

namespace {

const std::string kData = DT_DATA_DIR;

std::string data(const std::string& name) { return kData + "/" + name; }

struct Run {
  int code;
  std::string out;
  std::string err;
};

template <typename Options, typename Fn>
Run run(Fn fn, const Options& opts) {
  std::ostringstream out, err;
  const int code = fn(opts, out, err);
  return {code, out.str(), err.str()};
}

std::vector<json> lines(const std::string& text) {
  std::vector<json> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(json::parse(line));
  return out;
}

std::string temp_file(const std::string& name, const std::string& contents) {
  const auto path = std::filesystem::temp_directory_path() / ("dt_cli_test_" + name);
  std::ofstream(path) << contents;
  return path.string();
}

cli::VerifyOptions verify_opts(const std::string& file, const std::string& check) {
  cli::VerifyOptions o;
  o.instance_file = file;
  o.check = check;
  return o;
}

}  // namespace

TEST_CASE("check-op") {
  cli::CheckOpOptions o;
  o.kind = "midpoint";
  o.dim = 2;
  o.radius = 3;
  auto r = run(cli::cmd_check_op, o);
  CHECK(r.code == cli::kExitOk);
  CHECK(json::parse(r.out)["outcome"] == "verified");

  o = {};
  o.op = R"({"kind":"difference_map","dim":1,"table":[],"default":"negate"})";
  r = run(cli::cmd_check_op, o);
  CHECK(r.code == cli::kExitViolated);
  const json j = json::parse(r.out);
  bool p2_witness = false;
  for (const auto& d : j["details"]) {
    if (d["check"] == "p2") p2_witness = d.contains("witness");
  }
  CHECK(p2_witness);

  o = {};
  o.op = R"({"kind":"midpoint","dim":0})";
  r = run(cli::cmd_check_op, o);
  CHECK(r.code == cli::kExitInputError);
  CHECK_FALSE(r.err.empty());

  o = {};
  o.kind = "midpoint";
  o.dim = 0;
  CHECK(run(cli::cmd_check_op, o).code == cli::kExitInputError);
}

TEST_CASE("couple") {
  cli::CoupleOptions o;
  o.mu_file = data("mu_uniform3.json");
  o.nu_file = data("nu_uniform2.json");
  auto r = run(cli::cmd_couple, o);
  REQUIRE(r.code == cli::kExitOk);
  const auto pi = dtransport::io::parse_coupling(json::parse(r.out));
  CHECK(pi.size() == 4);
  CHECK(pi.weight(dtransport::LatticePoint{1}, dtransport::LatticePoint{0}) ==
        dtransport::Rational(1, 6));

  o.nu_file = data("mu_uniform3.json");
  r = run(cli::cmd_couple, o);
  REQUIRE(r.code == cli::kExitOk);
  for (const auto& a : json::parse(r.out)["atoms"]) CHECK(a["x"] == a["y"]);

  o.mode = "knothe";
  o.decomposition = R"({"blocks":[{"dim":1}]})";
  CHECK(run(cli::cmd_couple, o).code == cli::kExitOk);

  o = {};
  o.mu_file = data("mu_uniform3.json");
  o.nu_file = data("mu_plane.json");
  CHECK(run(cli::cmd_couple, o).code == cli::kExitInputError);

  o.nu_file = data("does_not_exist.json");
  CHECK(run(cli::cmd_couple, o).code == cli::kExitInputError);

  o.nu_file = temp_file("broken.json", "{not json");
  CHECK(run(cli::cmd_couple, o).code == cli::kExitInputError);

  o.nu_file = data("nu_uniform2.json");
  o.mode = "sideways";
  CHECK(run(cli::cmd_couple, o).code == cli::kExitInputError);
}

TEST_CASE("verify p-bound on the equality instance") {
  const auto r = run(cli::cmd_verify, verify_opts(data("equality.json"), "p-bound"));
  CHECK(r.code == cli::kExitOk);
  const json j = json::parse(r.out);
  CHECK(std::abs(j["log_p"].get<double>()) <= 1e-12);
  CHECK(j["lhs"] == "1");
}

TEST_CASE("verify pointwise on the negative control") {
  const auto r = run(cli::cmd_verify, verify_opts(data("negative_control.json"), "pointwise"));
  CHECK(r.code == cli::kExitViolated);
  const json j = json::parse(r.out);
  CHECK(j["witness"]["x"] == json::array({0}));
  CHECK(j["witness"]["y"] == json::array({0}));
}

TEST_CASE("verify rejects invalid exponents and unknown checks") {
  auto o = verify_opts(data("equality.json"), "p-bound");
  o.exponents.alpha = "2";
  o.exponents.gamma = "1";
  CHECK(run(cli::cmd_verify, o).code == cli::kExitInputError);
  CHECK(run(cli::cmd_verify, verify_opts(data("equality.json"), "bogus")).code ==
        cli::kExitInputError);
  CHECK(run(cli::cmd_verify, verify_opts(data("missing.json"), "entropy")).code ==
        cli::kExitInputError);
}

TEST_CASE("verify dispatches every check") {
  CHECK(run(cli::cmd_verify, verify_opts(data("equality.json"), "entropy")).code == cli::kExitOk);
  CHECK(run(cli::cmd_verify, verify_opts(data("negative_control.json"), "entropy")).code ==
        cli::kExitViolated);
  CHECK(run(cli::cmd_verify, verify_opts(data("sets_meet_join.json"), "set-bm")).code ==
        cli::kExitOk);
  CHECK(run(cli::cmd_verify, verify_opts(data("dbm_midpoint.json"), "dbm")).code == cli::kExitOk);
  CHECK(run(cli::cmd_verify, verify_opts(data("phi.json"), "log-laplace")).code == cli::kExitOk);
  CHECK(run(cli::cmd_verify, verify_opts(data("knothe_plane.json"), "entropy")).code ==
        cli::kExitOk);

  // A hypothesis-violating quadruple is inapplicable.
  const auto bad = temp_file("bad_dbm.json", R"({"op":"midpoint",
    "f":{"dim":1,"atoms":[{"x":[0],"w":"1"}]}, "g":{"dim":1,"atoms":[{"x":[0],"w":"1"}]},
    "h":{"dim":1,"atoms":[{"x":[1],"w":"1"}]}, "k":{"dim":1,"atoms":[{"x":[1],"w":"1"}]}})");
  CHECK(run(cli::cmd_verify, verify_opts(bad, "dbm")).code == cli::kExitInapplicable);
}

TEST_CASE("verify honours a supplied coupling") {
  const auto file = temp_file("with_coupling.json", R"({"op":"midpoint",
    "mu":{"dim":1,"atoms":[{"x":[0],"w":"1/2"},{"x":[1],"w":"1/2"}]},
    "nu":{"dim":1,"atoms":[{"x":[0],"w":"1/2"},{"x":[1],"w":"1/2"}]},
    "coupling":{"dim":1,"atoms":[{"x":[0],"y":[1],"w":"1/2"},{"x":[1],"y":[0],"w":"1/2"}]}})");
  // The anti-diagonal coupling sends everything to 0 and 1: kappa_- = delta_0,
  // kappa_+ = delta_1, so every term is 1 / (1/4) = 4.
  const auto r = run(cli::cmd_verify, verify_opts(file, "pointwise"));
  CHECK(r.code == cli::kExitViolated);
}

TEST_CASE("random suite") {
  cli::RandomSuiteOptions o;
  o.seed = 7;
  o.instances = 40;
  auto r = run(cli::cmd_random_suite, o);
  auto out = lines(r.out);
  REQUIRE(out.size() == 41);
  const json summary = out.back()["summary"];
  CHECK(summary["instances"] == 40);
  CHECK(summary["counts"]["entropy"]["verified"] == 40);
  CHECK((r.code == cli::kExitOk) == summary["passed"].get<bool>());

  o.instances = 0;
  r = run(cli::cmd_random_suite, o);
  CHECK(r.code == cli::kExitOk);
  out = lines(r.out);
  REQUIRE(out.size() == 1);
  CHECK(out[0]["summary"]["passed"] == true);

  o.instances = 20;
  o.op = R"({"kind":"difference_map","table":[],"default":"negate"})";
  r = run(cli::cmd_random_suite, o);
  CHECK(r.code == cli::kExitViolated);
  CHECK_FALSE(lines(r.out).back()["summary"]["first_failure"].is_null());

  o.op = "midpoint";
  o.checks = {"pointwise", "nonsense"};
  CHECK(run(cli::cmd_random_suite, o).code == cli::kExitInputError);
}

TEST_CASE("random suite output is deterministic and independent of the job count") {
  cli::RandomSuiteOptions o;
  o.seed = 99;
  o.instances = 60;
  o.dim = 2;
  o.op = R"({"kind":"product","factors":[{"kind":"midpoint","dim":1},{"kind":"meet_join","dim":1}]})";
  o.checks = {"pointwise", "p-bound", "entropy", "marginals", "fibers", "dbm", "log-laplace"};
  const auto a = run(cli::cmd_random_suite, o);
  const auto b = run(cli::cmd_random_suite, o);
  o.jobs = 4;
  const auto c = run(cli::cmd_random_suite, o);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
  CHECK(a.code == c.code);
}

TEST_CASE("fixed exponents from flags") {
  cli::RandomSuiteOptions o;
  o.instances = 10;
  o.exponents.gamma = "2";
  o.exponents.delta = "2";
  o.checks = {"entropy"};
  const auto r = run(cli::cmd_random_suite, o);
  CHECK(r.code == cli::kExitOk);
  o.exponents.alpha = "3";
  CHECK(run(cli::cmd_random_suite, o).code == cli::kExitInputError);
}

TEST_CASE("tolerance default comes from the environment") {
  ::setenv("DT_TOLERANCE", "0.25", 1);
  CHECK(cli::default_tolerance() == 0.25);
  ::setenv("DT_TOLERANCE", "garbage", 1);
  CHECK(cli::default_tolerance() == 1e-9);
  ::unsetenv("DT_TOLERANCE");
  CHECK(cli::default_tolerance() == 1e-9);
}

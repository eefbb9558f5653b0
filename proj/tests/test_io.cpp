#include "doctest.h"
#include "dtransport/io.hpp"
#include "dtransport/random_instances.hpp"
#include "test_support.hpp"

using namespace dt_test;
using dtransport::io::json;
namespace io = dtransport::io;

TEST_CASE("points round-trip, including big coordinates") {
  const LatticePoint x{3, -7};
  CHECK(io::to_json(x) == json::array({3, -7}));
  CHECK(io::parse_point(io::to_json(x)) == x);
  const LatticePoint big(std::vector<Integer>{Integer("-99999999999999999999999"), Integer(4)});
  CHECK(io::to_json(big)[0] == "-99999999999999999999999");
  CHECK(io::parse_point(io::to_json(big)) == big);
  CHECK_THROWS_AS(io::parse_point(json::array()), std::invalid_argument);
  CHECK_THROWS_AS(io::parse_point(json::parse("[1.5]")), std::invalid_argument);
}

TEST_CASE("measure files") {
  const auto j = json::parse(R"({"dim":1,"atoms":[{"x":[0],"w":"1/3"},{"x":[1],"w":"2/3"}]})");
  const auto mu = io::parse_probability(j);
  CHECK(mu == measure1({{0, q("1/3")}, {1, q("2/3")}}));
  CHECK(io::to_json(mu.measure()) == j);
  CHECK_THROWS_AS(io::parse_measure(json::parse(R"({"dim":1,"atoms":[{"x":[0],"w":"0.5"}]})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(io::parse_measure(json::parse(R"({"dim":1,"atoms":[{"x":[0],"w":0.5}]})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(io::parse_probability(json::parse(R"({"dim":1,"atoms":[{"x":[0],"w":"1/2"}]})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(io::parse_measure(json::parse(R"({"dim":0,"atoms":[]})")),
                  std::invalid_argument);
}

TEST_CASE("serialize then parse is the identity on random measures and couplings") {
  for (std::uint64_t i = 0; i < 200; ++i) {
    auto rng = instance_engine(83, i);
    const std::size_t dim = 1 + i % 3;
    const auto mu = random_measure(rng, dim);
    const auto nu = random_measure(rng, dim);
    const json jm = io::to_json(mu.measure());
    CHECK(io::parse_measure(jm) == mu.measure());
    CHECK(io::parse_measure(json::parse(jm.dump())) == mu.measure());
    CHECK(io::to_json(io::parse_measure(jm)).dump() == jm.dump());
    const auto pi = knothe_coupling(mu, nu, Decomposition::coordinatewise(dim));
    const auto back = io::parse_coupling(json::parse(io::to_json(pi).dump()));
    CHECK(back == pi);
    CHECK(back.left() == mu);
    CHECK(back.right() == nu);
  }
}

TEST_CASE("orders and decompositions") {
  const AdditiveTotalOrder o({1, 0}, {-1, 1});
  const json j = io::to_json(o);
  CHECK(j["perm"] == json::array({2, 1}));
  CHECK(io::parse_order(j) == o);
  CHECK(io::parse_order(json::parse(R"({"dim":2})")) == AdditiveTotalOrder::standard(2));
  CHECK_THROWS_AS(io::parse_order(json::parse(R"({"dim":2,"perm":[0,1]})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(io::parse_order(json::parse(R"({"dim":2,"perm":[1,1]})")),
                  std::invalid_argument);
  const auto d = Decomposition::make({{2, o}, {1, AdditiveTotalOrder::standard(1)}});
  CHECK(io::parse_decomposition(io::to_json(d)) == d);
  CHECK(io::parse_decomposition(json::parse(R"({"blocks":[{"dim":1},{"dim":1}]})")) ==
        Decomposition::coordinatewise(2));
}

TEST_CASE("operation specs") {
  auto op = io::parse_operation_text("midpoint", 2);
  CHECK(op.kind() == OperationKind::midpoint);
  CHECK(op.dim() == 2);
  op = io::parse_operation(json::parse(R"({"kind":"meet_join","dim":3})"));
  CHECK(op.dim() == 3);
  op = io::parse_operation_text(
      R"({"kind":"product","factors":[{"kind":"midpoint","dim":1},{"kind":"meet_join","dim":1}]})", 1);
  CHECK(op.dim() == 2);
  CHECK(op.t_minus(LatticePoint{1, 0}, LatticePoint{2, 3}) == LatticePoint{1, 0});

  op = io::parse_operation_text(R"({"kind":"difference_map","table":[],"default":"negate"})", 1);
  CHECK(op.kind() == OperationKind::difference_map);
  CHECK(op.t_minus(p1(0), p1(1)) == p1(2));

  // Table entries override the default.
  op = io::parse_operation_text(
      R"({"kind":"difference_map","dim":1,"table":[{"w":[1],"t":[1]}],"default":"floor_half"})", 1);
  CHECK(op.t_minus(p1(1), p1(0)) == p1(1));
  CHECK(op.t_minus(p1(3), p1(0)) == p1(1));
  CHECK(check_p2(op, 3).verified());

  CHECK_THROWS_AS(io::parse_operation_text("nonsense", 1), std::invalid_argument);
  CHECK_THROWS_AS(io::parse_operation_text(R"({"kind":"midpoint","dim":0})", 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(io::parse_operation_text(R"({"kind":"spiral","dim":1})", 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      io::parse_operation_text(R"({"kind":"difference_map","dim":1,"default":"cube"})", 1),
      std::invalid_argument);
}

TEST_CASE("exponents") {
  auto e = io::parse_exponents(json::parse(R"({"alpha":"1/2","beta":"1/2","gamma":"3/4"})"));
  CHECK(e.alpha() == q("1/2"));
  CHECK(e.delta() == 1);
  CHECK(e.gamma() == q("3/4"));
  CHECK(io::parse_exponents(io::to_json(e)).common_denominator() == e.common_denominator());
  CHECK_THROWS_AS(io::parse_exponents(json::parse(R"({"alpha":"2","gamma":"1"})")),
                  std::invalid_argument);
}

TEST_CASE("reports") {
  auto r = VerificationReport::fail("pointwise", Witness{{{"x", p1(0)}, {"y", p1(0)}}, "bad"});
  r.lhs = "2";
  r.rhs = "1";
  const json j = io::to_json(r);
  CHECK(j["check"] == "pointwise");
  CHECK(j["outcome"] == "violated");
  CHECK(j["witness"]["x"] == json::array({0}));
  CHECK(j["witness"]["detail"] == "bad");
  CHECK(j["tolerance"] == 0.0);
  CHECK_FALSE(j.contains("log_p"));
}

TEST_CASE("real functions and point lists") {
  const auto phi = io::parse_real_function(json::parse(R"([{"x":[0],"v":0.5},{"x":[2],"v":-1}])"));
  CHECK(phi.size() == 2);
  CHECK(phi.at(p1(2)) == -1.0);
  const auto pts = io::parse_point_list(json::parse("[[0,1],[2,3]]"));
  CHECK(pts.size() == 2);
  CHECK(pts[1] == LatticePoint{2, 3});
}

#include <random>

#include "doctest.h"
#include "test_support.hpp"

using namespace dt_test;

namespace {

/// Every signed-permutation order of the given dimension.
std::vector<AdditiveTotalOrder> all_orders(std::size_t dim) {
  std::vector<std::size_t> perm(dim);
  for (std::size_t i = 0; i < dim; ++i) perm[i] = i;
  std::vector<AdditiveTotalOrder> out;
  do {
    for (unsigned mask = 0; mask < (1u << dim); ++mask) {
      std::vector<int> signs(dim);
      for (std::size_t i = 0; i < dim; ++i) signs[i] = (mask >> i) & 1 ? -1 : 1;
      out.emplace_back(perm, signs);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

/// Sign-adjusted (per coordinate), permuted coordinates compared with std::vector's lex order.
Ordering tuple_compare(const AdditiveTotalOrder& o, const LatticePoint& x, const LatticePoint& y) {
  std::vector<long> a, b;
  for (std::size_t i = 0; i < o.dim(); ++i) {
    const std::size_t axis = o.perm()[i];
    a.push_back(o.signs()[axis] * x[axis].get_si());
    b.push_back(o.signs()[axis] * y[axis].get_si());
  }
  if (a < b) return Ordering::less;
  if (a == b) return Ordering::equal;
  return Ordering::greater;
}

LatticePoint random_point(std::mt19937_64& rng, std::size_t dim, long r) {
  std::uniform_int_distribution<long> coord(-r, r);
  std::vector<Integer> c;
  for (std::size_t i = 0; i < dim; ++i) c.emplace_back(coord(rng));
  return LatticePoint(std::move(c));
}

}  // namespace

TEST_CASE("lattice point arithmetic") {
  const LatticePoint x{1, -2}, y{3, 5};
  CHECK(x + y == LatticePoint{4, 3});
  CHECK(x - y == LatticePoint{-2, -7});
  CHECK(-x == LatticePoint{-1, 2});
  CHECK(LatticePoint::zero(3) == LatticePoint{0, 0, 0});
  CHECK(LatticePoint::basis(3, 1, -2) == LatticePoint{0, -2, 0});
  CHECK(concat(x, y) == LatticePoint{1, -2, 3, 5});
  CHECK(x.to_string() == "(1,-2)");
  CHECK_THROWS_AS(x + LatticePoint{1}, std::invalid_argument);
  CHECK_THROWS_AS(LatticePoint(std::vector<Integer>{}), std::invalid_argument);
}

TEST_CASE("big coordinates stay exact") {
  const Integer big("123456789012345678901234567890");
  const LatticePoint x(std::vector<Integer>{big});
  CHECK((x + x)[0] == big * 2);
  CHECK(AdditiveTotalOrder::standard(1).compare(x, x + LatticePoint{1}) == Ordering::less);
}

TEST_CASE("compare examples") {
  const auto lex2 = AdditiveTotalOrder::standard(2);
  CHECK(lex2.compare(LatticePoint{0, 1}, LatticePoint{1, -5}) == Ordering::less);
  CHECK(lex2.compare(LatticePoint{3, 3}, LatticePoint{3, 3}) == Ordering::equal);
  const AdditiveTotalOrder flipped({0, 1}, {-1, 1});
  const LatticePoint x{0, 0}, y{1, 0};
  CHECK(flipped.compare(x, y) == Ordering::greater);
  CHECK(tuple_compare(flipped, x, y) == Ordering::greater);
  CHECK_THROWS_AS(lex2.compare(LatticePoint{0}, LatticePoint{0}), std::invalid_argument);
}

TEST_CASE("unit examples") {
  CHECK(AdditiveTotalOrder::standard(1).unit() == LatticePoint{1});
  CHECK(AdditiveTotalOrder::standard(2).unit() == LatticePoint{0, 1});
  CHECK(AdditiveTotalOrder({0}, {-1}).unit() == LatticePoint{-1});
  CHECK(AdditiveTotalOrder({1, 0}, {-1, 1}).unit() == LatticePoint{-1, 0});
  CHECK(AdditiveTotalOrder({1, 0}, {1, -1}).unit() == LatticePoint{1, 0});
}

TEST_CASE("order construction errors") {
  CHECK_THROWS_AS(AdditiveTotalOrder({0, 0}, {1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(AdditiveTotalOrder({0, 1}, {1}), std::invalid_argument);
  CHECK_THROWS_AS(AdditiveTotalOrder({0}, {2}), std::invalid_argument);
  CHECK_THROWS_AS(AdditiveTotalOrder({}, {}), std::invalid_argument);
}

TEST_CASE("order agrees with the tuple oracle and is additive") {
  std::mt19937_64 rng(11);
  for (std::size_t dim = 1; dim <= 3; ++dim) {
    for (const auto& o : all_orders(dim)) {
      for (int trial = 0; trial < 200; ++trial) {
        const auto x = random_point(rng, dim, 4);
        const auto y = random_point(rng, dim, 4);
        const auto z = random_point(rng, dim, 4);
        const Ordering xy = o.compare(x, y);
        REQUIRE(xy == tuple_compare(o, x, y));
        // Totality: exactly one relation, antisymmetric.
        const Ordering yx = o.compare(y, x);
        CHECK((xy == Ordering::equal) == (yx == Ordering::equal));
        CHECK((xy == Ordering::less) == (yx == Ordering::greater));
        CHECK((xy == Ordering::equal) == (x == y));
        CHECK(o.compare(x + z, y + z) == xy);
        if (o.less_equal(x, y) && o.less_equal(y, z)) CHECK(o.less_equal(x, z));
      }
    }
  }
}

TEST_CASE("unit is the least positive element on boxes") {
  for (std::size_t dim = 1; dim <= 3; ++dim) {
    const long r = dim == 3 ? 3 : 5;
    std::vector<LatticePoint> box;
    std::vector<long> cur(dim, -r);
    while (true) {
      std::vector<Integer> c(cur.begin(), cur.end());
      box.emplace_back(std::move(c));
      std::size_t i = 0;
      while (i < dim && cur[i] == r) cur[i++] = -r;
      if (i == dim) break;
      ++cur[i];
    }
    for (const auto& o : all_orders(dim)) {
      const auto zero = LatticePoint::zero(dim);
      const auto u = o.unit();
      REQUIRE(o.less(zero, u));
      for (const auto& g : box) {
        if (o.less(zero, g)) CHECK_FALSE(o.less(g, u));
      }
    }
  }
}

TEST_CASE("sort follows the order") {
  const AdditiveTotalOrder o({1, 0}, {1, -1});
  std::vector<LatticePoint> pts{{0, 0}, {1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  o.sort(pts);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) CHECK(o.less(pts[i], pts[i + 1]));
  // Keys (-x1, x0): (0,1) is smallest, (0,-1) largest.
  CHECK(pts.front() == LatticePoint{0, 1});
  CHECK(pts.back() == LatticePoint{0, -1});
}

TEST_CASE("decomposition examples") {
  const auto lex1 = AdditiveTotalOrder::standard(1);
  const auto single = Decomposition::make({{1, lex1}});
  CHECK(single.block_count() == 1);
  CHECK(single.total_dim() == 1);

  const auto two = Decomposition::make({{1, lex1}, {1, lex1}});
  const LatticePoint x{5, 7};
  CHECK(two.prefix(x, 1) == LatticePoint{5});
  CHECK(two.prefix(x, 2) == LatticePoint{5, 7});
  CHECK(two == Decomposition::coordinatewise(2));

  const auto mixed = Decomposition::make({{2, AdditiveTotalOrder::standard(2)}, {1, lex1}});
  CHECK(mixed.total_dim() == 3);
  const auto parts = mixed.split(LatticePoint{1, 2, 3});
  REQUIRE(parts.size() == 2);
  CHECK(parts[0] == LatticePoint{1, 2});
  CHECK(parts[1] == LatticePoint{3});
  CHECK(mixed.component(LatticePoint{1, 2, 3}, 1) == LatticePoint{3});
  CHECK(mixed.offset(1) == 2);
  CHECK(mixed.offset(2) == 3);

  const auto joined = concat(mixed, single);
  CHECK(joined.total_dim() == 4);
  CHECK(joined.block_count() == 3);
}

TEST_CASE("decomposition errors") {
  const auto lex1 = AdditiveTotalOrder::standard(1);
  CHECK_THROWS_AS(Decomposition::make({}), std::invalid_argument);
  CHECK_THROWS_AS(Decomposition::make({{2, lex1}}), std::invalid_argument);
  CHECK_THROWS_AS(Decomposition::make({{0, lex1}}), std::invalid_argument);
  const auto two = Decomposition::coordinatewise(2);
  CHECK_THROWS_AS(two.split(LatticePoint{1}), std::invalid_argument);
  CHECK_THROWS_AS(two.prefix(LatticePoint{1, 2}, 0), std::out_of_range);
  CHECK_THROWS_AS(two.prefix(LatticePoint{1, 2}, 3), std::out_of_range);
}

#include <vector>

#include "doctest.h"
#include "frontwave/pcfn.hpp"

using namespace frontwave;

namespace {
PiecewiseConstantFn indicator(int nu) {
  const std::vector<Sample> s{{0.0, 1.0}, {1.0, 0.0}};
  return approximate_initial_datum(s, nu);
}
}  // namespace

TEST_CASE("indicator approximation") {
  const auto u = indicator(1);
  CHECK(u.jump_count() == 2);
  CHECK(u.at(0.5) == 2);
  CHECK(u.at(1.0) == 0);
  CHECK(u.left_limit(1.0) == 2);
  CHECK(total_variation(u) == 4);
  CHECK(u.integral() == 1.0);
  CHECK(u.max_value() == 2);
}

TEST_CASE("invalid step functions are rejected") {
  CHECK_THROWS(PiecewiseConstantFn(1, {0.0, 1.0}, {0, 1, 1}));
  CHECK_THROWS(PiecewiseConstantFn(1, {1.0, 0.0}, {0, 1, 0}));
  CHECK_THROWS(PiecewiseConstantFn(1, {0.0}, {0, 1}));
}

TEST_CASE("level sets and coarea") {
  const auto u = indicator(2);
  const auto ls = level_set(u, 0.375);
  REQUIRE(ls.size() == 1);
  CHECK(ls[0].lo == 0.0);
  CHECK(ls[0].hi == 1.0);
  CHECK(level_set(u, 1.125).empty());
  const auto c = coarea_check(u);
  CHECK(c.lhs == c.rhs);
  CHECK(c.lhs == 8);

  const PiecewiseConstantFn stairs(2, {0.0, 1.0, 2.0, 3.0}, {0, 3, 1, 2, 0});
  const auto cs = coarea_check(stairs);
  CHECK(cs.lhs == cs.rhs);
  CHECK(cs.lhs == total_variation(stairs));
  CHECK(level_set(stairs, 0.3).size() == 2);
  CHECK(level_set(stairs, 0.6).size() == 1);
}

TEST_CASE("approximation rounds to the nearest grid value") {
  const std::vector<Sample> s{{0.0, 0.3}, {1.0, 0.0}};
  const auto u = approximate_initial_datum(s, 2);
  CHECK(u.at(0.5) == 1);
  const std::vector<Sample> tiny{{0.0, 0.05}, {1.0, 0.0}};
  CHECK(approximate_initial_datum(tiny, 2).jump_count() == 0);
}

TEST_CASE("l1 distance and partial total variation") {
  const auto a = indicator(1);
  const PiecewiseConstantFn b(1, {0.0, 2.0}, {0, 2, 0});
  CHECK(l1_distance(a, b) == 1.0);
  CHECK(l1_distance(a, a) == 0.0);
  CHECK(total_variation_on(a, -1.0, 0.5) == 2);
  CHECK(total_variation_on(a, 0.0, 1.0) == 0);
  CHECK(total_variation_on(a, 0.0, 1.0, true) == 4);
}

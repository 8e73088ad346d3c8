#include "doctest.h"
#include "frontwave/riemann.hpp"

using namespace frontwave;

TEST_CASE("burgers rarefaction at level one") {
  const auto f = sample_flux(burgers_flux(), 1);
  const auto fan = solve_riemann(f, 0, 2);
  REQUIRE(fan.size() == 2);
  CHECK(fan[0].lo == 0);
  CHECK(fan[0].hi == 1);
  CHECK(fan[0].speed == 0.25);
  CHECK(fan[1].lo == 1);
  CHECK(fan[1].hi == 2);
  CHECK(fan[1].speed == 0.75);
  CHECK(fan[0].sign == 1);
}

TEST_CASE("burgers shock is a single front at every level") {
  for (int nu : {1, 3, 6}) {
    const auto f = sample_flux(burgers_flux(), nu);
    const auto fan = solve_riemann(f, f.max_index(), 0);
    REQUIRE(fan.size() == 1);
    CHECK(fan[0].speed == 0.5);
    CHECK(fan[0].sign == -1);
    CHECK(fan[0].left_state() == f.max_index());
    CHECK(fan[0].right_state() == 0);
  }
}

TEST_CASE("trivial riemann problem has no fronts") {
  const auto f = sample_flux(cubic_flux(), 3);
  CHECK(solve_riemann(f, 4, 4).empty());
}

TEST_CASE("fronts chain states and speeds increase") {
  const auto f = sample_flux(buckley_flux(), 5);
  for (GridIndex l = 0; l <= f.max_index(); l += 3) {
    for (GridIndex r = 0; r <= f.max_index(); r += 4) {
      const auto fan = solve_riemann(f, l, r);
      GridIndex state = l;
      for (std::size_t i = 0; i < fan.size(); ++i) {
        CHECK(fan[i].left_state() == state);
        state = fan[i].right_state();
        CHECK(fan[i].speed == f.chord_slope(fan[i].lo, fan[i].hi));
        if (i > 0) CHECK(fan[i].speed > fan[i - 1].speed);
      }
      CHECK(state == r);
    }
  }
}

TEST_CASE("front speed on envelope segments") {
  const auto f = sample_flux(burgers_flux(), 1);
  const auto env = lower_convex_envelope(f, 0, 2);
  CHECK(front_speed(f, env, 0, 1) == 0.25);
  CHECK(front_speed(f, env, 1, 2) == 0.75);
}

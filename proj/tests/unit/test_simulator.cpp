#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "fixtures.hpp"

using namespace frontwave;

TEST_CASE("indicator initial fronts") {
  const auto u0 = fixtures::step(1, 0.0, 1.0, 1.0);
  const auto flux = sample_flux(burgers_flux(), 1);
  const auto state = initialize(u0, flux);
  REQUIRE(state.fronts.size() == 3);
  CHECK(state.fronts[0].x0 == 0.0);
  CHECK(state.fronts[0].wave.speed == 0.25);
  CHECK(state.fronts[1].wave.speed == 0.75);
  CHECK(state.fronts[2].x0 == 1.0);
  CHECK(state.fronts[2].wave.speed == 0.5);
  CHECK(state.fronts[2].wave.sign == -1);
  const auto t = next_collision(state);
  REQUIRE(t.has_value());
  CHECK(*t == 4.0);
}

TEST_CASE("constant datum has no fronts and no collisions") {
  const auto flux = sample_flux(burgers_flux(), 2);
  const auto state = initialize(PiecewiseConstantFn(2), flux);
  CHECK(state.fronts.empty());
  CHECK_FALSE(next_collision(state).has_value());
}

TEST_CASE("indicator cancellation event") {
  const fixtures::Indicator ex;
  const auto evs = ex.timeline.events();
  REQUIRE(evs.size() == 1);
  CHECK(evs[0].t == 4.0);
  CHECK(evs[0].x == 3.0);
  CHECK(evs[0].kind == CollisionKind::cancellation);
  CHECK(evs[0].tv_drop == 2);
  REQUIRE(evs[0].outgoing.size() == 1);
  CHECK(evs[0].outgoing[0].speed == 0.25);
  CHECK(evs[0].outgoing[0].left_state() == 1);
  CHECK(evs[0].outgoing[0].right_state() == 0);
  CHECK(total_variation(sample_solution(ex.timeline, 10.0)) == 2);
  const auto alive = ex.timeline.alive_at(9.0);
  REQUIRE(alive.size() == 2);
  CHECK(alive[0]->wave.speed == alive[1]->wave.speed);
}

TEST_CASE("indicator slices") {
  const fixtures::Indicator ex;
  const auto u2 = sample_solution(ex.timeline, 2.0);
  REQUIRE(u2.jump_count() == 3);
  CHECK(u2.breakpoints()[0] == 0.5);
  CHECK(u2.breakpoints()[1] == 1.5);
  CHECK(u2.breakpoints()[2] == 2.0);
  CHECK(u2.values()[1] == 1);
  CHECK(u2.values()[2] == 2);
  const auto u0 = sample_solution(ex.timeline, 0.0);
  CHECK(l1_distance(u0, ex.u0) == 0.0);
  CHECK(u0.jump_count() == 2);
  const auto u7 = sample_solution(ex.timeline, 7.0);
  const auto u8 = sample_solution(ex.timeline, 8.0);
  CHECK(u8.breakpoints()[0] - u7.breakpoints()[0] == 0.25);
  CHECK(u8.breakpoints()[1] - u7.breakpoints()[1] == 0.25);
  CHECK_THROWS(sample_solution(ex.timeline, 11.0));
}

TEST_CASE("single shock has no events") {
  const auto u0 = fixtures::step(3, -50.0, 0.0, 1.0);
  const auto tl = run(u0, sample_flux(burgers_flux(), 3), 5.0);
  CHECK(tl.events().empty());
}

TEST_CASE("decreasing staircase merges into one shock") {
  const auto flux = sample_flux(burgers_flux(), 2);
  const PiecewiseConstantFn u0(2, {-100.0, 0.0, 1.0, 3.0}, {0, 3, 2, 1, 0});
  const auto tl = run(u0, flux, 10.0);
  std::size_t interactions = 0;
  for (const auto& ev : tl.events()) {
    if (ev.x > -50.0) {
      ++interactions;
      CHECK(ev.kind == CollisionKind::interaction);
      CHECK(ev.tv_drop == 0);
    }
  }
  CHECK(interactions == 2);
  const auto alive = tl.alive_at(10.0);
  const auto* last = alive.back();
  CHECK(last->wave.lo == 0);
  CHECK(last->wave.hi == 3);
  CHECK(last->wave.speed == flux.chord_slope(0, 3));
}

TEST_CASE("three shocks meeting at one point are one event") {
  const auto flux = sample_flux(burgers_flux(), 2);
  const PiecewiseConstantFn u0(2, {-100.0, 0.0, 1.0, 2.0}, {0, 3, 2, 1, 0});
  const auto tl = run(u0, flux, 10.0);
  std::size_t near = 0;
  for (const auto& ev : tl.events()) {
    if (ev.x > -50.0) {
      ++near;
      CHECK(ev.t == doctest::Approx(4.0));
      CHECK(ev.incoming.size() == 3);
    }
  }
  CHECK(near == 1);
  CHECK(tl.diagnostics().multi_front_collisions >= 1);
}

TEST_CASE("linear flux transports without events") {
  const auto flux = sample_flux(linear_flux(), 1);
  const auto u0 = fixtures::step(1, 0.0, 1.0, 1.0);
  const auto tl = run(u0, flux, 3.0);
  CHECK(tl.events().empty());
  CHECK(sample_solution(tl, 3.0).breakpoints()[0] == 3.0);
}

TEST_CASE("event cap is enforced") {
  const auto flux = sample_flux(burgers_flux(), 4);
  const auto u0 = fixtures::step(4, 0.0, 1.0, 1.0);
  RunOptions opt;
  opt.max_events = 2;
  CHECK_THROWS_AS(run(u0, flux, 100.0, opt), std::runtime_error);
}

TEST_CASE("event slices match sampled solutions") {
  const auto flux = sample_flux(cubic_flux(), 4);
  const PiecewiseConstantFn u0(4, {0.0, 0.3, 0.5, 0.9, 1.2}, {0, 10, 3, 14, 6, 0});
  const auto tl = run(u0, flux, 3.0);
  REQUIRE(!tl.events().empty());
  std::size_t seen = 0;
  for_each_event_slice(tl, [&](std::size_t e, const PiecewiseConstantFn& u) {
    ++seen;
    CHECK(u.integral() == doctest::Approx(u0.integral()).epsilon(1e-12));
    if (e + 1 < tl.events().size() && tl.events()[e + 1].t > tl.events()[e].t) {
      const double mid = 0.5 * (tl.events()[e].t + tl.events()[e + 1].t);
      CHECK(total_variation(sample_solution(tl, mid)) == total_variation(u));
    }
  });
  CHECK(seen == tl.events().size());
}

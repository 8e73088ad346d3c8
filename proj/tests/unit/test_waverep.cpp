#include "doctest.h"
#include "fixtures.hpp"

using namespace frontwave;

TEST_CASE("indicator wave records") {
  const fixtures::Indicator ex;
  const auto& a = ex.atlas;
  REQUIRE(a.total_s() == 4);
  CHECK(a.record(1).sign == 1);
  CHECK(a.record(1).band == 0);
  CHECK(a.record(2).band == 1);
  CHECK(a.record(3).sign == -1);
  CHECK(a.record(3).band == 1);
  CHECK(a.record(4).band == 0);
  CHECK(a.record(1).death_time == kInfinity);
  CHECK(a.record(2).death_time == 4.0);
  CHECK(a.record(3).death_time == 4.0);
  CHECK(a.record(4).death_time == kInfinity);
  CHECK(a.value(1) == 1);
  CHECK(a.value(2) == 2);
  CHECK(a.value(3) == 1);
  CHECK(a.value(4) == 0);
  CHECK(a.speed(1, 6.0) == 0.25);
  CHECK(a.speed(4, 2.0) == 0.5);
  CHECK(a.speed(4, 6.0) == 0.25);
  CHECK(a.position(4, 6.0) == 3.5);
  CHECK(a.position(2, 6.0) == 3.0);
  CHECK(atlas_invariants(a).ok());
}

TEST_CASE("indicator pushforward") {
  const fixtures::Indicator ex;
  for (double t : {0.0, 2.0, 4.0, 5.0, 9.5}) CHECK(pushforward_check(ex.atlas, t).ok());
}

TEST_CASE("indicator quadratic quantities") {
  const fixtures::Indicator ex;
  CHECK(speed_tv_integral(ex.atlas) == 0.125);
  CHECK(ex.atlas.q_initial() == 1.0);
  CHECK(glimm_functional(ex.atlas, 0.0) == 1.0);
  CHECK(glimm_functional(ex.atlas, 5.0) == 0.25);
  CHECK(speed_spatial_tv(ex.atlas, 2.0) == 0.75);
  const auto b = per_event_bounds(ex.atlas, 1.0);
  REQUIRE(b.bounds.size() == 1);
  CHECK(b.bounds[0].lhs == 0.125);
  CHECK(b.bounds[0].rhs == 2.0);
  CHECK(b.ok());
  CHECK(volpert_check(ex.atlas).ok());
}

TEST_CASE("indicator measures") {
  const fixtures::Indicator ex;
  const auto canc = cancellation_measure(ex.atlas);
  REQUIRE(canc.atoms.size() == 1);
  CHECK(canc.atoms[0].t == 4.0);
  CHECK(canc.atoms[0].x == 3.0);
  CHECK(canc.atoms[0].mass == 1.0);
  const auto inter = interaction_measure(ex.atlas);
  REQUIRE(inter.atoms.size() == 1);
  CHECK(inter.total() == 0.125);
}

TEST_CASE("single shock waves are immortal") {
  const auto u0 = fixtures::step(3, -50.0, 0.0, 1.0);
  const auto tl = run(u0, sample_flux(burgers_flux(), 3), 5.0);
  const auto a = build_atlas(tl, u0);
  for (const auto& r : a.records()) {
    if (r.sign < 0) {
      CHECK(r.death_time == kInfinity);
      CHECK(a.speed_history(r.id).size() == 1);
    }
  }
  CHECK(speed_tv_integral(a) == 0.0);
  CHECK(cancellation_measure(a).atoms.empty());
}

TEST_CASE("shock merge keeps every wave") {
  const auto flux = sample_flux(burgers_flux(), 2);
  const PiecewiseConstantFn u0(2, {-100.0, 0.0, 1.0}, {0, 3, 1, 0});
  const auto tl = run(u0, flux, 10.0);
  const auto a = build_atlas(tl, u0);
  CHECK(atlas_invariants(a).ok());
  for (const auto& r : a.records()) {
    if (r.sign < 0) CHECK(r.death_time == kInfinity);
  }
  const auto b = per_event_bounds(a, 1.0);
  CHECK(b.ok());
  for (std::size_t e = 0; e < tl.events().size(); ++e) {
    const auto& ew = a.event_waves()[e];
    if (tl.events()[e].x > -50.0) CHECK(ew.q_before - ew.q_after == 2.0 * 1.0 * a.cell() * a.cell());
  }
}

TEST_CASE("atlas requires the run's datum") {
  const fixtures::Indicator ex;
  CHECK_THROWS(build_atlas(ex.timeline, fixtures::step(1, 0.0, 2.0, 1.0)));
}

#include "doctest.h"
#include "fixtures.hpp"
#include "frontwave/regularity.hpp"

using namespace frontwave;

TEST_CASE("spacelike curves validate slopes and order") {
  CHECK_THROWS(SpacelikeCurve({{0.0, 0.0}, {1.0, 2.0}}, 1.0));
  CHECK_THROWS(SpacelikeCurve({{1.0, 0.0}, {0.0, 0.0}}, 1.0));
  CHECK_THROWS(SpacelikeCurve({{0.0, -1.0}, {1.0, 0.0}}, 1.0));
  const SpacelikeCurve c({{0.0, 1.0}, {2.0, 2.0}}, 1.0);
  CHECK(c.at(-5.0) == 1.0);
  CHECK(c.at(1.0) == 1.5);
  CHECK(c.at(9.0) == 2.0);
  CHECK(curve_below(SpacelikeCurve::flat(1.0), c));
  CHECK_FALSE(curve_below(c, SpacelikeCurve::flat(1.0)));
}

TEST_CASE("indicator spacelike balance across the cancellation") {
  const fixtures::Indicator ex;
  const auto b = spacelike_tv_balance(ex.atlas, SpacelikeCurve::flat(5.0), SpacelikeCurve::flat(0.0), 1, 4);
  CHECK(b.lhs_tau_prime == 4);
  CHECK(b.lhs_tau == 2);
  CHECK(b.canceled == 2);
  CHECK(b.holds());
  const auto same = spacelike_tv_balance(ex.atlas, SpacelikeCurve::flat(2.0), SpacelikeCurve::flat(2.0), 1, 4);
  CHECK(same.canceled == 0);
  CHECK(same.holds());
  const auto quiet = spacelike_tv_balance(ex.atlas, SpacelikeCurve::flat(3.0), SpacelikeCurve::flat(1.0), 1, 4);
  CHECK(quiet.canceled == 0);
  CHECK(quiet.lhs_tau == quiet.lhs_tau_prime);
  CHECK_THROWS(spacelike_tv_balance(ex.atlas, SpacelikeCurve::flat(0.0), SpacelikeCurve::flat(5.0), 1, 4));
  for (double u : {0.0, 0.5, 1.0}) {
    CHECK(spacelike_linf_balance(ex.atlas, SpacelikeCurve::flat(5.0), SpacelikeCurve::flat(0.0), 1, 4, u).holds());
    const auto eq = spacelike_linf_balance(ex.atlas, SpacelikeCurve::flat(2.0), SpacelikeCurve::flat(2.0), 1, 4, u);
    CHECK(eq.later == eq.earlier);
  }
}

TEST_CASE("tilted curves through the fan") {
  const fixtures::Indicator ex;
  const double lambda = lipschitz_bound(ex.flux);
  const SpacelikeCurve low({{-1.0, 0.5}, {5.0, 2.0}}, lambda);
  const SpacelikeCurve high({{-1.0, 6.0}, {5.0, 7.0}}, lambda);
  const auto b = spacelike_tv_balance(ex.atlas, high, low, 1, 4);
  CHECK(b.canceled == 2);
  CHECK(b.holds());
}

TEST_CASE("domain of dependence") {
  const fixtures::Indicator ex;
  const auto d = domain_of_dependence(ex.atlas, -2.0, 8.0, 0.0, 5.0);
  CHECK(d.tv_before == 4);
  CHECK(d.tv_after == 1);
  CHECK(d.canceled == 2);
  CHECK(d.holds());
}

TEST_CASE("jump set thresholds") {
  const fixtures::Indicator ex;
  const auto js = jump_set(ex.timeline, 2);
  REQUIRE(!js.empty());
  for (const auto& p : js) {
    CHECK(p.t <= 4.0);
    CHECK(p.rh_speed == 0.5);
  }
  const auto shock = fixtures::step(2, -50.0, 0.0, 1.0);
  const auto tl = run(shock, sample_flux(burgers_flux(), 2), 1.0);
  bool saw = false;
  for (const auto& p : jump_set(tl, 2)) {
    if (p.x > -10.0) {
      saw = true;
      CHECK(p.rh_speed == 0.5);
    }
  }
  CHECK(saw);
}

TEST_CASE("theta atoms of the indicator") {
  const fixtures::Indicator ex;
  const auto canc = cancellation_measure(ex.atlas);
  const auto inter = interaction_measure(ex.atlas);
  const auto pts = theta_atoms(canc, inter, 0.5);
  REQUIRE(pts.size() == 1);
  CHECK(pts[0].first == 4.0);
  CHECK(pts[0].second == 3.0);
  CHECK(theta_atoms(canc, inter, 2.0).empty());
  CHECK(theta_on_fronts(ex.timeline, pts).ok());
}

TEST_CASE("gamma curves") {
  const auto shock = fixtures::step(3, -50.0, 0.0, 1.0);
  const auto tl = run(shock, sample_flux(burgers_flux(), 3), 4.0);
  const auto a = build_atlas(tl, shock);
  const auto g = gamma_pm(a, 2.0, 1.0);
  CHECK_FALSE(g.degenerate);
  CHECK(g.slope_minus_in == 0.5);
  CHECK(g.slope_plus_in == 0.5);
  for (const auto& d : g.deviations) {
    CHECK(d.dev_left == 0.0);
    CHECK(d.dev_right == 0.0);
  }
  const auto [l, r] = cone_continuity_check(tl, 2.0, 1.0, 0.5, 0.1, 0.25);
  CHECK(l == 0.0);
  CHECK(r == 0.0);

  const fixtures::Indicator ex;
  const auto gi = gamma_pm(ex.atlas, 4.0, 3.0);
  CHECK(gi.slope_plus_in == 0.5);
  CHECK(gi.slope_plus_out == 0.25);
  CHECK(gi.continues);
}

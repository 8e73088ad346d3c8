#include "doctest.h"
#include "frontwave/report.hpp"
#include "frontwave/scenarios.hpp"

using namespace frontwave;

namespace {
template <class Sc>
WaveAtlas simulate(const Sc& sc, int nu, Timeline& out) {
  out = run(sc.initial, sample_flux(sc.flux, nu), sc.t_max);
  return build_atlas(out, sc.initial);
}
}  // namespace

TEST_CASE("equal-speed collision cancels without interaction") {
  const auto sc = scenario_canc_vs_inter();
  CHECK(std::abs(sc.speed_gap - 1e-11) < 1e-13);
  Timeline tl = run(sc.initial, sample_flux(sc.flux, sc.params.nu), sc.t_max);
  const auto atlas = build_atlas(tl, sc.initial);
  const auto v = evaluate_canc_vs_inter(sc, atlas);
  CHECK(v.collided);
  CHECK(v.incoming_gap <= 1e-10);
  CHECK(v.atom_error <= 1e-10);
  CHECK(v.survivor_mass <= 1e-10);
  CHECK(v.passed);
}

TEST_CASE("perturbed speeds leave an interaction atom") {
  CancVsInterParams p;
  p.target_gap = 1e-4;
  p.separation = 1e-2;
  const auto sc = scenario_canc_vs_inter(p);
  Timeline tl = run(sc.initial, sample_flux(sc.flux, p.nu), sc.t_max);
  const auto v = evaluate_canc_vs_inter(sc, build_atlas(tl, sc.initial));
  CHECK(v.collided);
  CHECK_FALSE(v.passed);
}

TEST_CASE("degenerate equal-speed parameters are rejected") {
  CancVsInterParams p;
  p.u_m_plus = p.u_plus;
  CHECK_THROWS(scenario_canc_vs_inter(p));
}

TEST_CASE("staircase interaction points") {
  for (int n : {3, 6}) {
    NotJumpParams p;
    p.n_jumps = n;
    const auto sc = scenario_not_jump(p);
    Timeline tl = run(sc.initial, sample_flux(sc.flux, p.nu), sc.t_max);
    const auto v = evaluate_not_jump(sc, build_atlas(tl, sc.initial));
    CHECK(v.interaction_points.size() == static_cast<std::size_t>(n - 1));
    CHECK(v.monotone);
  }
  NotJumpParams bad;
  bad.decay = 1.0;
  CHECK_THROWS(scenario_not_jump(bad));
  bad.decay = 0.5;
  bad.n_jumps = 2;
  CHECK_THROWS(scenario_not_jump(bad));
}

TEST_CASE("random samples respect the TV cap") {
  for (std::uint64_t seed = 1; seed < 20; ++seed) {
    const auto s = random_samples(seed, 10, 1.0, 2.5);
    double tv = 0.0;
    double prev = 0.0;
    for (const auto& x : s) {
      tv += std::abs(x.value - prev);
      prev = x.value;
    }
    CHECK(tv <= 2.5 + 1e-12);
  }
  const auto f = random_blend_flux(4);
  CHECK(f.second_derivative_hint.has_value());
  CHECK(second_derivative_bound(f) > 0.0);
}

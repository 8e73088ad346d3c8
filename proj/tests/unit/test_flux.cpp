#include <cmath>
#include <random>

#include "../oracle/envelope_oracle.hpp"
#include "doctest.h"
#include "frontwave/flux.hpp"

using namespace frontwave;

TEST_CASE("sampled burgers values and slopes") {
  const auto f1 = sample_flux(burgers_flux(), 1);
  REQUIRE(f1.max_index() == 2);
  CHECK(f1.value(0) == 0.0);
  CHECK(f1.value(1) == 0.125);
  CHECK(f1.value(2) == 0.5);
  CHECK(f1.slope(0) == 0.25);
  CHECK(f1.slope(1) == 0.75);

  const auto f2 = sample_flux(burgers_flux(), 2);
  const double expected[] = {0.125, 0.375, 0.625, 0.875};
  for (int k = 0; k < 4; ++k) CHECK(f2.slope(k) == expected[k]);
}

TEST_CASE("linear flux has unit slopes") {
  for (int nu : {0, 3, 7}) {
    const auto f = sample_flux(linear_flux(), nu);
    for (double s : f.slopes()) CHECK(s == 1.0);
  }
}

TEST_CASE("non-finite flux values are rejected") {
  FluxSpec bad{"bad", [](double u) { return 1.0 / (u - 0.5); }, std::nullopt, 1.0};
  CHECK_THROWS(sample_flux(bad, 1));
}

TEST_CASE("burgers envelopes at level one") {
  const auto f = sample_flux(burgers_flux(), 1);
  const auto lo = lower_convex_envelope(f, 0, 2);
  REQUIRE(lo.segments.size() == 2);
  CHECK(lo.segments[0].slope == 0.25);
  CHECK(lo.segments[1].slope == 0.75);
  const auto up = upper_concave_envelope(f, 0, 2);
  REQUIRE(up.segments.size() == 1);
  CHECK(up.segments[0].slope == 0.5);
  CHECK_THROWS(lower_convex_envelope(f, 1, 1));
}

TEST_CASE("concave flux envelopes") {
  FluxSpec concave{"concave", [](double u) { return u - u * u; }, 2.0, 1.0};
  const auto f = sample_flux(concave, 4);
  const auto lo = lower_convex_envelope(f, 0, f.max_index());
  REQUIRE(lo.segments.size() == 1);
  CHECK(std::abs(lo.segments[0].slope) < 1e-15);
  const auto up = upper_concave_envelope(f, 0, f.max_index());
  CHECK(up.segments.size() == static_cast<std::size_t>(f.max_index()));
}

TEST_CASE("single cell envelope is the cell chord") {
  const auto f = sample_flux(cubic_flux(), 3);
  for (GridIndex k = 0; k < f.max_index(); ++k) {
    const auto env = lower_convex_envelope(f, k, k + 1);
    REQUIRE(env.segments.size() == 1);
    CHECK(env.segments[0].slope == f.slope(k));
  }
}

TEST_CASE("envelope matches brute force, lies below f and has monotone slopes") {
  for (const char* name : {"burgers", "cubic", "buckley"}) {
    const auto f = sample_flux(make_flux(name), 5);
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<GridIndex> pick(0, f.max_index());
    for (int i = 0; i < 60; ++i) {
      GridIndex a = pick(rng);
      GridIndex b = pick(rng);
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      for (bool convex : {true, false}) {
        const auto env = convex ? lower_convex_envelope(f, a, b) : upper_concave_envelope(f, a, b);
        const auto ref = oracle::brute_envelope(f, a, b, convex);
        REQUIRE(env.segments.size() == ref.size());
        double weighted = 0.0;
        for (std::size_t j = 0; j < ref.size(); ++j) {
          CHECK(env.segments[j].start == ref[j].start);
          CHECK(env.segments[j].end == ref[j].end);
          CHECK(std::abs(env.segments[j].slope - ref[j].slope) <= 1e-12);
          if (j > 0) {
            CHECK((convex ? env.segments[j].slope > env.segments[j - 1].slope
                          : env.segments[j].slope < env.segments[j - 1].slope));
          }
          weighted += env.segments[j].slope * static_cast<double>(env.segments[j].length());
        }
        CHECK(std::abs(weighted / static_cast<double>(b - a) - f.chord_slope(a, b)) <= 1e-12);
        for (GridIndex k = a; k <= b; ++k) {
          const double e = env.value_at(f, k);
          CHECK((convex ? e <= f.value(k) + 1e-15 : e >= f.value(k) - 1e-15));
        }
      }
    }
  }
}

TEST_CASE("envelope nesting is controlled by the second derivative") {
  for (const char* name : {"burgers", "cubic", "buckley"}) {
    const auto spec = make_flux(name);
    const int nu = 5;
    const auto f = sample_flux(spec, nu);
    const double d2 = second_derivative_bound(spec, nu);
    const GridIndex n = f.max_index();
    for (GridIndex a = 0; a < n; a += 3) {
      for (GridIndex c = a + 1; c <= n; c += 2) {
        for (GridIndex b = c; b <= n; b += 5) {
          const auto wide = lower_convex_envelope(f, a, b);
          const auto narrow = lower_convex_envelope(f, a, c);
          for (GridIndex k = a; k < c; ++k) {
            const double sw = wide.segment_containing(k, k + 1).slope;
            const double sn = narrow.segment_containing(k, k + 1).slope;
            CHECK(std::abs(sw - sn) <= d2 * static_cast<double>(b - c) * f.cell() + 1e-12);
          }
        }
      }
    }
  }
}

TEST_CASE("second derivative and lipschitz bounds") {
  CHECK(second_derivative_bound(burgers_flux()) == doctest::Approx(1.0));
  CHECK(second_derivative_bound(linear_flux()) == 0.0);
  const double cubic = second_derivative_bound(cubic_flux());
  CHECK(cubic >= 2.0);
  CHECK(cubic <= 2.2 + 1e-12);
  CHECK(lipschitz_bound(sample_flux(burgers_flux(), 1)) == 0.75);
  CHECK(lipschitz_bound(sample_flux(linear_flux(), 4)) == 1.0);
  CHECK(lipschitz_bound(sample_flux(burgers_flux(), 12)) < 1.0);
  CHECK(lipschitz_bound(sample_flux(burgers_flux(), 12)) > 0.999);
}

TEST_CASE("table flux interpolates samples") {
  const auto spec = table_flux({{0.0, 0.0}, {0.5, 1.0}, {1.0, 0.0}});
  const auto f = sample_flux(spec, 2);
  CHECK(f.value(1) == 0.5);
  CHECK(f.value(2) == 1.0);
  CHECK_THROWS(make_flux("nosuchflux"));
}

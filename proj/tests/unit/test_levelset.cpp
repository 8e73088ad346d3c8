#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "frontwave/levelset.hpp"

using namespace frontwave;

TEST_CASE("indicator level curves in the upper band") {
  const fixtures::Indicator ex;
  const auto curves = extract_level_curves(ex.atlas, 0.75);
  REQUIRE(curves.size() == 2);
  CHECK(curves[0].j == 1);
  CHECK(curves[0].normal_sign == 1);
  CHECK(curves[1].normal_sign == -1);
  CHECK(curves[0].t_end == 4.0);
  CHECK(curves[1].t_end == 4.0);
  CHECK(curves[0].position(2.0) == 1.5);
  CHECK(curves[1].position(2.0) == 2.0);
}

TEST_CASE("indicator level curves in the lower band") {
  const fixtures::Indicator ex;
  const auto curves = extract_level_curves(ex.atlas, 0.25);
  REQUIRE(curves.size() == 2);
  CHECK(curves[0].t_end == kInfinity);
  CHECK(curves[1].t_end == kInfinity);
  CHECK(curves[0].position(8.0) == 2.0);
  CHECK(curves[1].position(2.0) == 2.0);
  CHECK(curves[1].position(8.0) == 4.0);
  CHECK(extract_level_curves(ex.atlas, 1.25).empty());
  CHECK_THROWS(extract_level_curves(ex.atlas, 0.5));
}

TEST_CASE("level-curve coarea") {
  const fixtures::Indicator ex;
  const auto c2 = coarea_time_slice(ex.atlas, 2.0);
  CHECK(c2.lhs == 4);
  CHECK(c2.rhs == 4);
  const auto c5 = coarea_time_slice(ex.atlas, 5.0);
  CHECK(c5.lhs == 2);
  CHECK(c5.rhs == 2);
}

TEST_CASE("s parametrization of level curves") {
  const fixtures::Indicator ex;
  CHECK(s_parametrization(ex.atlas, 1, 0.25) == 1);
  CHECK(s_parametrization(ex.atlas, 2, 0.25) == 4);
  CHECK(s_parametrization(ex.atlas, 1, 0.75) == 2);
  CHECK(s_parametrization(ex.atlas, 2, 0.75) == 3);
  for (WaveId s = 1; s <= 4; ++s) {
    const auto [j, w] = inverse_parametrization(ex.atlas, s);
    CHECK(s_parametrization(ex.atlas, j, w) == s);
  }
  CHECK(band_of_midpoint(0.75, 1) == 1);
  CHECK_THROWS(band_of_midpoint(0.5, 1));
}

TEST_CASE("interval set distances") {
  const std::vector<Interval> a{{0.0, 1.0}};
  const std::vector<Interval> b{{3.0, 4.0}};
  CHECK(interval_set_distance(a, a, SetMetric::hausdorff) == 0.0);
  CHECK(interval_set_distance(a, b, SetMetric::hausdorff) == 3.0);
  CHECK(interval_set_distance(a, b, SetMetric::l1) == 2.0);
  CHECK(std::isinf(interval_set_distance(a, {}, SetMetric::hausdorff)));
  CHECK(parse_set_metric("l1") == SetMetric::l1);
  CHECK_THROWS(parse_set_metric("sup"));
}

TEST_CASE("level sets converge under refinement") {
  for (int nu = 3; nu <= 6; ++nu) {
    const fixtures::Indicator a(nu, 1.0);
    const fixtures::Indicator b(nu + 1, 1.0);
    CHECK(level_set_distance(a.timeline, b.timeline, 0.3, 1.0, SetMetric::l1) <= 2.0 * std::ldexp(1.0, -nu));
  }
  const fixtures::Indicator same(4, 1.0);
  CHECK(level_set_distance(same.timeline, same.timeline, 0.53125, 1.0, SetMetric::hausdorff) == 0.0);
}

TEST_CASE("level curves csv") {
  const fixtures::Indicator ex;
  const auto csv = level_curves_csv(extract_level_curves(ex.atlas, 0.25));
  CHECK(csv.rfind("w,j,t,x,normal_sign\n", 0) == 0);
}

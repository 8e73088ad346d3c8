#include "doctest.h"
#include "frontwave/report.hpp"
#include "json.hpp"

using namespace frontwave;

TEST_CASE("initial datum grammar") {
  const auto d = parse_initial("step:1@0,1");
  REQUIRE(d.samples.size() == 2);
  CHECK(d.samples[0].x == 0.0);
  CHECK(d.samples[0].value == 1.0);
  CHECK(d.samples[1].value == 0.0);
  const auto e = parse_initial("step:0.5,1,0@-1,0,2");
  CHECK(e.samples.size() == 3);
  CHECK(e.max_value == 1.0);
  CHECK_THROWS(parse_initial("step:1@1,0"));
  CHECK_THROWS(parse_initial("step:1,2@0"));
  CHECK(parse_initial("step:1,2@0,1,2").samples.size() == 3);
  CHECK_THROWS(parse_initial("step:1"));
  CHECK_THROWS(parse_initial("wave:3"));
  const auto r = parse_initial("random:7,5,2");
  CHECK(r.samples.size() >= 2);
  CHECK(r.samples.back().value == 0.0);
  CHECK_THROWS(parse_initial("random:7,5"));
  CHECK_THROWS(parse_initial("file:/nonexistent/datum.csv"));
}

TEST_CASE("nu lists and check names") {
  CHECK(parse_nu_list("4") == std::vector<int>{4});
  CHECK(parse_nu_list("1..4") == std::vector<int>{1, 2, 3, 4});
  CHECK(parse_nu_list("4,6,8") == std::vector<int>{4, 6, 8});
  CHECK_THROWS(parse_nu_list("0"));
  CHECK_THROWS(parse_nu_list("5..2"));
  CHECK(parse_checks("all").size() == known_checks().size());
  CHECK(parse_checks("").empty());
  CHECK_THROWS(parse_checks("tv,bogus"));
}

TEST_CASE("indicator batch converges across levels") {
  RunConfig cfg;
  cfg.nus = parse_nu_list("1..4");
  cfg.t_max = 1.0;
  cfg.checks = parse_checks("conservation,tv");
  const auto rep = run_batch(cfg);
  REQUIRE(rep.runs.size() == 4);
  CHECK(rep.cross_nu.size() == 3);
  CHECK(rep.l1_strictly_decreasing);
  CHECK(rep.passed());
}

TEST_CASE("reports are deterministic and sections follow the check list") {
  RunConfig cfg;
  cfg.initial = "random:3,8,2";
  cfg.nus = {3, 4};
  cfg.checks = parse_checks("all");
  const auto a = to_json(run_batch(cfg));
  const auto b = to_json(run_batch(cfg));
  CHECK(a == b);
  CHECK(a.find("\"schema\": 1") != std::string::npos);
  CHECK(a.find("\"checks\"") != std::string::npos);
  cfg.checks.clear();
  const auto plain = to_json(run_batch(cfg));
  const auto j = nlohmann::json::parse(plain);
  CHECK_FALSE(j["runs"][0].contains("checks"));
  CHECK_FALSE(j.contains("cross_nu"));
}

TEST_CASE("unwritable output paths are reported") {
  CHECK_THROWS_WITH(write_text("/nonexistent/dir/out.json", "x"), doctest::Contains("/nonexistent/dir/out.json"));
}

#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "frontwave/levelset.hpp"
#include "frontwave/regularity.hpp"
#include "frontwave/waverep.hpp"

namespace frontwave {

/// Parsed initial datum before projection onto a grid.
struct InitialData {
  std::vector<Sample> samples;
  double max_value = 0.0;
};

/// Grammar:
///   step:v0,v1,...@x0,x1,...  v_i on [x_i, x_{i+1}); a trailing 0 is implied
///                             when there is one more breakpoint than values
///   random:seed,n,tv          n random pieces on [0, 1), values in [0, 1]
///   file:path                 CSV rows "x,value", the last value 0
InitialData parse_initial(const std::string& spec);

/// "4", "1..4" or "4,6,8".
std::vector<int> parse_nu_list(const std::string& text);

/// Check names understood by run_checks; "all" selects every one.
const std::vector<std::string>& known_checks();
std::set<std::string> parse_checks(const std::string& text);

struct CheckResult {
  std::string name;
  bool asserted = true;
  bool passed = true;
  double lhs = 0.0;
  double rhs = 0.0;
  std::int64_t cases = 0;
  std::vector<std::string> details;
};

struct CheckOptions {
  std::set<std::string> names;
  std::uint64_t seed = 1;
  int spacelike_configs = 100;
  int dependence_configs = 50;
  std::size_t slice_samples = 16;
};

/// Runs the selected checks on one atlas; d2 bounds |f''|.
std::vector<CheckResult> run_checks(const WaveAtlas& atlas, double d2, const CheckOptions& options);

/// Times strictly between events (and before t_max), at most n of them.
std::vector<double> interevent_times(const Timeline& timeline, std::size_t n);

struct RunConfig {
  std::string flux = "burgers";
  std::string initial = "step:1@0,1";
  std::vector<int> nus{4};
  double t_max = 1.0;
  std::set<std::string> checks;
  std::uint64_t seed = 1;
};

struct RunReport {
  int nu = 0;
  std::shared_ptr<const Timeline> timeline;
  std::shared_ptr<const WaveAtlas> atlas;
  double tv0 = 0.0;  // value units
  double d2 = 0.0;
  double speed_tv = 0.0;
  double quadratic_bound = 0.0;
  std::vector<std::pair<double, double>> tv_curve;
  std::vector<std::pair<double, double>> linf_curve;
  std::vector<std::pair<double, double>> q_curve;
  CoareaResult coarea;
  std::vector<CheckResult> checks;

  bool passed() const;
};

struct CrossNuDistance {
  int nu_a = 0;
  int nu_b = 0;
  double t = 0.0;
  double l1 = 0.0;
};

struct BatchReport {
  RunConfig config;
  std::vector<RunReport> runs;
  std::vector<CrossNuDistance> cross_nu;
  bool l1_strictly_decreasing = true;
  double level_set_trend = 1.0;  // fraction of (w, t) with decreasing distance
  std::int64_t level_set_samples = 0;

  bool passed() const;
};

/// Builds flux and datum at level nu and runs the simulator.
RunReport run_single(const RunConfig& config, int nu);

/// Runs every nu in parallel; assembly is in config order.
BatchReport run_batch(const RunConfig& config);

std::string to_json(const BatchReport& report);
std::string trajectories_csv(const Timeline& timeline, int nu);
std::string checks_csv(const BatchReport& report);

/// json: one file at `out`; csv: `out`_trajectories.csv and `out`_checks.csv.
/// Empty `out` writes to stdout.
void emit(const BatchReport& report, const std::string& format, const std::string& out);

/// Writes text to path (or stdout when path is empty); throws with the path.
void write_text(const std::string& path, const std::string& text);

}  // namespace frontwave

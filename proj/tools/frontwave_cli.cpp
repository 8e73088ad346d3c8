#include <exception>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "frontwave/levelset.hpp"
#include "frontwave/report.hpp"
#include "frontwave/scenarios.hpp"
#include "json.hpp"

namespace fw = frontwave;

namespace {

struct Common {
  std::string flux = "burgers";
  std::string initial = "step:1@0,1";
  std::string nu = "4";
  double t_max = 1.0;
  std::string checks;
  std::string out;
  std::string format = "json";
  std::uint64_t seed = 1;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--flux", c.flux, "burgers, cubic, linear, buckley, blend[:seed] or table:<csv>");
  app->add_option("--initial", c.initial, "step:v0,v1,...@x0,x1,..., random:seed,n,tv or file:<csv>");
  app->add_option("--nu", c.nu, "refinement level: 4, 1..4 or 4,6,8");
  app->add_option("--tmax", c.t_max, "final time")->check(CLI::PositiveNumber);
  app->add_option("--checks", c.checks, "comma list of checks, or all");
  app->add_option("--out", c.out, "output path (stdout when empty)");
  app->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app->add_option("--seed", c.seed, "seed for randomized checks");
}

fw::RunConfig to_config(const Common& c) {
  fw::RunConfig cfg;
  cfg.flux = c.flux;
  cfg.initial = c.initial;
  cfg.nus = fw::parse_nu_list(c.nu);
  cfg.t_max = c.t_max;
  cfg.checks = fw::parse_checks(c.checks);
  cfg.seed = c.seed;
  return cfg;
}

int batch(const Common& c, bool single) {
  auto cfg = to_config(c);
  if (single && cfg.nus.size() != 1) throw std::invalid_argument("run takes one nu; use batch for several");
  const auto report = fw::run_batch(cfg);
  fw::emit(report, c.format, c.out);
  for (const auto& r : report.runs) {
    for (const auto& ch : r.checks) {
      if (ch.asserted && !ch.passed) {
        std::cerr << "check " << ch.name << " failed at nu=" << r.nu << '\n';
        for (const auto& d : ch.details) std::cerr << "  " << d << '\n';
      }
    }
  }
  return report.passed() ? 0 : 1;
}

int levelsets(const Common& c, double w) {
  auto cfg = to_config(c);
  cfg.checks.clear();
  const auto report = fw::run_batch(cfg);
  std::string text = "nu,w,j,t,x,normal_sign\n";
  for (const auto& r : report.runs) {
    std::istringstream csv(fw::level_curves_csv(fw::extract_level_curves(*r.atlas, w)));
    std::string line;
    std::getline(csv, line);
    while (std::getline(csv, line)) text += std::to_string(r.nu) + "," + line + "\n";
  }
  fw::write_text(c.out, text);
  return 0;
}

int scenario(const std::string& name, const Common& c, int n_jumps, double decay, double gap) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["schema"] = 1;
  j["scenario"] = name;
  const int nu = fw::parse_nu_list(c.nu).front();
  bool passed = false;
  if (name == "canc_vs_inter") {
    fw::CancVsInterParams p;
    p.nu = nu;
    p.target_gap = gap;
    const auto sc = fw::scenario_canc_vs_inter(p);
    const auto flux = fw::sample_flux(sc.flux, nu);
    const auto tl = fw::run(sc.initial, flux, sc.t_max);
    const auto atlas = fw::build_atlas(tl, sc.initial);
    const auto v = fw::evaluate_canc_vs_inter(sc, atlas);
    passed = v.passed;
    j["params"] = {{"u_minus", p.u_minus}, {"u_plus", p.u_plus}, {"u_m_plus", p.u_m_plus},
                   {"sigma", p.sigma},     {"target_gap", p.target_gap}, {"nu", nu}};
    j["eta"] = sc.eta;
    j["speed_gap"] = sc.speed_gap;
    j["t_collision"] = sc.t_collision;
    j["verdict"] = {{"collided", v.collided},       {"t", v.t},
                    {"x", v.x},                     {"incoming_gap", v.incoming_gap},
                    {"atom_mass", v.atom_mass},     {"expected_atom", sc.expected_atom},
                    {"atom_error", v.atom_error},   {"survivor_mass", v.survivor_mass},
                    {"passed", v.passed}};
  } else if (name == "not_jump") {
    fw::NotJumpParams p;
    p.n_jumps = n_jumps;
    p.decay = decay;
    p.nu = nu;
    const auto sc = fw::scenario_not_jump(p);
    const auto flux = fw::sample_flux(sc.flux, nu);
    const auto tl = fw::run(sc.initial, flux, sc.t_max);
    const auto atlas = fw::build_atlas(tl, sc.initial);
    const auto v = fw::evaluate_not_jump(sc, atlas);
    passed = v.passed;
    j["params"] = {{"n_jumps", p.n_jumps}, {"decay", p.decay}, {"nu", nu}};
    j["strengths"] = sc.strengths;
    j["verdict"] = {{"interaction_points", v.interaction_points},
                    {"atom_masses", v.atom_masses},
                    {"monotone", v.monotone},
                    {"atoms_bounded", v.atoms_bounded},
                    {"max_atom", v.max_atom},
                    {"atom_bound", v.atom_bound},
                    {"slope_minus", v.gamma.slope_minus_in},
                    {"slope_plus", v.gamma.slope_plus_in},
                    {"slope_gap", v.slope_gap},
                    {"required_gap", v.required_gap},
                    {"passed", v.passed}};
  } else {
    throw std::invalid_argument("unknown scenario: " + name);
  }
  j["passed"] = passed;
  fw::write_text(c.out, j.dump(2) + "\n");
  return passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wavefront tracking for scalar conservation laws"};
  app.require_subcommand(1);

  Common run_opts;
  auto* run_cmd = app.add_subcommand("run", "simulate one refinement level");
  add_common(run_cmd, run_opts);

  Common batch_opts;
  batch_opts.nu = "1..4";
  auto* batch_cmd = app.add_subcommand("batch", "simulate several refinement levels");
  add_common(batch_cmd, batch_opts);

  Common level_opts;
  level_opts.format = "csv";
  double w = 0.5;
  auto* level_cmd = app.add_subcommand("levelsets", "level curves {u = w} as CSV");
  add_common(level_cmd, level_opts);
  level_cmd->add_option("--w", w, "level, must not lie on the grid");

  Common scen_opts;
  scen_opts.nu = "8";
  std::string scen_name;
  int n_jumps = 8;
  double decay = 0.5;
  double gap = 1e-11;
  auto* scen_cmd = app.add_subcommand("scenario", "constructed examples: canc_vs_inter, not_jump");
  add_common(scen_cmd, scen_opts);
  scen_cmd->add_option("name", scen_name, "scenario name")->required();
  scen_cmd->add_option("--n-jumps", n_jumps, "not_jump: number of jumps");
  scen_cmd->add_option("--decay", decay, "not_jump: strength ratio");
  scen_cmd->add_option("--gap", gap, "canc_vs_inter: discrete speed gap");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run_cmd) return batch(run_opts, true);
    if (*batch_cmd) return batch(batch_opts, false);
    if (*level_cmd) return levelsets(level_opts, w);
    if (*scen_cmd) return scenario(scen_name, scen_opts, n_jumps, decay, gap);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

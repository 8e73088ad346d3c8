#include "frontwave/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "frontwave/scenarios.hpp"
#include "json.hpp"

namespace frontwave {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) {
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

double to_double(const std::string& s, const std::string& ctx) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != s.size() || s.empty()) throw std::invalid_argument("bad number '" + s + "' in " + ctx);
  return v;
}

InitialData parse_steps(const std::string& body) {
  const auto at = body.find('@');
  if (at == std::string::npos) throw std::invalid_argument("step datum is step:v0,v1,...@x0,x1,...");
  std::vector<double> values;
  std::vector<double> xs;
  for (const auto& f : split(body.substr(0, at), ',')) values.push_back(to_double(f, body));
  for (const auto& f : split(body.substr(at + 1), ',')) xs.push_back(to_double(f, body));
  if (values.empty()) throw std::invalid_argument("step datum has no values");
  if (xs.size() == values.size() + 1) {
    values.push_back(0.0);
  } else if (xs.size() != values.size()) {
    throw std::invalid_argument("step datum needs as many breakpoints as values, or one more");
  }
  InitialData d;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0 && !(xs[i - 1] < xs[i])) throw std::invalid_argument("step breakpoints must increase");
    if (!(values[i] >= 0.0)) throw std::invalid_argument("step values must be nonnegative");
    d.samples.push_back({xs[i], values[i]});
    d.max_value = std::max(d.max_value, values[i]);
  }
  if (values.back() != 0.0) throw std::invalid_argument("step datum must end with value 0");
  return d;
}

InitialData parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open initial datum: " + path);
  InitialData d;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double x = 0.0;
    double v = 0.0;
    if (!(row >> x >> v)) {
      if (d.samples.empty()) continue;
      throw std::invalid_argument("malformed row in " + path + ": " + line);
    }
    d.samples.push_back({x, v});
    d.max_value = std::max(d.max_value, v);
  }
  if (d.samples.empty()) throw std::invalid_argument("no samples in " + path);
  return d;
}

FluxSpec resolve_flux(const std::string& name, double max_value, std::uint64_t seed) {
  if (name == "blend") return random_blend_flux(seed, max_value);
  if (name.rfind("blend:", 0) == 0) {
    return random_blend_flux(static_cast<std::uint64_t>(to_double(name.substr(6), name)), max_value);
  }
  return make_flux(name, max_value);
}

CheckResult from_report(const CheckReport& rep, const std::string& name) {
  CheckResult r;
  r.name = name;
  r.passed = rep.ok();
  r.lhs = static_cast<double>(rep.violations);
  r.rhs = 0.0;
  r.cases = rep.cases;
  r.details = rep.details;
  return r;
}

// Random polyline over [lo, hi] with slopes within +-slope.
std::vector<std::pair<double, double>> random_walk(std::mt19937_64& rng, double lo, double hi, double base,
                                                   double slope, int vertices) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<std::pair<double, double>> v;
  double t = base;
  const double dx = (hi - lo) / (vertices - 1);
  for (int i = 0; i < vertices; ++i) {
    if (i > 0) t += unit(rng) * slope * dx;
    v.emplace_back(lo + dx * i, t);
  }
  return v;
}

std::pair<double, double> spatial_range(const Timeline& tl) {
  double lo = kInfinity;
  double hi = -kInfinity;
  for (const auto& tr : tl.tracks()) {
    const double t1 = std::min(tr.t_end, tl.t_max());
    for (double t : {tr.t_start, t1}) {
      lo = std::min(lo, tr.position(t));
      hi = std::max(hi, tr.position(t));
    }
  }
  if (!std::isfinite(lo)) return {-1.0, 1.0};
  return {lo - 1.0, hi + 1.0};
}

}  // namespace

InitialData parse_initial(const std::string& spec) {
  if (spec.rfind("step:", 0) == 0) return parse_steps(spec.substr(5));
  if (spec.rfind("file:", 0) == 0) return parse_file(spec.substr(5));
  if (spec.rfind("random:", 0) == 0) {
    const auto f = split(spec.substr(7), ',');
    if (f.size() != 3) throw std::invalid_argument("random datum is random:seed,n_jumps,tv_budget");
    const double rs = to_double(f[0], spec);
    const double n = to_double(f[1], spec);
    const double tv = to_double(f[2], spec);
    if (rs < 0 || rs != std::floor(rs)) throw std::invalid_argument("random seed must be a nonnegative integer");
    if (n < 1 || n != std::floor(n)) throw std::invalid_argument("random datum needs a positive jump count");
    if (!(tv > 0.0)) throw std::invalid_argument("random datum needs a positive TV budget");
    InitialData d;
    d.samples = random_samples(static_cast<std::uint64_t>(rs), static_cast<int>(n), 1.0, tv);
    for (const auto& s : d.samples) d.max_value = std::max(d.max_value, s.value);
    return d;
  }
  throw std::invalid_argument("unknown initial datum '" + spec + "' (step:, random:, file:)");
}

std::vector<int> parse_nu_list(const std::string& text) {
  std::vector<int> out;
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const int a = static_cast<int>(to_double(text.substr(0, dots), text));
    const int b = static_cast<int>(to_double(text.substr(dots + 2), text));
    if (a > b) throw std::invalid_argument("empty nu range " + text);
    for (int nu = a; nu <= b; ++nu) out.push_back(nu);
  } else {
    for (const auto& item : split(text, ',')) out.push_back(static_cast<int>(to_double(item, text)));
  }
  if (out.empty()) throw std::invalid_argument("no refinement levels in '" + text + "'");
  for (int nu : out) {
    if (nu < 1 || nu > 24) throw std::invalid_argument("nu must lie in [1, 24]");
  }
  return out;
}

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names{
      "conservation", "tv",        "coarea",   "atlas",      "pushforward", "glimm",
      "quadratic",    "event_bounds", "volpert", "spacelike", "dependence", "theta",
      "levelcurves",  "single_front"};
  return names;
}

std::set<std::string> parse_checks(const std::string& text) {
  std::set<std::string> out;
  for (const auto& item : split(text, ',')) {
    if (item == "all") {
      out.insert(known_checks().begin(), known_checks().end());
    } else if (item == "none") {
      continue;
    } else if (std::find(known_checks().begin(), known_checks().end(), item) != known_checks().end()) {
      out.insert(item);
    } else {
      throw std::invalid_argument("unknown check: " + item);
    }
  }
  return out;
}

std::vector<double> interevent_times(const Timeline& tl, std::size_t n) {
  std::vector<double> times{0.0};
  for (const auto& ev : tl.events()) {
    if (ev.t > times.back()) times.push_back(ev.t);
  }
  std::vector<double> mids;
  for (std::size_t i = 0; i + 1 < times.size(); ++i) mids.push_back(0.5 * (times[i] + times[i + 1]));
  if (times.back() < tl.t_max()) mids.push_back(0.5 * (times.back() + tl.t_max()));
  if (mids.size() <= n || n == 0) return mids;
  std::vector<double> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(mids[i * (mids.size() - 1) / (n - 1 > 0 ? n - 1 : 1)]);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<CheckResult> run_checks(const WaveAtlas& atlas, double d2, const CheckOptions& opt) {
  std::vector<CheckResult> out;
  const auto& tl = atlas.timeline();
  const double h = atlas.cell();
  auto want = [&](const char* n) { return opt.names.count(n) > 0; };
  const auto mids = interevent_times(tl, opt.slice_samples);

  if (want("conservation") || want("tv") || want("coarea")) {
    const double i0 = tl.initial().integral();
    const double scale = std::max(std::abs(i0), 1e-300);
    double worst = 0.0;
    CheckReport tv("tv");
    CheckReport coarea("coarea");
    std::int64_t prev_tv = total_variation(tl.initial());
    GridIndex prev_linf = tl.initial().max_value();
    for_each_event_slice(tl, [&](std::size_t e, const PiecewiseConstantFn& u) {
      worst = std::max(worst, std::abs(u.integral() - i0) / scale);
      const std::int64_t cur = total_variation(u);
      tv.expect(cur == prev_tv - tl.events()[e].tv_drop, "event " + std::to_string(e) + ": TV " +
                                                              std::to_string(cur) + " after drop from " +
                                                              std::to_string(prev_tv));
      tv.expect(u.max_value() <= prev_linf, "event " + std::to_string(e) + ": sup norm increased");
      prev_tv = cur;
      prev_linf = u.max_value();
      const auto c = coarea_check(u);
      coarea.expect(c.lhs == c.rhs, "event " + std::to_string(e) + ": coarea " + std::to_string(c.lhs) + " vs " +
                                        std::to_string(c.rhs));
    });
    const auto last = sample_solution(tl, tl.t_max());
    worst = std::max(worst, std::abs(last.integral() - i0) / scale);
    for (double t : mids) {
      const auto c = coarea_time_slice(atlas, t);
      coarea.expect(c.lhs == c.rhs, "t=" + std::to_string(t) + ": level-curve coarea " + std::to_string(c.lhs) +
                                        " vs " + std::to_string(c.rhs));
    }
    if (want("conservation")) {
      CheckResult r;
      r.name = "conservation";
      r.lhs = worst;
      r.rhs = 1e-9;
      r.passed = worst <= 1e-9;
      r.cases = static_cast<std::int64_t>(tl.events().size()) + 1;
      out.push_back(r);
    }
    if (want("tv")) out.push_back(from_report(tv, "tv"));
    if (want("coarea")) out.push_back(from_report(coarea, "coarea"));
  }
  if (want("atlas")) out.push_back(from_report(atlas_invariants(atlas), "atlas"));
  if (want("pushforward")) {
    CheckReport rep("pushforward");
    for (double t : mids) rep.merge(pushforward_check(atlas, t));
    out.push_back(from_report(rep, "pushforward"));
  }
  if (want("glimm")) {
    CheckReport rep("glimm");
    double q = atlas.q_initial();
    for (std::size_t e = 0; e < atlas.event_waves().size(); ++e) {
      const auto& ew = atlas.event_waves()[e];
      rep.expect(ew.q_before == q && ew.q_after <= ew.q_before,
                 "event " + std::to_string(e) + ": Q rises from " + std::to_string(ew.q_before) + " to " +
                     std::to_string(ew.q_after));
      q = ew.q_after;
    }
    out.push_back(from_report(rep, "glimm"));
  }
  if (want("quadratic")) {
    CheckResult r;
    r.name = "quadratic";
    const double tv0 = static_cast<double>(tl.total_waves()) * h;
    r.lhs = speed_tv_integral(atlas);
    r.rhs = 3.0 * d2 * tv0 * tv0;
    r.passed = r.lhs <= r.rhs;
    r.cases = 1;
    out.push_back(r);
  }
  if (want("event_bounds")) {
    const auto rep = per_event_bounds(atlas, d2);
    CheckResult r = from_report(rep.bound_check, "event_bounds");
    r.passed = rep.ok();
    r.cases += rep.key_fact.cases;
    for (const auto& d : rep.key_fact.details) r.details.push_back(d);
    for (const auto& b : rep.bounds) r.lhs += b.lhs;
    r.rhs = 0.0;
    for (const auto& b : rep.bounds) r.rhs += b.rhs;
    out.push_back(r);
  }
  if (want("volpert")) out.push_back(from_report(volpert_check(atlas), "volpert"));

  std::mt19937_64 rng(opt.seed);
  if (want("spacelike")) {
    CheckReport tv_rep("spacelike");
    CheckReport linf_rep("spacelike_linf");
    const double lambda = std::max(lipschitz_bound(tl.flux()), 1e-3);
    const auto [xlo, xhi] = spatial_range(tl);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double top = static_cast<double>(tl.flux().max_index()) * h;
    int done = 0;
    for (int attempt = 0; attempt < 20 * opt.spacelike_configs && done < opt.spacelike_configs; ++attempt) {
      const double slope = 0.45 / lambda;
      auto lower = random_walk(rng, xlo, xhi, unit(rng) * tl.t_max(), slope, 7);
      auto gap = random_walk(rng, xlo, xhi, unit(rng) * 0.5 * tl.t_max(), slope, 7);
      std::vector<std::pair<double, double>> upper = lower;
      for (std::size_t i = 0; i < upper.size(); ++i) {
        upper[i].second = std::clamp(lower[i].second + std::max(gap[i].second, 0.0), 0.0, tl.t_max());
        lower[i].second = std::clamp(lower[i].second, 0.0, tl.t_max());
        upper[i].second = std::max(upper[i].second, lower[i].second);
      }
      if (attempt % 10 == 0) {
        for (auto& v : lower) v.second = 0.0;
      }
      const SpacelikeCurve tau_prime(lower, lambda);
      const SpacelikeCurve tau(upper, lambda);
      std::vector<WaveId> alive;
      for (const auto& r : atlas.records()) {
        if (crossing_time(atlas, r.id, tau) < r.death_time) alive.push_back(r.id);
      }
      if (alive.size() < 2) continue;
      std::uniform_int_distribution<std::size_t> pick(0, alive.size() - 1);
      WaveId s = alive[pick(rng)];
      WaveId sp = alive[pick(rng)];
      if (attempt % 7 == 0) {
        s = alive.front();
        sp = alive.back();
      }
      if (s == sp) continue;
      if (s > sp) std::swap(s, sp);
      const auto b = spacelike_tv_balance(atlas, tau, tau_prime, s, sp);
      tv_rep.expect(b.holds(), "s=" + std::to_string(s) + " s'=" + std::to_string(sp) + ": " +
                                   std::to_string(b.lhs_tau) + " != " + std::to_string(b.lhs_tau_prime) + " - " +
                                   std::to_string(b.canceled));
      for (double u_bar : {0.0, 0.5 * top, top}) {
        const auto l = spacelike_linf_balance(atlas, tau, tau_prime, s, sp, u_bar);
        linf_rep.expect(l.holds(), "s=" + std::to_string(s) + " s'=" + std::to_string(sp) + " u=" +
                                       std::to_string(u_bar) + ": " + std::to_string(l.later) + " + " +
                                       std::to_string(l.canceled) + " < " + std::to_string(l.earlier));
      }
      ++done;
    }
    auto r = from_report(tv_rep, "spacelike");
    if (done < opt.spacelike_configs) {
      r.passed = false;
      r.details.push_back("only " + std::to_string(done) + " configurations found");
    }
    out.push_back(r);
    out.push_back(from_report(linf_rep, "spacelike_linf"));
  }
  if (want("dependence")) {
    CheckReport rep("dependence");
    CheckReport inter("dependence_interaction");
    const double lambda = std::max(lipschitz_bound(tl.flux()), 1e-3);
    const auto [xlo, xhi] = spatial_range(tl);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < opt.dependence_configs; ++i) {
      const double t_bar = unit(rng) * tl.t_max();
      double a = xlo + unit(rng) * (xhi - xlo);
      double b = xlo + unit(rng) * (xhi - xlo);
      if (a > b) std::swap(a, b);
      if (!(a < b)) continue;
      const double t = std::min(tl.t_max(), t_bar + unit(rng) * (b - a) / (2.0 * lambda));
      const auto d = domain_of_dependence(atlas, a, b, t_bar, t);
      rep.expect(d.holds(), "(" + std::to_string(a) + "," + std::to_string(b) + ") t=" + std::to_string(t_bar) +
                                "->" + std::to_string(t) + ": " + std::to_string(d.tv_before) + " < " +
                                std::to_string(d.tv_after) + " + " + std::to_string(d.canceled));
      inter.expect(d.holds_with_interaction(h), "(" + std::to_string(a) + "," + std::to_string(b) + ")");
    }
    out.push_back(from_report(rep, "dependence"));
    auto r = from_report(inter, "dependence_interaction");
    r.asserted = false;
    out.push_back(r);
  }
  if (want("theta")) {
    const auto atoms = theta_atoms(cancellation_measure(atlas), interaction_measure(atlas), h);
    out.push_back(from_report(theta_on_fronts(tl, atoms), "theta"));
  }
  if (want("levelcurves")) {
    CheckReport rep("levelcurves");
    for (GridIndex band = 0; band < tl.flux().max_index(); ++band) {
      const double w = (static_cast<double>(band) + 0.5) * h;
      const auto curves = extract_level_curves(atlas, w);
      std::int64_t prev_count = static_cast<std::int64_t>(curves.size());
      for (const auto& c : curves) {
        rep.expect(c.normal_sign == atlas.record(c.wave).sign,
                   "w=" + std::to_string(w) + " j=" + std::to_string(c.j) + ": normal sign mismatch");
        rep.expect(s_parametrization(atlas, c.j, w) == c.wave,
                   "w=" + std::to_string(w) + " j=" + std::to_string(c.j) + ": s-parametrization mismatch");
        const auto [j, wi] = inverse_parametrization(atlas, c.wave);
        rep.expect(j == c.j && wi == w, "s=" + std::to_string(c.wave) + ": inverse parametrization mismatch");
      }
      for (double t : mids) {
        std::int64_t count = 0;
        double prev_x = -kInfinity;
        for (const auto& c : curves) {
          if (!(t < c.t_end)) continue;
          ++count;
          const double x = atlas.position(c.wave, t);
          rep.expect(x >= prev_x, "w=" + std::to_string(w) + " t=" + std::to_string(t) + ": curves out of order");
          prev_x = x;
        }
        rep.expect(count <= prev_count, "w=" + std::to_string(w) + ": curve count rises at t=" + std::to_string(t));
        prev_count = count;
      }
    }
    out.push_back(from_report(rep, "levelcurves"));
  }
  if (want("single_front")) {
    CheckResult r;
    r.name = "single_front";
    r.lhs = static_cast<double>(tl.diagnostics().split_interactions);
    r.rhs = 0.0;
    r.passed = tl.diagnostics().split_interactions == 0;
    r.cases = static_cast<std::int64_t>(tl.events().size());
    out.push_back(r);
  }
  return out;
}

bool RunReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.asserted || c.passed; });
}

bool BatchReport::passed() const {
  return std::all_of(runs.begin(), runs.end(), [](const RunReport& r) { return r.passed(); });
}

RunReport run_single(const RunConfig& config, int nu) {
  if (!(config.t_max > 0.0)) throw std::invalid_argument("t_max must be positive");
  const auto data = parse_initial(config.initial);
  const auto u0 = approximate_initial_datum(data.samples, nu);
  const double h = std::ldexp(1.0, -nu);
  const double max_value = static_cast<double>(std::max<GridIndex>(u0.max_value(), 1)) * h;
  const auto spec = resolve_flux(config.flux, max_value, config.seed);
  const auto flux = sample_flux(spec, nu);

  RunReport rep;
  rep.nu = nu;
  auto timeline = std::make_shared<Timeline>(run(u0, flux, config.t_max));
  auto atlas = std::make_shared<WaveAtlas>(build_atlas(*timeline, u0));
  rep.tv0 = static_cast<double>(total_variation(u0)) * h;
  rep.d2 = second_derivative_bound(spec, nu);
  rep.speed_tv = speed_tv_integral(*atlas);
  rep.quadratic_bound = 3.0 * rep.d2 * rep.tv0 * rep.tv0;
  rep.tv_curve.emplace_back(0.0, rep.tv0);
  rep.linf_curve.emplace_back(0.0, static_cast<double>(u0.max_value()) * h);
  rep.q_curve.emplace_back(0.0, atlas->q_initial());
  for_each_event_slice(*timeline, [&](std::size_t e, const PiecewiseConstantFn& u) {
    const double t = timeline->events()[e].t;
    rep.tv_curve.emplace_back(t, static_cast<double>(total_variation(u)) * h);
    rep.linf_curve.emplace_back(t, static_cast<double>(u.max_value()) * h);
    rep.q_curve.emplace_back(t, atlas->event_waves()[e].q_after);
  });
  rep.coarea = coarea_check(sample_solution(*timeline, config.t_max));
  if (!config.checks.empty()) {
    CheckOptions opt;
    opt.names = config.checks;
    opt.seed = config.seed;
    rep.checks = run_checks(*atlas, rep.d2, opt);
  }
  rep.timeline = std::move(timeline);
  rep.atlas = std::move(atlas);
  return rep;
}

BatchReport run_batch(const RunConfig& config) {
  BatchReport out;
  out.config = config;
  std::vector<std::future<RunReport>> jobs;
  for (int nu : config.nus) jobs.push_back(std::async(std::launch::async, [&config, nu] { return run_single(config, nu); }));
  for (auto& j : jobs) out.runs.push_back(j.get());
  if (config.checks.empty()) return out;

  for (std::size_t i = 0; i + 1 < out.runs.size(); ++i) {
    const auto& a = out.runs[i];
    const auto& b = out.runs[i + 1];
    const double t = config.t_max;
    const double d = l1_distance(sample_solution(*a.timeline, t), sample_solution(*b.timeline, t));
    if (!out.cross_nu.empty() && !(d < out.cross_nu.back().l1)) out.l1_strictly_decreasing = false;
    out.cross_nu.push_back({a.nu, b.nu, t, d});
  }
  if (out.runs.size() >= 3) {
    int finest = 0;
    for (const auto& r : out.runs) finest = std::max(finest, r.nu);
    const double step = std::ldexp(1.0, -(finest + 1));
    std::int64_t good = 0;
    std::int64_t total = 0;
    for (std::size_t i = 0; i + 2 < out.runs.size(); ++i) {
      for (int wi = 0; wi < 16; ++wi) {
        const double w = (2.0 * std::floor((wi + 0.5) / 16.0 / (2.0 * step)) + 1.0) * step;
        for (int ti = 1; ti <= 8; ++ti) {
          const double t = config.t_max * ti / 8.0;
          const double d0 = level_set_distance(*out.runs[i].timeline, *out.runs[i + 1].timeline, w, t, SetMetric::l1);
          const double d1 =
              level_set_distance(*out.runs[i + 1].timeline, *out.runs[i + 2].timeline, w, t, SetMetric::l1);
          ++total;
          if (d1 < d0 || (d0 == 0.0 && d1 == 0.0)) ++good;
        }
      }
    }
    out.level_set_samples = total;
    out.level_set_trend = total > 0 ? static_cast<double>(good) / static_cast<double>(total) : 1.0;
  }
  return out;
}

std::string to_json(const BatchReport& report) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["schema"] = 1;
  const auto& c = report.config;
  j["config"] = {{"flux", c.flux},
                 {"initial", c.initial},
                 {"nu", c.nus},
                 {"t_max", c.t_max},
                 {"checks", std::vector<std::string>(c.checks.begin(), c.checks.end())},
                 {"seed", c.seed}};
  ordered_json runs = ordered_json::array();
  for (const auto& r : report.runs) {
    ordered_json jr;
    jr["nu"] = r.nu;
    jr["tv0"] = r.tv0;
    jr["d2"] = r.d2;
    jr["events"] = r.timeline->events().size();
    jr["speed_tv_integral"] = r.speed_tv;
    jr["quadratic_bound"] = r.quadratic_bound;
    jr["tv_curve"] = r.tv_curve;
    jr["linf_curve"] = r.linf_curve;
    jr["q_curve"] = r.q_curve;
    ordered_json log = ordered_json::array();
    for (const auto& ev : r.timeline->events()) {
      ordered_json out_fronts = ordered_json::array();
      for (const auto& w : ev.outgoing) {
        out_fronts.push_back({{"lo", w.lo}, {"hi", w.hi}, {"sign", w.sign}, {"speed", w.speed}});
      }
      log.push_back({{"t", ev.t},
                     {"x", ev.x},
                     {"kind", ev.kind == CollisionKind::cancellation ? "cancellation" : "interaction"},
                     {"tv_drop", ev.tv_drop},
                     {"incoming", ev.incoming},
                     {"outgoing", out_fronts}});
    }
    jr["event_log"] = log;
    jr["coarea"] = {{"lhs", r.coarea.lhs}, {"rhs", r.coarea.rhs}};
    if (!r.checks.empty()) {
      ordered_json checks = ordered_json::array();
      for (const auto& ch : r.checks) {
        checks.push_back({{"name", ch.name},
                          {"asserted", ch.asserted},
                          {"passed", ch.passed},
                          {"lhs", ch.lhs},
                          {"rhs", ch.rhs},
                          {"cases", ch.cases},
                          {"details", ch.details}});
      }
      jr["checks"] = checks;
    }
    runs.push_back(jr);
  }
  j["runs"] = runs;
  if (!report.config.checks.empty()) {
    ordered_json l1 = ordered_json::array();
    for (const auto& d : report.cross_nu) l1.push_back({{"nu_a", d.nu_a}, {"nu_b", d.nu_b}, {"t", d.t}, {"l1", d.l1}});
    j["cross_nu"] = {{"l1", l1},
                     {"l1_strictly_decreasing", report.l1_strictly_decreasing},
                     {"level_set_trend", report.level_set_trend},
                     {"level_set_samples", report.level_set_samples}};
  }
  j["passed"] = report.passed();
  return j.dump(2) + "\n";
}

std::string trajectories_csv(const Timeline& tl, int nu) {
  std::ostringstream os;
  os.precision(17);
  for (const auto& tr : tl.tracks()) {
    const double t1 = std::min(tr.t_end, tl.t_max());
    for (double t : {tr.t_start, t1}) {
      os << nu << ',' << t << ',' << tr.position(t) << ',' << tr.id << ',' << tr.wave.strength() << ','
         << tr.wave.speed << '\n';
    }
  }
  return os.str();
}

std::string checks_csv(const BatchReport& report) {
  std::ostringstream os;
  os.precision(17);
  os << "nu,name,asserted,passed,lhs,rhs,cases\n";
  for (const auto& r : report.runs) {
    for (const auto& c : r.checks) {
      os << r.nu << ',' << c.name << ',' << c.asserted << ',' << c.passed << ',' << c.lhs << ',' << c.rhs << ','
         << c.cases << '\n';
    }
  }
  return os.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
  if (!f) throw std::runtime_error("write failed for " + path);
}

void emit(const BatchReport& report, const std::string& format, const std::string& out) {
  if (format == "json") {
    write_text(out, to_json(report));
  } else if (format == "csv") {
    std::string traj = "nu,t,x,front_id,strength,speed\n";
    for (const auto& r : report.runs) traj += trajectories_csv(*r.timeline, r.nu);
    if (out.empty()) {
      write_text("", traj + "\n" + checks_csv(report));
    } else {
      write_text(out + "_trajectories.csv", traj);
      write_text(out + "_checks.csv", checks_csv(report));
    }
  } else {
    throw std::invalid_argument("unknown format: " + format);
  }
}

}  // namespace frontwave

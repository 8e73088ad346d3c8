#include "frontwave/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "frontwave/riemann.hpp"

namespace frontwave {

namespace {

double smoothstep5(double z) { return z * z * z * (10.0 - 15.0 * z + 6.0 * z * z); }
double smoothstep5_d1(double z) { return 30.0 * z * z * (1.0 - z) * (1.0 - z); }
double smoothstep5_d2(double z) { return 60.0 * z * (1.0 - z) * (1.0 - 2.0 * z); }

struct Bump {
  double um;  // u_minus
  double up;  // u_plus
  double ur;  // u_m_plus
  double delta;

  double left(double u, int d) const {
    const double w = up - um;
    const double z = (u - um) / w;
    if (d == 0) return z * z * z;
    if (d == 1) return 3.0 * z * z / w;
    return 6.0 * z / (w * w);
  }
  double right(double u, int d) const {
    const double w = ur - up;
    const double z = (ur - u) / w;
    if (d == 0) return z * z * z;
    if (d == 1) return -3.0 * z * z / w;
    return 6.0 * z / (w * w);
  }
  // d-th derivative of b.
  double eval(double u, int d) const {
    if (u <= um || u >= ur) return 0.0;
    if (u <= up - delta) return left(u, d);
    if (u >= up + delta) return right(u, d);
    const double z = (u - (up - delta)) / (2.0 * delta);
    const double s = smoothstep5(z);
    const double l = left(u, 0);
    const double r = right(u, 0);
    if (d == 0) return (1.0 - s) * l + s * r;
    const double s1 = smoothstep5_d1(z) / (2.0 * delta);
    if (d == 1) return (1.0 - s) * left(u, 1) + s * right(u, 1) + s1 * (r - l);
    const double s2 = smoothstep5_d2(z) / (4.0 * delta * delta);
    return (1.0 - s) * left(u, 2) + s * right(u, 2) + 2.0 * s1 * (right(u, 1) - left(u, 1)) + s2 * (r - l);
  }
};

bool on_grid(double u, int nu) {
  const double k = std::ldexp(u, nu);
  return k == std::round(k);
}

double single_front_speed(const PiecewiseAffineFlux& flux, GridIndex a, GridIndex b, const char* what) {
  const auto fan = solve_riemann(flux, a, b);
  if (fan.size() != 1) {
    throw std::invalid_argument(std::string(what) + " jump splits into " + std::to_string(fan.size()) + " fronts");
  }
  return fan.front().speed;
}

}  // namespace

CancVsInterScenario scenario_canc_vs_inter(const CancVsInterParams& p) {
  if (!(0.0 <= p.u_minus && p.u_minus < p.u_plus && p.u_plus < p.u_m_plus && p.u_m_plus <= 1.0)) {
    throw std::invalid_argument("need 0 <= u_minus < u_plus < u_m_plus <= 1");
  }
  if (p.nu < 2 || !on_grid(p.u_minus, p.nu) || !on_grid(p.u_plus, p.nu) || !on_grid(p.u_m_plus, p.nu)) {
    throw std::invalid_argument("scenario states must lie on the 2^-nu grid");
  }
  if (!(p.target_gap > kParallelSpeedTolerance) || !(p.separation > 0.0)) {
    throw std::invalid_argument("target speed gap must exceed the parallel tolerance and separation be positive");
  }
  const double h = std::ldexp(1.0, -p.nu);
  const Bump bump{p.u_minus, p.u_plus, p.u_m_plus, 0.25 * h};
  const double sigma = p.sigma;
  auto make_spec = [&](double eta) {
    FluxSpec spec;
    spec.name = "canc_vs_inter";
    spec.eval = [bump, sigma, eta](double u) { return sigma * u + eta * bump.eval(u, 0); };
    spec.max_value = 1.0;
    return spec;
  };
  const auto lo = static_cast<GridIndex>(std::ldexp(p.u_minus, p.nu));
  const auto mid = static_cast<GridIndex>(std::ldexp(p.u_plus, p.nu));
  const auto hi = static_cast<GridIndex>(std::ldexp(p.u_m_plus, p.nu));
  auto gap_of = [&](double eta) {
    const auto flux = sample_flux(make_spec(eta), p.nu);
    return single_front_speed(flux, lo, hi, "positive") - single_front_speed(flux, hi, mid, "negative");
  };

  double eta_lo = 0.0;
  double eta_hi = p.target_gap * (p.u_m_plus - p.u_plus);
  for (int i = 0; i < 200 && gap_of(eta_hi) < p.target_gap; ++i) eta_hi *= 2.0;
  if (gap_of(eta_hi) < p.target_gap) {
    throw std::invalid_argument("cannot reach speed gap " + std::to_string(p.target_gap) + "; solved gap " +
                                std::to_string(gap_of(eta_hi)));
  }
  for (int i = 0; i < 200; ++i) {
    const double m = 0.5 * (eta_lo + eta_hi);
    (gap_of(m) < p.target_gap ? eta_lo : eta_hi) = m;
  }

  CancVsInterScenario sc;
  sc.params = p;
  sc.eta = eta_hi;
  sc.speed_gap = gap_of(sc.eta);
  if (!(sc.speed_gap > kParallelSpeedTolerance)) {
    throw std::invalid_argument("equal speeds make the fronts parallel; solved gap " + std::to_string(sc.speed_gap));
  }
  sc.flux = make_spec(sc.eta);
  double d2 = 0.0;
  for (int i = 0; i <= 200000; ++i) {
    d2 = std::max(d2, std::abs(bump.eval(static_cast<double>(i) / 200000.0, 2)));
  }
  const int blend_steps = 20000;
  for (int i = 0; i <= blend_steps; ++i) {
    const double u = p.u_plus - bump.delta + 2.0 * bump.delta * i / blend_steps;
    d2 = std::max(d2, std::abs(bump.eval(u, 2)));
  }
  sc.flux.second_derivative_hint = 1.1 * sc.eta * d2;
  sc.initial = PiecewiseConstantFn(p.nu, {-1.0, 0.0, p.separation, p.separation + 1.0}, {0, lo, hi, mid, 0});
  sc.t_collision = p.separation / sc.speed_gap;
  sc.t_max = 2.0 * sc.t_collision;
  sc.expected_atom = 2.0 * static_cast<double>(hi - mid) * h;
  return sc;
}

CancVsInterVerdict evaluate_canc_vs_inter(const CancVsInterScenario& sc, const WaveAtlas& atlas, double tol) {
  CancVsInterVerdict v;
  const auto& tl = atlas.timeline();
  std::ptrdiff_t best = -1;
  for (std::size_t e = 0; e < tl.events().size(); ++e) {
    const auto& ev = tl.events()[e];
    if (ev.kind != CollisionKind::cancellation) continue;
    if (best < 0 || ev.tv_drop > tl.events()[static_cast<std::size_t>(best)].tv_drop) {
      best = static_cast<std::ptrdiff_t>(e);
    }
  }
  if (best < 0) return v;
  const auto& ev = tl.events()[static_cast<std::size_t>(best)];
  v.collided = true;
  v.t = ev.t;
  v.x = ev.x;
  double smin = kInfinity;
  double smax = -kInfinity;
  for (FrontId id : ev.incoming) {
    smin = std::min(smin, tl.track(id).wave.speed);
    smax = std::max(smax, tl.track(id).wave.speed);
  }
  v.incoming_gap = smax - smin;
  v.atom_mass = static_cast<double>(ev.tv_drop) * atlas.cell();
  v.atom_error = std::abs(v.atom_mass - sc.expected_atom);
  for (const auto& [id, sp] : atlas.event_waves()[static_cast<std::size_t>(best)].survivors) {
    v.survivor_mass += std::abs(sp.second - sp.first) * atlas.cell();
  }
  v.passed = v.incoming_gap <= tol && v.atom_error <= tol && v.survivor_mass <= tol;
  return v;
}

NotJumpScenario scenario_not_jump(const NotJumpParams& p) {
  if (p.n_jumps < 3) throw std::invalid_argument("n_jumps must be >= 3");
  if (!(p.decay > 0.0 && p.decay <= 0.9)) throw std::invalid_argument("decay must lie in (0, 0.9]");
  if (p.nu < 1 || p.nu > 24) throw std::invalid_argument("nu out of range");
  NotJumpScenario sc;
  sc.params = p;
  sc.flux = burgers_flux(1.0);
  const auto flux = sample_flux(sc.flux, p.nu);
  const GridIndex top = flux.max_index();
  const int small = p.n_jumps - 1;
  GridIndex total = 0;
  for (int k = 1; k <= small; ++k) {
    const auto q = static_cast<GridIndex>(std::llround(2.0 * std::pow(p.decay, k - 1 - (small - 1))));
    if (q < 1) throw std::invalid_argument("jump strengths round to zero");
    sc.strengths.push_back(q);
    total += q;
  }
  if (total >= top) {
    throw std::invalid_argument("staircase of " + std::to_string(total) + " units does not fit below " +
                                std::to_string(top) + "; increase nu");
  }

  std::vector<GridIndex> states{total};
  for (GridIndex q : sc.strengths) states.push_back(states.back() - q);
  double xs = 0.0;
  double t_prev = 0.0;
  std::vector<double> bps{-2.0, 0.0};
  std::vector<GridIndex> vals{0, top, total};
  for (int k = 1; k <= small; ++k) {
    const double tk = 1.0 - 0.5 * std::pow(p.decay, k - 1);
    sc.merge_times.push_back(tk);
    const GridIndex a = states[static_cast<std::size_t>(k - 1)];
    const GridIndex b = states[static_cast<std::size_t>(k)];
    xs += flux.chord_slope(top, a) * (tk - t_prev);
    t_prev = tk;
    const double x0 = xs - flux.chord_slope(a, b) * tk;
    if (!(x0 > bps.back())) throw std::logic_error("staircase positions are not increasing");
    bps.push_back(x0);
    vals.push_back(b);
  }
  sc.initial = PiecewiseConstantFn(p.nu, std::move(bps), std::move(vals));
  return sc;
}

NotJumpVerdict evaluate_not_jump(const NotJumpScenario& sc, const WaveAtlas& atlas) {
  NotJumpVerdict v;
  const auto& tl = atlas.timeline();
  const double h = atlas.cell();
  std::vector<double> masses;
  for (std::size_t e = 0; e < tl.events().size(); ++e) {
    const auto& ev = tl.events()[e];
    if (ev.kind != CollisionKind::interaction) continue;
    v.interaction_points.emplace_back(ev.t, ev.x);
    double m = 0.0;
    for (const auto& [id, sp] : atlas.event_waves()[e].survivors) m += std::abs(sp.second - sp.first) * h;
    v.atom_masses.push_back(m);
  }
  const std::size_t n = v.interaction_points.size();
  v.monotone = n + 1 == static_cast<std::size_t>(sc.params.n_jumps);
  for (std::size_t i = 1; i < n && v.monotone; ++i) {
    const auto [t0, x0] = v.interaction_points[i - 1];
    const auto [t1, x1] = v.interaction_points[i];
    v.monotone = t1 > t0 && x1 > x0;
    if (i >= 2) v.monotone = v.monotone && (x1 - x0) < (x0 - v.interaction_points[i - 2].second);
  }
  v.atoms_bounded = n == sc.strengths.size();
  for (std::size_t i = 0; i < n; ++i) {
    v.max_atom = std::max(v.max_atom, v.atom_masses[i]);
    if (i < sc.strengths.size()) {
      v.atoms_bounded = v.atoms_bounded && v.atom_masses[i] <= 2.0 * h * static_cast<double>(sc.strengths[i]);
    }
  }
  v.atom_bound = 2.0 * h * static_cast<double>(*std::max_element(sc.strengths.begin(), sc.strengths.end()));
  if (n > 0) {
    const auto [tb, xb] = v.interaction_points.back();
    v.gamma = gamma_pm(atlas, tb, xb);
    v.slope_gap = std::abs(v.gamma.slope_minus_in - v.gamma.slope_plus_in);
  }
  v.passed = v.monotone && v.atoms_bounded && v.max_atom <= v.atom_bound && v.slope_gap >= v.required_gap;
  return v;
}

std::vector<Sample> random_samples(std::uint64_t seed, int pieces, double max_value, double tv_cap, double length) {
  if (pieces < 1) throw std::invalid_argument("need at least one piece");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pos(0.0, length);
  std::uniform_real_distribution<double> val(0.0, max_value);
  std::vector<double> xs(static_cast<std::size_t>(pieces) + 1);
  for (auto& x : xs) x = pos(rng);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<double> vs(xs.size() - 1);
  for (auto& v : vs) v = val(rng);
  double tv = 0.0;
  double prev = 0.0;
  for (double v : vs) {
    tv += std::abs(v - prev);
    prev = v;
  }
  tv += prev;
  const double scale = tv > tv_cap ? tv_cap / tv : 1.0;
  std::vector<Sample> out;
  for (std::size_t i = 0; i < vs.size(); ++i) out.push_back({xs[i], vs[i] * scale});
  out.push_back({xs.back(), 0.0});
  return out;
}

FluxSpec random_blend_flux(std::uint64_t seed, double max_value) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(0.0, 1.0);
  std::uniform_int_distribution<int> freq(1, 3);
  const double a = coef(rng);
  const double b = coef(rng);
  const double c = coef(rng);
  const double k = 2.0 * std::numbers::pi * freq(rng);
  FluxSpec spec;
  spec.name = "blend";
  spec.eval = [a, b, c, k](double u) { return a * u * u / 2.0 + b * u * u * u / 3.0 + c * std::sin(k * u) / (k * k); };
  spec.second_derivative_hint = a + 2.0 * b * max_value + c;
  spec.max_value = max_value;
  return spec;
}

}  // namespace frontwave

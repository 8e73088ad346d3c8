#include "frontwave/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace frontwave {

SpacelikeCurve::SpacelikeCurve(std::vector<std::pair<double, double>> vertices, double lambda)
    : vertices_(std::move(vertices)) {
  if (vertices_.empty()) throw std::invalid_argument("spacelike curve needs a vertex");
  const double bound = lambda > 0.0 ? 1.0 / lambda : kInfinity;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (!(vertices_[i].second >= 0.0) || !std::isfinite(vertices_[i].second)) {
      throw std::invalid_argument("spacelike curve must have finite t >= 0");
    }
    if (i == 0) continue;
    const double dx = vertices_[i].first - vertices_[i - 1].first;
    if (!(dx > 0.0)) throw std::invalid_argument("spacelike curve vertices must increase in x");
    if (std::abs(vertices_[i].second - vertices_[i - 1].second) > bound * dx * (1.0 + 1e-12)) {
      throw std::invalid_argument("spacelike curve slope exceeds 1/lambda");
    }
  }
}

SpacelikeCurve SpacelikeCurve::flat(double t) {
  SpacelikeCurve c;
  if (!(t >= 0.0)) throw std::invalid_argument("spacelike curve must have t >= 0");
  c.vertices_ = {{0.0, t}};
  return c;
}

double SpacelikeCurve::at(double x) const {
  if (x <= vertices_.front().first) return vertices_.front().second;
  if (x >= vertices_.back().first) return vertices_.back().second;
  auto it = std::upper_bound(vertices_.begin(), vertices_.end(), x,
                             [](double v, const std::pair<double, double>& p) { return v < p.first; });
  const auto& [x1, t1] = *it;
  const auto& [x0, t0] = *std::prev(it);
  return t0 + (t1 - t0) * (x - x0) / (x1 - x0);
}

double SpacelikeCurve::max_time() const {
  double m = 0.0;
  for (const auto& v : vertices_) m = std::max(m, v.second);
  return m;
}

bool curve_below(const SpacelikeCurve& lower, const SpacelikeCurve& upper) {
  for (const auto& v : lower.vertices()) {
    if (lower.at(v.first) > upper.at(v.first)) return false;
  }
  for (const auto& v : upper.vertices()) {
    if (lower.at(v.first) > upper.at(v.first)) return false;
  }
  return true;
}

namespace {

// Smallest t in [lo, hi] with g(t) > 0 for nondecreasing g, g(lo) <= 0 < g(hi).
template <class G>
double bisect(G&& g, double lo, double hi) {
  for (int i = 0; i < 200 && hi - lo > 1e-15 * (1.0 + std::abs(hi)); ++i) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > 0.0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

struct Crossing {
  double x;
  WaveId first;
  const FrontTrack* track;
};

std::vector<Crossing> track_crossings(const Timeline& timeline, const SpacelikeCurve& tau) {
  std::vector<Crossing> out;
  const double horizon = tau.max_time() + 1.0;
  for (const auto& tr : timeline.tracks()) {
    auto g = [&](double t) { return t - tau.at(tr.position(t)); };
    if (g(tr.t_start) > 0.0) continue;
    const double t1 = std::min(tr.t_end, horizon);
    if (std::isfinite(tr.t_end) && g(t1) <= 0.0) continue;
    const double root = g(tr.t_start) == 0.0 ? tr.t_start : bisect(g, tr.t_start, t1);
    const WaveId first = tr.waves.empty() ? 0 : *std::min_element(tr.waves.begin(), tr.waves.end());
    out.push_back({tr.position(root), first, &tr});
  }
  std::sort(out.begin(), out.end(), [](const Crossing& a, const Crossing& b) {
    return a.x < b.x || (a.x == b.x && a.first < b.first);
  });
  // Fronts meeting the curve at one point are ordered by the waves they carry.
  std::size_t i = 0;
  while (i < out.size()) {
    std::size_t j = i + 1;
    while (j < out.size() && out[j].x - out[i].x <= tolerance_x(out[i].x)) ++j;
    std::sort(out.begin() + static_cast<std::ptrdiff_t>(i), out.begin() + static_cast<std::ptrdiff_t>(j),
              [](const Crossing& a, const Crossing& b) { return a.first < b.first; });
    i = j;
  }
  return out;
}

// Values of u along the curve, resolved by wave, from just before s to just after s'.
struct CurveSide {
  std::int64_t tv = 0;
  std::vector<GridIndex> values;
};

std::size_t carrier(const std::vector<Crossing>& crossings, WaveId s) {
  for (std::size_t i = 0; i < crossings.size(); ++i) {
    const auto& w = crossings[i].track->waves;
    if (std::find(w.begin(), w.end(), s) != w.end()) return i;
  }
  throw std::logic_error("wave " + std::to_string(s) + " does not cross the curve");
}

CurveSide side_of(const WaveAtlas& atlas, const std::vector<Crossing>& crossings, WaveId s, WaveId sp) {
  const std::size_t is = carrier(crossings, s);
  const std::size_t isp = carrier(crossings, sp);
  if (is > isp) throw std::logic_error("waves cross the curve out of order");
  const GridIndex after_s = atlas.value(s);
  const GridIndex before_sp = atlas.value(sp) - atlas.record(sp).sign;
  CurveSide side;
  side.tv = 2;
  side.values.push_back(after_s - atlas.record(s).sign);
  side.values.push_back(after_s);
  if (is == isp) {
    side.tv += std::abs(before_sp - after_s);
  } else {
    GridIndex v = crossings[is].track->wave.right_state();
    side.tv += std::abs(v - after_s);
    side.values.push_back(v);
    for (std::size_t i = is + 1; i < isp; ++i) {
      const auto& w = crossings[i].track->wave;
      side.tv += std::abs(w.right_state() - w.left_state());
      v = w.right_state();
      side.values.push_back(v);
    }
    side.tv += std::abs(before_sp - v);
  }
  side.values.push_back(before_sp);
  side.values.push_back(atlas.value(sp));
  return side;
}

void check_configuration(const WaveAtlas& atlas, const SpacelikeCurve& tau, const SpacelikeCurve& tau_prime,
                         WaveId s, WaveId sp) {
  if (!curve_below(tau_prime, tau)) throw std::invalid_argument("spacelike curves are not ordered");
  if (!(s >= 1 && s < sp && sp <= atlas.total_s())) throw std::invalid_argument("need 1 <= s < s' <= total_s");
  for (WaveId id : {s, sp}) {
    if (!(crossing_time(atlas, id, tau_prime) < atlas.record(id).death_time)) {
      throw std::invalid_argument("wave " + std::to_string(id) + " is not alive on tau_prime");
    }
  }
}

std::int64_t canceled_between(const WaveAtlas& atlas, const SpacelikeCurve& tau, const SpacelikeCurve& tau_prime,
                              WaveId s, WaveId sp) {
  std::int64_t n = 0;
  for (WaveId k = s + 1; k < sp; ++k) {
    const double death = atlas.record(k).death_time;
    if (!std::isfinite(death)) continue;
    if (crossing_time(atlas, k, tau_prime) < death && death <= crossing_time(atlas, k, tau)) ++n;
  }
  return n;
}

}  // namespace

double crossing_time(const WaveAtlas& atlas, WaveId s, const SpacelikeCurve& tau) {
  auto g = [&](double t) { return t - tau.at(atlas.position(s, t)); };
  if (g(0.0) >= 0.0) return 0.0;
  return bisect(g, 0.0, tau.max_time() + 1.0);
}

std::vector<std::pair<double, GridIndex>> curve_crossings(const Timeline& timeline, const SpacelikeCurve& tau) {
  std::vector<std::pair<double, GridIndex>> out;
  for (const auto& c : track_crossings(timeline, tau)) {
    out.emplace_back(c.x, c.track->wave.right_state() - c.track->wave.left_state());
  }
  return out;
}

SpacelikeBalance spacelike_tv_balance(const WaveAtlas& atlas, const SpacelikeCurve& tau,
                                      const SpacelikeCurve& tau_prime, WaveId s, WaveId s_prime) {
  check_configuration(atlas, tau, tau_prime, s, s_prime);
  auto lhs = [&](const SpacelikeCurve& c) { return side_of(atlas, track_crossings(atlas.timeline(), c), s, s_prime).tv; };
  SpacelikeBalance b;
  b.lhs_tau = lhs(tau);
  b.lhs_tau_prime = lhs(tau_prime);
  b.canceled = canceled_between(atlas, tau, tau_prime, s, s_prime);
  return b;
}

LinfBalance spacelike_linf_balance(const WaveAtlas& atlas, const SpacelikeCurve& tau,
                                   const SpacelikeCurve& tau_prime, WaveId s, WaveId s_prime, double u_bar) {
  check_configuration(atlas, tau, tau_prime, s, s_prime);
  const double h = atlas.cell();
  auto sup = [&](const SpacelikeCurve& c) {
    double m = 0.0;
    for (GridIndex v : side_of(atlas, track_crossings(atlas.timeline(), c), s, s_prime).values) {
      m = std::max(m, std::abs(static_cast<double>(v) * h - u_bar));
    }
    return m;
  };
  LinfBalance b;
  b.later = sup(tau);
  b.earlier = sup(tau_prime);
  b.canceled = static_cast<double>(canceled_between(atlas, tau, tau_prime, s, s_prime)) * h;
  return b;
}

DependenceCheck domain_of_dependence(const WaveAtlas& atlas, double a, double b, double t_bar, double t) {
  const auto& tl = atlas.timeline();
  const double lambda = lipschitz_bound(tl.flux());
  if (!(a < b) || !(t_bar <= t)) throw std::invalid_argument("need a < b and t_bar <= t");
  const double lo = a + lambda * (t - t_bar);
  const double hi = b - lambda * (t - t_bar);
  if (lo > hi) throw std::invalid_argument("time beyond the apex of the dependence triangle");
  DependenceCheck d;
  d.tv_before = total_variation_on(sample_solution(tl, t_bar), a, b, false);
  d.tv_after = total_variation_on(sample_solution(tl, t), lo, hi, true);
  const auto evs = tl.events();
  for (std::size_t e = 0; e < evs.size(); ++e) {
    const auto& ev = evs[e];
    if (!(ev.t > t_bar && ev.t <= t)) continue;
    if (ev.x < a + lambda * (ev.t - t_bar) || ev.x > b - lambda * (ev.t - t_bar)) continue;
    d.canceled += ev.tv_drop;
    for (const auto& [id, sp] : atlas.event_waves()[e].survivors) {
      d.interaction += std::abs(sp.second - sp.first) * atlas.cell();
    }
  }
  return d;
}

std::vector<JumpPoint> jump_set(const Timeline& timeline, GridIndex eps_jump,
                                const std::vector<std::pair<double, double>>& theta) {
  if (eps_jump < 1) throw std::invalid_argument("eps_jump must be >= 1 unit");
  std::vector<JumpPoint> out;
  for (const auto& tr : timeline.tracks()) {
    if (tr.wave.strength() < eps_jump || tr.t_start > timeline.t_max()) continue;
    const double t_end = std::min(tr.t_end, timeline.t_max());
    for (double t : {tr.t_start, 0.5 * (tr.t_start + t_end), t_end}) {
      JumpPoint p{t, tr.position(t), tr.wave.left_state(), tr.wave.right_state(), tr.wave.speed, false};
      for (const auto& [at, ax] : theta) {
        if (std::abs(at - t) <= tolerance_t(t) && std::abs(ax - p.x) <= tolerance_x(ax)) p.in_theta = true;
      }
      out.push_back(p);
    }
  }
  return out;
}

std::vector<std::pair<double, double>> theta_atoms(const PointMeasure& canc, const PointMeasure& inter,
                                                   double threshold) {
  if (!(threshold > 0.0)) throw std::invalid_argument("theta threshold must be positive");
  std::vector<std::pair<double, double>> out;
  for (const auto* m : {&canc, &inter}) {
    for (const auto& a : m->atoms) {
      if (a.mass < threshold) continue;
      const bool dup = std::any_of(out.begin(), out.end(), [&](const auto& p) {
        return std::abs(p.first - a.t) <= tolerance_t(a.t) && std::abs(p.second - a.x) <= tolerance_x(a.x);
      });
      if (!dup) out.emplace_back(a.t, a.x);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

CheckReport theta_on_fronts(const Timeline& timeline, const std::vector<std::pair<double, double>>& points) {
  CheckReport rep("theta_on_fronts");
  for (const auto& [t, x] : points) {
    const bool on = std::any_of(timeline.tracks().begin(), timeline.tracks().end(), [&](const FrontTrack& tr) {
      return tr.t_start <= t && t <= tr.t_end && tr.wave.strength() >= 1 &&
             std::abs(tr.position(t) - x) <= tolerance_x(x);
    });
    rep.expect(on, "atom at (" + std::to_string(t) + ", " + std::to_string(x) + ") is off every front");
  }
  return rep;
}

namespace {

double speed_before(const WaveAtlas& atlas, WaveId id, double t) {
  const auto& segs = atlas.record(id).segments;
  const WaveSegment* best = &segs.front();
  for (const auto& s : segs) {
    if (s.t_start < t) best = &s;
  }
  return atlas.timeline().track(best->track).wave.speed;
}

std::vector<std::pair<double, double>> wave_polyline(const WaveAtlas& atlas, WaveId id, double t0, double t1) {
  std::vector<std::pair<double, double>> pts{{t0, atlas.position(id, t0)}};
  for (const auto& s : atlas.record(id).segments) {
    if (s.t_start > t0 && s.t_start < t1) pts.emplace_back(s.t_start, atlas.position(id, s.t_start));
  }
  if (t1 > t0) pts.emplace_back(t1, atlas.position(id, t1));
  return pts;
}

double polyline_at(const std::vector<std::pair<double, double>>& pl, double t, bool& defined) {
  defined = !pl.empty() && t >= pl.front().first && t <= pl.back().first;
  if (!defined) return 0.0;
  for (std::size_t i = 0; i + 1 < pl.size(); ++i) {
    if (t <= pl[i + 1].first) {
      const auto [t0, x0] = pl[i];
      const auto [t1, x1] = pl[i + 1];
      return t1 > t0 ? x0 + (x1 - x0) * (t - t0) / (t1 - t0) : x1;
    }
  }
  return pl.back().second;
}

constexpr int kBallSamples = 64;

// Calls visit(t, x, slice) on a kBallSamples^2 grid inside the ball.
template <class V>
void sample_ball(const Timeline& tl, double t_bar, double x_bar, double rho, V&& visit) {
  for (int i = 0; i < kBallSamples; ++i) {
    const double t = t_bar - rho + (2.0 * rho) * (i + 0.5) / kBallSamples;
    if (t < 0.0 || t > tl.t_max()) continue;
    const auto slice = sample_solution(tl, t);
    for (int k = 0; k < kBallSamples; ++k) {
      const double x = x_bar - rho + (2.0 * rho) * (k + 0.5) / kBallSamples;
      if ((t - t_bar) * (t - t_bar) + (x - x_bar) * (x - x_bar) > rho * rho) continue;
      visit(t, x, slice);
    }
  }
}

}  // namespace

GammaPm gamma_pm(const WaveAtlas& atlas, double t_bar, double x_bar, double rho0) {
  const auto& tl = atlas.timeline();
  const double h = atlas.cell();
  GammaPm g;
  std::vector<WaveId> at_point;
  for (const auto& r : atlas.records()) {
    if (r.death_time >= t_bar && std::abs(atlas.position(r.id, t_bar) - x_bar) <= tolerance_x(x_bar)) {
      at_point.push_back(r.id);
    }
  }
  const auto here = sample_solution(tl, std::min(t_bar, tl.t_max()));
  const double u_left = static_cast<double>(here.left_limit(x_bar)) * h;
  const double u_right = static_cast<double>(here.at(x_bar)) * h;
  if (at_point.empty()) {
    g.degenerate = true;
    const GridIndex k = std::min(here.at(x_bar), tl.flux().max_index() - 1);
    const double c = tl.flux().slope(k);
    g.slope_minus_in = g.slope_plus_in = g.slope_minus_out = g.slope_plus_out = c;
    g.minus = g.plus = {{0.0, x_bar - c * t_bar}, {tl.t_max(), x_bar + c * (tl.t_max() - t_bar)}};
    g.continues = true;
  } else {
    g.members = at_point;
    if (g.members.size() >= 3) g.members = std::vector<WaveId>(at_point.begin() + 1, at_point.end() - 1);
    const WaveId lo = g.members.front();
    const WaveId hi = g.members.back();
    g.slope_minus_in = speed_before(atlas, lo, t_bar);
    g.slope_plus_in = speed_before(atlas, hi, t_bar);
    g.minus = wave_polyline(atlas, lo, 0.0, t_bar);
    g.plus = wave_polyline(atlas, hi, 0.0, t_bar);
    auto survivors = [&](const std::vector<WaveId>& ids) {
      std::vector<WaveId> out;
      for (WaveId id : ids) {
        if (atlas.record(id).death_time > t_bar) out.push_back(id);
      }
      return out;
    };
    auto alive = survivors(g.members);
    if (alive.empty()) alive = survivors(at_point);
    if (!alive.empty() && t_bar < tl.t_max()) {
      g.continues = true;
      const WaveId a = alive.front();
      const WaveId b = alive.back();
      g.slope_minus_out = atlas.speed(a, t_bar);
      g.slope_plus_out = atlas.speed(b, t_bar);
      auto tail_a = wave_polyline(atlas, a, t_bar, std::min(tl.t_max(), atlas.record(a).death_time));
      auto tail_b = wave_polyline(atlas, b, t_bar, std::min(tl.t_max(), atlas.record(b).death_time));
      g.minus.insert(g.minus.end(), tail_a.begin() + 1, tail_a.end());
      g.plus.insert(g.plus.end(), tail_b.begin() + 1, tail_b.end());
    }
  }

  double rho = rho0;
  for (int level = 0; level <= 4; ++level, rho *= 0.5) {
    ConeSample cs{rho, 0.0, 0.0};
    sample_ball(tl, t_bar, x_bar, rho, [&](double t, double x, const PiecewiseConstantFn& slice) {
      bool dm = false;
      bool dp = false;
      const double xm = polyline_at(g.minus, t, dm);
      const double xp = polyline_at(g.plus, t, dp);
      const double u = static_cast<double>(slice.at(x)) * h;
      if (dm && x < xm) cs.dev_left = std::max(cs.dev_left, std::abs(u - u_left));
      if (dp && x > xp) cs.dev_right = std::max(cs.dev_right, std::abs(u - u_right));
    });
    g.deviations.push_back(cs);
  }
  return g;
}

std::pair<double, double> cone_continuity_check(const Timeline& timeline, double t_bar, double x_bar, double p,
                                                double delta, double rho) {
  if (!(delta > 0.0) || !(rho > 0.0)) throw std::invalid_argument("delta and rho must be positive");
  const double h = timeline.flux().cell();
  const auto here = sample_solution(timeline, std::min(t_bar, timeline.t_max()));
  const double u_left = static_cast<double>(here.left_limit(x_bar)) * h;
  const double u_right = static_cast<double>(here.at(x_bar)) * h;
  double dev_left = 0.0;
  double dev_right = 0.0;
  sample_ball(timeline, t_bar, x_bar, rho, [&](double t, double x, const PiecewiseConstantFn& slice) {
    const double axis = x_bar + p * (t - t_bar);
    const double gap = delta * std::abs(t - t_bar);
    const double u = static_cast<double>(slice.at(x)) * h;
    if (x < axis - gap) dev_left = std::max(dev_left, std::abs(u - u_left));
    if (x > axis + gap) dev_right = std::max(dev_right, std::abs(u - u_right));
  });
  return {dev_left, dev_right};
}

}  // namespace frontwave

#include "frontwave/waverep.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace frontwave {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// Pairs s < s' of alive waves with s' <= hi[s] have met.
double glimm_area(const std::vector<char>& alive, const std::vector<WaveId>& hi, double h) {
  const std::size_t n = alive.size();
  std::vector<std::int64_t> prefix(n, 0);  // prefix[k] = alive ids <= k, index 0 unused
  std::int64_t acc = 0;
  for (std::size_t k = 1; k < n; ++k) {
    acc += alive[k];
    prefix[k] = acc;
  }
  const std::int64_t total_alive = acc;
  std::int64_t pairs = 0;
  std::int64_t met = 0;
  for (std::size_t k = 1; k < n; ++k) {
    if (!alive[k]) continue;
    pairs += total_alive - prefix[k];
    met += prefix[static_cast<std::size_t>(hi[k])] - prefix[k];
  }
  return static_cast<double>(pairs - met) * h * h;
}

}  // namespace

double PointMeasure::total() const {
  double s = 0.0;
  for (const auto& a : atoms) s += a.mass;
  return s;
}

WaveAtlas::WaveAtlas(const Timeline& timeline, std::vector<WaveRecord> records, std::vector<EventWaves> events,
                     double q_initial)
    : timeline_(&timeline), records_(std::move(records)), events_(std::move(events)), q_initial_(q_initial) {
  prefix_value_.assign(records_.size() + 1, 0);
  for (std::size_t i = 0; i < records_.size(); ++i) prefix_value_[i + 1] = prefix_value_[i] + records_[i].sign;
}

double WaveAtlas::position(WaveId id, double t) const {
  const auto& r = record(id);
  const double te = std::min(t, r.death_time);
  auto it = std::upper_bound(r.segments.begin(), r.segments.end(), te,
                             [](double v, const WaveSegment& s) { return v < s.t_start; });
  if (it == r.segments.begin()) throw std::out_of_range("time before wave birth");
  if (t >= r.death_time) it = r.segments.end();
  return timeline_->track(std::prev(it)->track).position(te);
}

double WaveAtlas::speed(WaveId id, double t) const {
  const auto& r = record(id);
  if (t >= r.death_time) return 0.0;
  auto it = std::upper_bound(r.segments.begin(), r.segments.end(), t,
                             [](double v, const WaveSegment& s) { return v < s.t_start; });
  if (it == r.segments.begin()) throw std::out_of_range("time before wave birth");
  return timeline_->track(std::prev(it)->track).wave.speed;
}

GridIndex WaveAtlas::value(WaveId id) const { return prefix_value_.at(static_cast<std::size_t>(id)); }

std::vector<std::pair<double, double>> WaveAtlas::speed_history(WaveId id) const {
  std::vector<std::pair<double, double>> out;
  for (const auto& seg : record(id).segments) out.emplace_back(seg.t_start, timeline_->track(seg.track).wave.speed);
  return out;
}

double WaveAtlas::q_at(double t) const {
  const auto evs = timeline_->events();
  auto it = std::upper_bound(evs.begin(), evs.end(), t, [](double v, const CollisionEvent& e) { return v < e.t; });
  if (it == evs.begin()) return q_initial_;
  return events_[static_cast<std::size_t>(it - evs.begin()) - 1].q_after;
}

WaveAtlas build_atlas(const Timeline& timeline, const PiecewiseConstantFn& u0) {
  if (!(timeline.initial() == u0)) throw std::invalid_argument("timeline was not produced from this datum");
  const std::int64_t n = timeline.total_waves();
  const double h = timeline.flux().cell();
  std::vector<WaveRecord> records(static_cast<std::size_t>(n));
  std::vector<char> alive(static_cast<std::size_t>(n) + 1, 1);
  alive[0] = 0;
  std::vector<WaveId> lo(static_cast<std::size_t>(n) + 1, 0);
  std::vector<WaveId> hi(static_cast<std::size_t>(n) + 1, 0);

  std::map<double, std::pair<WaveId, WaveId>> jump_range;
  for (const auto& tr : timeline.tracks()) {
    if (tr.birth_event != -1) continue;
    auto& range = jump_range.try_emplace(tr.x_start, std::pair<WaveId, WaveId>{n + 1, 0}).first->second;
    for (std::size_t i = 0; i < tr.waves.size(); ++i) {
      const WaveId id = tr.waves[i];
      if (id < 1 || id > n) throw std::logic_error("wave id out of range");
      auto& r = records[static_cast<std::size_t>(id - 1)];
      r.id = id;
      r.sign = tr.wave.sign;
      r.band = tr.wave.lo + static_cast<GridIndex>(i);
      r.birth_x = tr.x_start;
      r.segments.push_back({0.0, tr.id});
      range.first = std::min(range.first, id);
      range.second = std::max(range.second, id);
    }
  }
  for (const auto& tr : timeline.tracks()) {
    if (tr.birth_event != -1) continue;
    const auto range = jump_range.at(tr.x_start);
    for (WaveId id : tr.waves) {
      lo[static_cast<std::size_t>(id)] = range.first;
      hi[static_cast<std::size_t>(id)] = range.second;
    }
  }

  const double q0 = glimm_area(alive, hi, h);
  double q = q0;
  std::vector<EventWaves> per_event;
  per_event.reserve(timeline.events().size());
  for (std::size_t e = 0; e < timeline.events().size(); ++e) {
    const auto& ev = timeline.events()[e];
    EventWaves ew;
    ew.q_before = q;
    std::map<WaveId, double> before;
    for (FrontId fid : ev.incoming) {
      const auto& tr = timeline.track(fid);
      for (WaveId id : tr.waves) {
        ew.members.push_back(id);
        before[id] = tr.wave.speed;
      }
    }
    std::sort(ew.members.begin(), ew.members.end());
    for (WaveId id : ew.members) {
      ew.interacted_before.emplace_back(lo[static_cast<std::size_t>(id)], hi[static_cast<std::size_t>(id)]);
    }
    const WaveId new_lo = ew.members.empty() ? n + 1 : ew.members.front();
    const WaveId new_hi = ew.members.empty() ? 0 : ew.members.back();
    ew.killed = ev.killed;
    std::sort(ew.killed.begin(), ew.killed.end());
    for (WaveId id : ew.killed) {
      auto& r = records[static_cast<std::size_t>(id - 1)];
      r.death_time = ev.t;
      r.death_event = static_cast<std::ptrdiff_t>(e);
      alive[static_cast<std::size_t>(id)] = 0;
    }
    for (WaveId id : ew.members) {
      lo[static_cast<std::size_t>(id)] = std::min(lo[static_cast<std::size_t>(id)], new_lo);
      hi[static_cast<std::size_t>(id)] = std::max(hi[static_cast<std::size_t>(id)], new_hi);
    }
    for (FrontId fid : ev.outgoing_ids) {
      const auto& tr = timeline.track(fid);
      for (WaveId id : tr.waves) {
        records[static_cast<std::size_t>(id - 1)].segments.push_back({ev.t, fid});
        ew.survivors.push_back({id, {before.at(id), tr.wave.speed}});
      }
    }
    std::sort(ew.survivors.begin(), ew.survivors.end());
    q = glimm_area(alive, hi, h);
    ew.q_after = q;
    per_event.push_back(std::move(ew));
  }
  return WaveAtlas(timeline, std::move(records), std::move(per_event), q0);
}

CheckReport atlas_invariants(const WaveAtlas& atlas) {
  CheckReport rep{"atlas_invariants"};
  const auto& tl = atlas.timeline();
  const auto& flux = tl.flux();
  for (const auto& r : atlas.records()) {
    const auto idx = static_cast<std::int64_t>(&r - atlas.records().data()) + 1;
    rep.expect(r.id == idx && !r.segments.empty(), "s-tiling broken at unit " + std::to_string(idx));
    const GridIndex u = atlas.value(r.id);
    const GridIndex expected_band = r.sign > 0 ? u - 1 : u;
    rep.expect(r.band == expected_band && u >= 0,
               "value band of unit " + std::to_string(r.id) + " is " + std::to_string(r.band) + ", u(s) gives " +
                   std::to_string(expected_band));
    for (const auto& seg : r.segments) {
      const auto& tr = tl.track(seg.track);
      const bool carries = r.band >= tr.wave.lo && r.band < tr.wave.hi &&
                           tr.waves[static_cast<std::size_t>(r.band - tr.wave.lo)] == r.id && tr.wave.sign == r.sign;
      rep.expect(carries, "unit " + std::to_string(r.id) + " not carried by track " + std::to_string(seg.track));
    }
    if (r.death_event >= 0) {
      const auto& ev = tl.events()[static_cast<std::size_t>(r.death_event)];
      rep.expect(ev.kind == CollisionKind::cancellation && ev.t == r.death_time,
                 "unit " + std::to_string(r.id) + " dies outside a cancellation");
    }
  }
  for (std::size_t e = 0; e < tl.events().size(); ++e) {
    const auto& ev = tl.events()[e];
    const auto& ew = atlas.event_waves()[e];
    rep.expect(static_cast<std::int64_t>(ew.killed.size()) == ev.tv_drop,
               "event " + std::to_string(e) + ": killed units differ from tv_drop");
    std::int64_t signed_deaths = 0;
    for (WaveId id : ew.killed) signed_deaths += atlas.record(id).sign;
    rep.expect(signed_deaths == 0, "event " + std::to_string(e) + ": signed death balance " +
                                       std::to_string(signed_deaths));
    rep.expect((ev.kind == CollisionKind::cancellation) == (ev.tv_drop >= 2) &&
                   (ev.kind == CollisionKind::cancellation || ev.tv_drop == 0),
               "event " + std::to_string(e) + ": kind and tv_drop disagree");
    for (FrontId fid : ev.incoming) {
      const auto& tr = tl.track(fid);
      double carried = 0.0;
      for (WaveId id : tr.waves) carried += tr.wave.speed * atlas.record(id).sign * flux.cell();
      const double jump = flux.value(tr.wave.right_state()) - flux.value(tr.wave.left_state());
      rep.expect(std::abs(carried - jump) <= 1e-12 * (1.0 + std::abs(jump)),
                 "event " + std::to_string(e) + ": flux balance " + fmt(carried) + " vs " + fmt(jump));
    }
  }
  return rep;
}

CheckReport pushforward_check(const WaveAtlas& atlas, double t) {
  CheckReport rep{"pushforward"};
  const auto slice = sample_solution(atlas.timeline(), t);
  struct Cluster {
    double x;
    std::int64_t signed_mass;
    std::int64_t abs_mass;
  };
  std::vector<Cluster> clusters;
  for (const auto& r : atlas.records()) {
    if (!r.alive_at(t)) continue;
    const double x = atlas.position(r.id, t);
    if (!clusters.empty() && std::abs(x - clusters.back().x) <= tolerance_x(clusters.back().x)) {
      clusters.back().signed_mass += r.sign;
      clusters.back().abs_mass += 1;
    } else {
      clusters.push_back({x, r.sign, 1});
    }
  }
  const auto bps = slice.breakpoints();
  rep.expect(clusters.size() == bps.size(), "t=" + fmt(t) + ": " + std::to_string(clusters.size()) +
                                                " wave clusters vs " + std::to_string(bps.size()) + " jumps");
  for (std::size_t i = 0; i < std::min(clusters.size(), bps.size()); ++i) {
    const auto& c = clusters[i];
    const GridIndex jump = slice.jump(i);
    const bool same = std::abs(c.x - bps[i]) <= tolerance_x(bps[i]) && c.signed_mass == jump &&
                      c.abs_mass == (jump < 0 ? -jump : jump);
    rep.expect(same, "t=" + fmt(t) + " x=" + fmt(bps[i]) + ": jump " + std::to_string(jump) + " vs waves " +
                         std::to_string(c.signed_mass) + "/" + std::to_string(c.abs_mass));
  }
  return rep;
}

double speed_tv_integral(const WaveAtlas& atlas) {
  double acc = 0.0;
  for (const auto& r : atlas.records()) {
    double prev = atlas.timeline().track(r.segments.front().track).wave.speed;
    double tv = 0.0;
    for (const auto& seg : r.segments) {
      const double s = atlas.timeline().track(seg.track).wave.speed;
      tv += std::abs(s - prev);
      prev = s;
    }
    acc += tv * atlas.cell();
  }
  return acc;
}

double glimm_functional(const WaveAtlas& atlas, double t) { return atlas.q_at(t); }

EventBoundsReport per_event_bounds(const WaveAtlas& atlas, double d2) {
  EventBoundsReport rep;
  const auto& tl = atlas.timeline();
  const auto& flux = tl.flux();
  const double h = atlas.cell();
  std::int64_t tv_units = tl.total_waves();
  for (std::size_t e = 0; e < tl.events().size(); ++e) {
    const auto& ev = tl.events()[e];
    const auto& ew = atlas.event_waves()[e];
    EventBound b;
    b.event = e;
    b.kind = ev.kind;
    for (const auto& [id, sp] : ew.survivors) b.lhs += std::abs(sp.second - sp.first) * h;
    if (ev.kind == CollisionKind::cancellation) {
      b.rhs = d2 * static_cast<double>(tv_units) * h * static_cast<double>(ev.tv_drop) * h;
      rep.cancellation_part += b.lhs;
      tv_units -= ev.tv_drop;
    } else {
      b.rhs = 2.0 * d2 * (ew.q_before - ew.q_after);
      rep.interaction_part += b.lhs;
    }
    b.ok = b.lhs <= b.rhs + 1e-12 * (1.0 + std::abs(b.rhs));
    rep.bound_check.expect(b.ok, "event " + std::to_string(e) + " at t=" + fmt(ev.t) + ": " + fmt(b.lhs) +
                                     " > " + fmt(b.rhs));
    rep.bounds.push_back(b);

    if (ev.kind != CollisionKind::interaction || ev.incoming.size() != 2) continue;
    const auto& left = tl.track(ev.incoming[0]);
    const auto& right = tl.track(ev.incoming[1]);
    const WaveId first_right = *std::min_element(right.waves.begin(), right.waves.end());
    const WaveId last_left = *std::max_element(left.waves.begin(), left.waves.end());
    GridIndex band_min = flux.max_index();
    GridIndex band_max = -1;
    for (std::size_t i = 0; i < ew.members.size(); ++i) {
      const WaveId id = ew.members[i];
      const auto [lo, hi] = ew.interacted_before[i];
      const bool in_left = id <= last_left;
      const bool met_other = in_left ? hi >= first_right : lo <= last_left;
      if (!met_other) continue;
      band_min = std::min(band_min, atlas.record(id).band);
      band_max = std::max(band_max, atlas.record(id).band);
    }
    if (band_max < 0) {
      rep.key_fact.pass();
      continue;
    }
    const GridIndex meet = left.wave.right_state();
    const GridIndex a = band_min;
    const GridIndex bnd = band_max + 1;
    if (meet <= a || meet >= bnd) {
      rep.key_fact.fail("event " + std::to_string(e) + ": meeting value outside interacted range");
      continue;
    }
    const auto env = left.wave.sign > 0 ? lower_convex_envelope(flux, a, bnd) : upper_concave_envelope(flux, a, bnd);
    const double fv = flux.value(meet);
    const double ev_env = env.value_at(flux, meet);
    rep.key_fact.expect(std::abs(fv - ev_env) <= 1e-12 * (1.0 + std::abs(fv)),
                        "event " + std::to_string(e) + ": f(l0)=" + fmt(fv) + " envelope " + fmt(ev_env));
  }
  return rep;
}

PointMeasure cancellation_measure(const WaveAtlas& atlas) {
  PointMeasure m;
  for (const auto& ev : atlas.timeline().events()) {
    if (ev.tv_drop > 0) m.atoms.push_back({ev.t, ev.x, static_cast<double>(ev.tv_drop) * atlas.cell()});
  }
  return m;
}

PointMeasure interaction_measure(const WaveAtlas& atlas) {
  PointMeasure m;
  const auto evs = atlas.timeline().events();
  for (std::size_t e = 0; e < evs.size(); ++e) {
    double mass = 0.0;
    for (const auto& [id, sp] : atlas.event_waves()[e].survivors) mass += std::abs(sp.second - sp.first) * atlas.cell();
    if (mass > 0.0) m.atoms.push_back({evs[e].t, evs[e].x, mass});
  }
  return m;
}

CheckReport volpert_check(const WaveAtlas& atlas, std::size_t max_slices) {
  CheckReport rep{"volpert"};
  const auto& tl = atlas.timeline();
  const auto& flux = tl.flux();
  for (const auto& r : atlas.records()) {
    for (const auto& seg : r.segments) {
      const auto& tr = tl.track(seg.track);
      const double chord = flux.chord_slope(tr.wave.lo, tr.wave.hi);
      rep.expect(std::abs(tr.wave.speed - chord) <= 1e-12,
                 "unit " + std::to_string(r.id) + " on track " + std::to_string(tr.id) + ": speed " +
                     fmt(tr.wave.speed) + " vs chord " + fmt(chord));
    }
  }

  std::vector<double> times{0.0};
  for (const auto& ev : tl.events()) {
    if (ev.t > times.back()) times.push_back(ev.t);
  }
  std::vector<double> mids;
  for (std::size_t i = 0; i + 1 < times.size(); ++i) mids.push_back(0.5 * (times[i] + times[i + 1]));
  if (times.back() < tl.t_max()) mids.push_back(0.5 * (times.back() + tl.t_max()));
  const std::size_t stride = mids.size() > max_slices ? (mids.size() + max_slices - 1) / max_slices : 1;
  for (std::size_t i = 0; i < mids.size(); i += stride) {
    const double t = mids[i];
    const auto slice = sample_solution(tl, t);
    for (const auto& r : atlas.records()) {
      if (!r.alive_at(t)) continue;
      const double x = atlas.position(r.id, t);
      const auto bp = slice.breakpoint_near(x);
      if (bp < 0) {
        rep.fail("unit " + std::to_string(r.id) + " at t=" + fmt(t) + " not on a jump");
        continue;
      }
      const GridIndex ul = slice.values()[static_cast<std::size_t>(bp)];
      const GridIndex ur = slice.values()[static_cast<std::size_t>(bp) + 1];
      const double chord = flux.chord_slope(ul, ur);
      const double sigma = atlas.speed(r.id, t);
      rep.expect(std::abs(sigma - chord) <= 1e-12, "unit " + std::to_string(r.id) + " at t=" + fmt(t) +
                                                       ": sigma " + fmt(sigma) + " vs chord " + fmt(chord));
    }
  }
  return rep;
}

double speed_spatial_tv(const WaveAtlas& atlas, double t) {
  double tv = 0.0;
  bool first = true;
  double prev = 0.0;
  for (const auto& r : atlas.records()) {
    if (!r.alive_at(t)) continue;
    const double s = atlas.speed(r.id, t);
    if (!first) tv += std::abs(s - prev);
    prev = s;
    first = false;
  }
  return tv;
}

}  // namespace frontwave

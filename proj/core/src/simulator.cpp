#include "frontwave/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace frontwave {

Timeline::Timeline(PiecewiseAffineFlux flux, PiecewiseConstantFn initial, double t_max,
                   std::vector<FrontTrack> tracks, std::vector<CollisionEvent> events, std::int64_t total_waves,
                   RunDiagnostics diagnostics)
    : flux_(std::move(flux)),
      initial_(std::move(initial)),
      t_max_(t_max),
      tracks_(std::move(tracks)),
      events_(std::move(events)),
      total_waves_(total_waves),
      diagnostics_(diagnostics) {}

std::vector<const FrontTrack*> Timeline::alive_at(double t) const {
  std::vector<const FrontTrack*> alive;
  for (const auto& tr : tracks_) {
    if (tr.alive_at(t)) alive.push_back(&tr);
  }
  std::sort(alive.begin(), alive.end(),
            [t](const FrontTrack* a, const FrontTrack* b) { return a->position(t) < b->position(t); });
  // Fans leaving one point: slower fronts are on the left.
  std::size_t i = 0;
  while (i < alive.size()) {
    std::size_t j = i + 1;
    while (j < alive.size() &&
           alive[j]->position(t) - alive[i]->position(t) <= tolerance_x(alive[i]->position(t))) {
      ++j;
    }
    std::stable_sort(alive.begin() + static_cast<std::ptrdiff_t>(i), alive.begin() + static_cast<std::ptrdiff_t>(j),
                     [](const FrontTrack* a, const FrontTrack* b) { return a->wave.speed < b->wave.speed; });
    i = j;
  }
  return alive;
}

namespace {

// Unit waves of one or more adjacent fronts, keyed by band.
struct Pile {
  GridIndex left = 0;
  GridIndex right = 0;
  std::vector<WaveId> waves;  // waves[b - min(left, right)]

  GridIndex lo() const { return std::min(left, right); }
  GridIndex hi() const { return std::max(left, right); }
  bool has(GridIndex band) const { return band >= lo() && band < hi(); }
  WaveId at(GridIndex band) const { return waves[static_cast<std::size_t>(band - lo())]; }
};

// Combines the pile on the left with the pile on the right; waves on a band
// covered by both cancel pairwise.
Pile combine(const Pile& a, const Pile& b, std::vector<WaveId>& killed) {
  Pile out{a.left, b.right, {}};
  const GridIndex lo = std::min(a.lo(), b.lo());
  const GridIndex hi = std::max(a.hi(), b.hi());
  for (GridIndex band = lo; band < hi; ++band) {
    const bool in_a = a.has(band);
    const bool in_b = b.has(band);
    if (in_a && in_b) {
      killed.push_back(a.at(band));
      killed.push_back(b.at(band));
    } else if (in_a) {
      out.waves.push_back(a.at(band));
    } else if (in_b) {
      out.waves.push_back(b.at(band));
    }
  }
  return out;
}

struct PairCollision {
  std::size_t left_index;
  double time;
};

std::optional<double> pair_time(const SimState& state, std::size_t i) {
  const auto& a = state.fronts[i];
  const auto& b = state.fronts[i + 1];
  const double approach = a.wave.speed - b.wave.speed;
  if (approach < kParallelSpeedTolerance) return std::nullopt;
  const double gap = b.position(state.time) - a.position(state.time);
  if (gap <= 0.0) return state.time;
  return state.time + gap / approach;
}

std::optional<PairCollision> select_collision(const SimState& state) {
  if (state.fronts.size() < 2) return std::nullopt;
  std::vector<std::optional<double>> times(state.fronts.size() - 1);
  double tmin = kInfinity;
  for (std::size_t i = 0; i + 1 < state.fronts.size(); ++i) {
    times[i] = pair_time(state, i);
    if (times[i]) tmin = std::min(tmin, *times[i]);
  }
  if (!std::isfinite(tmin)) return std::nullopt;
  const double cutoff = tmin + tolerance_t(tmin);
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] && *times[i] <= cutoff) return PairCollision{i, *times[i]};
  }
  return std::nullopt;
}

}  // namespace

SimState initialize(const PiecewiseConstantFn& u0, const PiecewiseAffineFlux& flux) {
  if (u0.nu() != flux.nu()) {
    throw std::invalid_argument("initial datum at nu=" + std::to_string(u0.nu()) + " but flux at nu=" +
                                std::to_string(flux.nu()));
  }
  SimState state;
  WaveId base = 0;
  const auto bps = u0.breakpoints();
  const auto vals = u0.values();
  for (std::size_t i = 0; i < bps.size(); ++i) {
    const GridIndex left = vals[i];
    const GridIndex right = vals[i + 1];
    for (const auto& wf : solve_riemann(flux, left, right)) {
      ActiveFront front{state.next_id++, wf, 0.0, bps[i], {}};
      for (GridIndex band = wf.lo; band < wf.hi; ++band) {
        front.waves.push_back(left < right ? base + (band - left) + 1 : base + (left - band));
      }
      state.fronts.push_back(std::move(front));
    }
    base += std::abs(right - left);
  }
  return state;
}

std::optional<double> next_collision(const SimState& state) {
  const auto c = select_collision(state);
  if (!c) return std::nullopt;
  return std::max(state.time, c->time);
}

CollisionEvent resolve_collision(SimState& state, const PiecewiseAffineFlux& flux, double t) {
  const auto c = select_collision(state);
  if (!c || c->time > t + tolerance_t(t)) throw std::logic_error("no collision at the requested time");
  const double te = std::max(state.time, c->time);
  const std::size_t i = c->left_index;
  const double xe = 0.5 * (state.fronts[i].position(te) + state.fronts[i + 1].position(te));
  const double tol = tolerance_x(xe);

  std::size_t first = i;
  std::size_t last = i + 1;
  while (first > 0 && std::abs(state.fronts[first - 1].position(te) - xe) <= tol) --first;
  while (last + 1 < state.fronts.size() && std::abs(state.fronts[last + 1].position(te) - xe) <= tol) ++last;

  CollisionEvent ev;
  ev.t = te;
  ev.x = xe;
  bool mixed = false;
  std::int64_t incoming_strength = 0;
  std::vector<WaveId> killed;
  Pile acc;
  for (std::size_t k = first; k <= last; ++k) {
    const auto& f = state.fronts[k];
    ev.incoming.push_back(f.id);
    incoming_strength += f.wave.strength();
    if (k > first && f.wave.sign != state.fronts[first].wave.sign) mixed = true;
    Pile p{f.wave.left_state(), f.wave.right_state(), f.waves};
    acc = (k == first) ? std::move(p) : combine(acc, p, killed);
  }
  ev.left_front = ev.incoming.front();
  ev.right_front = ev.incoming.back();
  ev.left_state = acc.left;
  ev.right_state = acc.right;
  ev.kind = mixed ? CollisionKind::cancellation : CollisionKind::interaction;
  ev.tv_drop = incoming_strength - std::abs(acc.right - acc.left);
  if (ev.tv_drop != static_cast<std::int64_t>(killed.size())) {
    throw std::logic_error("wave bookkeeping out of balance at collision");
  }
  ev.killed = std::move(killed);

  std::vector<ActiveFront> out;
  for (const auto& wf : solve_riemann(flux, acc.left, acc.right)) {
    ActiveFront nf{state.next_id++, wf, te, xe, {}};
    for (GridIndex band = wf.lo; band < wf.hi; ++band) nf.waves.push_back(acc.at(band));
    ev.outgoing.push_back(wf);
    ev.outgoing_ids.push_back(nf.id);
    out.push_back(std::move(nf));
  }

  auto pos = state.fronts.erase(state.fronts.begin() + static_cast<std::ptrdiff_t>(first),
                                state.fronts.begin() + static_cast<std::ptrdiff_t>(last) + 1);
  state.fronts.insert(pos, std::make_move_iterator(out.begin()), std::make_move_iterator(out.end()));
  state.time = te;
  return ev;
}

Timeline run(const PiecewiseConstantFn& u0, const PiecewiseAffineFlux& flux, double t_max, RunOptions options) {
  if (!(t_max > 0.0)) throw std::invalid_argument("t_max must be positive");
  SimState state = initialize(u0, flux);
  std::vector<FrontTrack> tracks;
  auto add_track = [&tracks](const ActiveFront& f, std::ptrdiff_t birth) {
    tracks.push_back({f.id, f.wave, f.t0, f.x0, kInfinity, f.waves, birth, -1});
  };
  for (const auto& f : state.fronts) add_track(f, -1);

  std::vector<CollisionEvent> events;
  RunDiagnostics diag;
  while (true) {
    const auto tn = next_collision(state);
    if (!tn || *tn > t_max) break;
    if (static_cast<std::int64_t>(events.size()) >= options.max_events) {
      throw std::runtime_error("event cap of " + std::to_string(options.max_events) + " exceeded at t=" +
                               std::to_string(state.time) + " with " + std::to_string(state.fronts.size()) +
                               " fronts");
    }
    CollisionEvent ev = resolve_collision(state, flux, *tn);
    const auto idx = static_cast<std::ptrdiff_t>(events.size());
    for (FrontId id : ev.incoming) {
      auto& tr = tracks[static_cast<std::size_t>(id)];
      tr.t_end = ev.t;
      tr.death_event = idx;
    }
    for (const auto& f : state.fronts) {
      if (f.t0 == ev.t && std::find(ev.outgoing_ids.begin(), ev.outgoing_ids.end(), f.id) != ev.outgoing_ids.end()) {
        add_track(f, idx);
      }
    }
    if (ev.incoming.size() > 2) ++diag.multi_front_collisions;
    if (ev.kind == CollisionKind::interaction && ev.outgoing.size() != 1) ++diag.split_interactions;
    events.push_back(std::move(ev));
  }
  return Timeline(flux, u0, t_max, std::move(tracks), std::move(events), total_variation(u0), diag);
}

namespace {

PiecewiseConstantFn slice_from(const Timeline& timeline, std::vector<const FrontTrack*> alive, double t) {
  std::sort(alive.begin(), alive.end(), [t](const FrontTrack* a, const FrontTrack* b) {
    const double xa = a->position(t);
    const double xb = b->position(t);
    return xa < xb || (xa == xb && a->wave.speed < b->wave.speed);
  });
  std::vector<std::pair<double, GridIndex>> jumps;
  jumps.reserve(alive.size());
  double anchor = -kInfinity;
  for (const FrontTrack* tr : alive) {
    double x = tr->position(t);
    if (std::isfinite(anchor) && x - anchor <= tolerance_x(anchor)) {
      x = anchor;
    } else {
      anchor = x;
    }
    jumps.emplace_back(x, tr->wave.right_state() - tr->wave.left_state());
  }
  return PiecewiseConstantFn::from_jumps(timeline.nu(), jumps);
}

}  // namespace

void for_each_event_slice(const Timeline& timeline,
                          const std::function<void(std::size_t, const PiecewiseConstantFn&)>& visit) {
  std::vector<const FrontTrack*> alive;
  for (const auto& tr : timeline.tracks()) {
    if (tr.birth_event == -1) alive.push_back(&tr);
  }
  const auto evs = timeline.events();
  for (std::size_t e = 0; e < evs.size(); ++e) {
    const auto& ev = evs[e];
    std::erase_if(alive, [&ev](const FrontTrack* tr) {
      return std::find(ev.incoming.begin(), ev.incoming.end(), tr->id) != ev.incoming.end();
    });
    for (FrontId id : ev.outgoing_ids) alive.push_back(&timeline.track(id));
    visit(e, slice_from(timeline, alive, ev.t));
  }
}

PiecewiseConstantFn sample_solution(const Timeline& timeline, double t) {
  if (t < 0.0 || t > timeline.t_max() + tolerance_t(timeline.t_max())) {
    throw std::out_of_range("sample time " + std::to_string(t) + " outside [0, t_max]");
  }
  const auto alive = timeline.alive_at(t);
  std::vector<std::pair<double, GridIndex>> jumps;
  jumps.reserve(alive.size());
  GridIndex current = 0;
  double anchor = -kInfinity;
  for (const FrontTrack* tr : alive) {
    if (tr->wave.left_state() != current) {
      throw std::logic_error("front states do not chain at t=" + std::to_string(t));
    }
    current = tr->wave.right_state();
    double x = tr->position(t);
    if (std::isfinite(anchor) && x - anchor <= tolerance_x(anchor)) {
      x = anchor;  // same point as the previous front
    } else {
      anchor = x;
    }
    jumps.emplace_back(x, tr->wave.right_state() - tr->wave.left_state());
  }
  if (current != 0) throw std::logic_error("slice does not return to zero");
  return PiecewiseConstantFn::from_jumps(timeline.nu(), jumps);
}

}  // namespace frontwave

#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "frontwave/check.hpp"
#include "frontwave/simulator.hpp"

namespace frontwave {

/// Piece of a wave trajectory: from t_start the wave rides front track `track`.
struct WaveSegment {
  double t_start = 0.0;
  FrontId track = -1;
};

/// One unit wave s in ((id-1) 2^-nu, id 2^-nu].
struct WaveRecord {
  WaveId id = 0;
  int sign = 1;
  /// Value band [band, band+1] in grid units crossed by this wave.
  GridIndex band = 0;
  double birth_x = 0.0;
  double death_time = kInfinity;
  std::ptrdiff_t death_event = -1;
  std::vector<WaveSegment> segments;

  std::int64_t s_lo() const { return id - 1; }
  std::int64_t s_hi() const { return id; }
  bool alive_at(double t) const { return t < death_time; }
};

/// Per-event wave bookkeeping.
struct EventWaves {
  std::vector<WaveId> members;  // all incoming waves, ascending
  std::vector<WaveId> killed;   // ascending
  /// Surviving waves with speed before and after the event.
  std::vector<std::pair<WaveId, std::pair<double, double>>> survivors;
  double q_before = 0.0;
  double q_after = 0.0;
  /// Interacted range [lo, hi] of member waves before the event.
  std::vector<std::pair<WaveId, WaveId>> interacted_before;
};

/// The Lagrangian wave representation of a Timeline. Holds a reference to the
/// timeline, which must outlive the atlas.
class WaveAtlas {
 public:
  WaveAtlas(const Timeline& timeline, std::vector<WaveRecord> records, std::vector<EventWaves> events,
            double q_initial);

  const Timeline& timeline() const { return *timeline_; }
  std::span<const WaveRecord> records() const { return records_; }
  const WaveRecord& record(WaveId id) const { return records_.at(static_cast<std::size_t>(id - 1)); }
  std::span<const EventWaves> event_waves() const { return events_; }
  std::int64_t total_s() const { return static_cast<std::int64_t>(records_.size()); }
  double cell() const { return timeline_->flux().cell(); }

  /// X(t, s); frozen at the death position after death.
  double position(WaveId id, double t) const;
  /// sigma(t, s), right-continuous in t. Zero after death.
  double speed(WaveId id, double t) const;
  /// u(s) = sum of signs of waves 1..id, in grid units.
  GridIndex value(WaveId id) const;
  /// (t, sigma) pairs, one per trajectory segment.
  std::vector<std::pair<double, double>> speed_history(WaveId id) const;

  /// Q right after all events at times <= t.
  double q_at(double t) const;
  double q_initial() const { return q_initial_; }

 private:
  const Timeline* timeline_;
  std::vector<WaveRecord> records_;
  std::vector<EventWaves> events_;
  std::vector<GridIndex> prefix_value_;
  double q_initial_;
};

/// Atoms of a point measure on (t, x).
struct PointMeasure {
  struct Atom {
    double t;
    double x;
    double mass;
  };
  std::vector<Atom> atoms;

  double total() const;
};

WaveAtlas build_atlas(const Timeline& timeline, const PiecewiseConstantFn& u0);

/// Tiling, value-slope and band consistency of the atlas, plus death
/// bookkeeping: deaths only at cancellations, killed count = tv_drop, signed
/// death balance zero, and per-front flux balance at every event.
CheckReport atlas_invariants(const WaveAtlas& atlas);

/// Compares the jumps of u(t) with alive waves grouped by position.
CheckReport pushforward_check(const WaveAtlas& atlas, double t);

/// Sum over waves of 2^-nu times the total variation of t -> sigma(t, s).
double speed_tv_integral(const WaveAtlas& atlas);

/// Area of pairs s < s' alive at t that have never shared a position.
double glimm_functional(const WaveAtlas& atlas, double t);

struct EventBound {
  std::size_t event = 0;
  CollisionKind kind = CollisionKind::interaction;
  double lhs = 0.0;  // sum of |d sigma| 2^-nu over survivors
  double rhs = 0.0;
  bool ok = true;
};

struct EventBoundsReport {
  std::vector<EventBound> bounds;
  CheckReport bound_check{"per_event_bounds"};
  CheckReport key_fact{"interaction_key_fact"};
  double cancellation_part = 0.0;
  double interaction_part = 0.0;

  bool ok() const { return bound_check.ok() && key_fact.ok(); }
};

/// Cancellation events: lhs <= D2 TV(u(t)) tv_drop 2^-nu with TV after the
/// event. Interaction events: lhs <= 2 D2 (Q(t-) - Q(t)), and for binary
/// interactions the meeting value lies on the envelope over the interacted
/// value range.
EventBoundsReport per_event_bounds(const WaveAtlas& atlas, double d2);

PointMeasure cancellation_measure(const WaveAtlas& atlas);
PointMeasure interaction_measure(const WaveAtlas& atlas);

/// Every alive wave moves at the chord slope of its front's one-sided states,
/// checked per trajectory segment and against sampled slices between events.
CheckReport volpert_check(const WaveAtlas& atlas, std::size_t max_slices = 512);

/// Total variation of s -> sigma(t, s) over alive waves.
double speed_spatial_tv(const WaveAtlas& atlas, double t);

}  // namespace frontwave

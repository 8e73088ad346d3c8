#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "frontwave/flux.hpp"
#include "frontwave/pcfn.hpp"
#include "frontwave/riemann.hpp"

namespace frontwave {

using FrontId = std::int64_t;
/// Unit wave label: wave k occupies s in ((k-1) 2^-nu, k 2^-nu], k >= 1.
using WaveId = std::int64_t;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
/// Adjacent fronts approaching slower than this are treated as parallel.
inline constexpr double kParallelSpeedTolerance = 1e-14;

/// A front in flight. waves[i] is the unit wave carrying band lo + i.
struct ActiveFront {
  FrontId id = 0;
  Wavefront wave;
  double t0 = 0.0;
  double x0 = 0.0;
  std::vector<WaveId> waves;

  double position(double t) const { return x0 + wave.speed * (t - t0); }
};

struct SimState {
  double time = 0.0;
  std::vector<ActiveFront> fronts;  // ordered by position
  FrontId next_id = 0;
};

enum class CollisionKind { interaction, cancellation };

struct CollisionEvent {
  double t = 0.0;
  double x = 0.0;
  std::vector<FrontId> incoming;  // left to right
  FrontId left_front = -1;
  FrontId right_front = -1;
  CollisionKind kind = CollisionKind::interaction;
  std::int64_t tv_drop = 0;  // grid units
  std::vector<Wavefront> outgoing;
  std::vector<FrontId> outgoing_ids;
  std::vector<WaveId> killed;
  GridIndex left_state = 0;
  GridIndex right_state = 0;
};

/// One straight piece of a front trajectory, alive on [t_start, t_end).
struct FrontTrack {
  FrontId id = 0;
  Wavefront wave;
  double t_start = 0.0;
  double x_start = 0.0;
  double t_end = kInfinity;
  std::vector<WaveId> waves;
  std::ptrdiff_t birth_event = -1;
  std::ptrdiff_t death_event = -1;

  double position(double t) const { return x_start + wave.speed * (t - t_start); }
  bool alive_at(double t) const { return t_start <= t && t < t_end; }
};

struct RunOptions {
  std::int64_t max_events = 10'000'000;
};

struct RunDiagnostics {
  /// Same-sign collisions whose outgoing fan had more than one front.
  std::int64_t split_interactions = 0;
  /// Collisions resolved with three or more incoming fronts.
  std::int64_t multi_front_collisions = 0;
};

/// Full event history of one run. Immutable once built.
class Timeline {
 public:
  Timeline(PiecewiseAffineFlux flux, PiecewiseConstantFn initial, double t_max,
           std::vector<FrontTrack> tracks, std::vector<CollisionEvent> events, std::int64_t total_waves,
           RunDiagnostics diagnostics);

  const PiecewiseAffineFlux& flux() const { return flux_; }
  const PiecewiseConstantFn& initial() const { return initial_; }
  int nu() const { return flux_.nu(); }
  double t_max() const { return t_max_; }
  std::span<const FrontTrack> tracks() const { return tracks_; }
  const FrontTrack& track(FrontId id) const { return tracks_.at(static_cast<std::size_t>(id)); }
  std::span<const CollisionEvent> events() const { return events_; }
  std::int64_t total_waves() const { return total_waves_; }
  const RunDiagnostics& diagnostics() const { return diagnostics_; }

  /// Tracks alive at t, ordered by position; co-located tracks by speed.
  std::vector<const FrontTrack*> alive_at(double t) const;

 private:
  PiecewiseAffineFlux flux_;
  PiecewiseConstantFn initial_;
  double t_max_;
  std::vector<FrontTrack> tracks_;
  std::vector<CollisionEvent> events_;
  std::int64_t total_waves_;
  RunDiagnostics diagnostics_;
};

/// Replaces every jump of u0 by its Riemann fan at t = 0 and labels unit
/// waves: TV to the left of the jump plus the offset from the left state.
SimState initialize(const PiecewiseConstantFn& u0, const PiecewiseAffineFlux& flux);

/// Earliest collision time among adjacent pairs, if any.
std::optional<double> next_collision(const SimState& state);

/// Resolves the leftmost collision at time t. All fronts meeting at that point
/// are replaced by one Riemann fan between the outermost states.
CollisionEvent resolve_collision(SimState& state, const PiecewiseAffineFlux& flux, double t);

/// Processes all collisions up to t_max. Throws std::runtime_error if more
/// than options.max_events events occur.
Timeline run(const PiecewiseConstantFn& u0, const PiecewiseAffineFlux& flux, double t_max,
             RunOptions options = {});

/// The slice u^nu(t), right-continuous; co-located fronts share a breakpoint.
PiecewiseConstantFn sample_solution(const Timeline& timeline, double t);

/// Calls visit(e, u(t_e)) with the slice right after each event e, in order.
void for_each_event_slice(const Timeline& timeline,
                          const std::function<void(std::size_t, const PiecewiseConstantFn&)>& visit);

}  // namespace frontwave

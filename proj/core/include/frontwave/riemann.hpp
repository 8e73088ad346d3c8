#pragma once

#include <vector>

#include "frontwave/flux.hpp"

namespace frontwave {

/// A jump between grid values lo < hi moving at its Rankine-Hugoniot speed.
/// sign is +1 when the left state is lo, -1 when the left state is hi.
struct Wavefront {
  GridIndex lo = 0;
  GridIndex hi = 0;
  int sign = 1;
  double speed = 0.0;

  GridIndex left_state() const { return sign > 0 ? lo : hi; }
  GridIndex right_state() const { return sign > 0 ? hi : lo; }
  GridIndex strength() const { return hi - lo; }

  friend bool operator==(const Wavefront&, const Wavefront&) = default;
};

/// Admissible fan between u_l and u_r, ordered left to right (increasing speed).
///
/// Increasing jumps use the lower convex envelope on [u_l, u_r], decreasing
/// jumps the upper concave envelope on [u_r, u_l]; one front per maximal
/// constant-slope segment.
std::vector<Wavefront> solve_riemann(const PiecewiseAffineFlux& flux, GridIndex u_l, GridIndex u_r);

/// Slope of the envelope segment that contains the band [lo, hi].
double front_speed(const PiecewiseAffineFlux& flux, const EnvelopeSegmentList& env, GridIndex lo,
                   GridIndex hi);

}  // namespace frontwave

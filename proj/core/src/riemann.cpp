#include "frontwave/riemann.hpp"

#include <stdexcept>
#include <string>

namespace frontwave {

std::vector<Wavefront> solve_riemann(const PiecewiseAffineFlux& flux, GridIndex u_l, GridIndex u_r) {
  const GridIndex top = flux.max_index();
  if (u_l < 0 || u_r < 0 || u_l > top || u_r > top) {
    throw std::out_of_range("Riemann states outside [0, " + std::to_string(top) + "]: " +
                            std::to_string(u_l) + ", " + std::to_string(u_r));
  }
  std::vector<Wavefront> fan;
  if (u_l == u_r) return fan;
  if (u_l < u_r) {
    const auto env = lower_convex_envelope(flux, u_l, u_r);
    fan.reserve(env.segments.size());
    for (const auto& s : env.segments) fan.push_back({s.start, s.end, +1, s.slope});
  } else {
    // Concave slopes decrease with u, so the highest band is the slowest front.
    const auto env = upper_concave_envelope(flux, u_r, u_l);
    fan.reserve(env.segments.size());
    for (auto it = env.segments.rbegin(); it != env.segments.rend(); ++it) {
      fan.push_back({it->start, it->end, -1, it->slope});
    }
  }
  return fan;
}

double front_speed(const PiecewiseAffineFlux&, const EnvelopeSegmentList& env, GridIndex lo, GridIndex hi) {
  return env.segment_containing(lo, hi).slope;
}

}  // namespace frontwave

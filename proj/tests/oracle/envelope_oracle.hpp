#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "frontwave/flux.hpp"

namespace oracle {

struct Segment {
  frontwave::GridIndex start;
  frontwave::GridIndex end;
  double slope;
};

// O(n^3) envelope: env(k) = min (or max) over chords (i, j) with i <= k <= j.
inline std::vector<Segment> brute_envelope(const frontwave::PiecewiseAffineFlux& flux, frontwave::GridIndex a,
                                           frontwave::GridIndex b, bool convex) {
  const double sgn = convex ? 1.0 : -1.0;
  std::vector<double> env;
  for (frontwave::GridIndex k = a; k <= b; ++k) {
    double best = sgn * flux.value(k);
    for (frontwave::GridIndex i = a; i <= k; ++i) {
      for (frontwave::GridIndex j = k; j <= b; ++j) {
        if (i == j) continue;
        const double fi = sgn * flux.value(i);
        const double fj = sgn * flux.value(j);
        best = std::min(best, fi + (fj - fi) * static_cast<double>(k - i) / static_cast<double>(j - i));
      }
    }
    env.push_back(best);
  }
  // A grid point is a vertex when the envelope touches f there and the slope changes.
  auto touches = [&](frontwave::GridIndex k) {
    const double f = sgn * flux.value(k);
    return std::abs(env[static_cast<std::size_t>(k - a)] - f) <= 1e-13 * (1.0 + std::abs(f));
  };
  std::vector<Segment> out;
  frontwave::GridIndex start = a;
  for (frontwave::GridIndex k = a + 1; k <= b; ++k) {
    if (k == b) {
      out.push_back({start, b, flux.chord_slope(start, b)});
      break;
    }
    if (!touches(k)) continue;
    const double left = flux.chord_slope(start, k);
    const double right = flux.chord_slope(k, k + 1);
    double next = right;
    for (frontwave::GridIndex j = k + 1; j <= b; ++j) {
      if (touches(j)) {
        next = flux.chord_slope(k, j);
        break;
      }
    }
    if (std::abs(next - left) > 1e-12) {
      out.push_back({start, k, left});
      start = k;
    }
  }
  return out;
}

}  // namespace oracle

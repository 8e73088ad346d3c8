#pragma once

#include <vector>

#include "frontwave/flux.hpp"
#include "frontwave/pcfn.hpp"
#include "frontwave/simulator.hpp"
#include "frontwave/waverep.hpp"

namespace fixtures {

inline frontwave::PiecewiseConstantFn step(int nu, double a, double b, double v) {
  const std::vector<frontwave::Sample> s{{a, v}, {b, 0.0}};
  return frontwave::approximate_initial_datum(s, nu);
}

// Burgers with u0 = indicator of [0, 1) at level nu.
struct Indicator {
  explicit Indicator(int nu = 1, double t_max = 10.0)
      : u0(step(nu, 0.0, 1.0, 1.0)),
        flux(frontwave::sample_flux(frontwave::burgers_flux(), nu)),
        timeline(frontwave::run(u0, flux, t_max)),
        atlas(frontwave::build_atlas(timeline, u0)) {}

  frontwave::PiecewiseConstantFn u0;
  frontwave::PiecewiseAffineFlux flux;
  frontwave::Timeline timeline;
  frontwave::WaveAtlas atlas;
};

}  // namespace fixtures

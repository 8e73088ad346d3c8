#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "frontwave/flux.hpp"
#include "frontwave/pcfn.hpp"
#include "frontwave/regularity.hpp"

namespace frontwave {

/// A positive and a negative shock meeting with (almost) equal speeds.
struct CancVsInterParams {
  double u_minus = 0.25;
  double u_plus = 0.5;
  double u_m_plus = 0.75;
  double sigma = 0.5;             // common base speed
  double target_gap = 1e-11;      // sigma_P - sigma_N after discretization
  double separation = 1e-4;       // initial distance between the two shocks
  int nu = 8;
};

struct CancVsInterScenario {
  CancVsInterParams params;
  FluxSpec flux;
  PiecewiseConstantFn initial;
  double eta = 0.0;            // bump amplitude
  double speed_gap = 0.0;      // solved discrete sigma_P - sigma_N
  double t_collision = 0.0;    // separation / speed_gap
  double t_max = 0.0;
  double expected_atom = 0.0;  // 2 (u_m_plus - u_plus) on the grid
};

/// f(u) = sigma u + eta b(u) with b a C^2 cubic bump peaking at u_plus, and
/// eta solved so that the discrete speed gap equals target_gap. The datum is
/// u_minus on [-1, 0), u_m_plus on [0, d), u_plus on [d, d + 1).
CancVsInterScenario scenario_canc_vs_inter(const CancVsInterParams& params = {});

struct CancVsInterVerdict {
  bool collided = false;
  double incoming_gap = 0.0;
  double atom_mass = 0.0;
  double atom_error = 0.0;
  double survivor_mass = 0.0;  // interaction mass at the collision
  double t = 0.0;
  double x = 0.0;
  bool passed = false;
};

CancVsInterVerdict evaluate_canc_vs_inter(const CancVsInterScenario& sc, const WaveAtlas& atlas,
                                          double tol = 1e-10);

/// A large shock absorbing a geometric staircase of small shocks at times
/// t_k = 1 - 0.5 decay^(k-1) under Burgers flux.
struct NotJumpParams {
  int n_jumps = 8;  // including the large shock
  double decay = 0.5;
  int nu = 8;
};

struct NotJumpScenario {
  NotJumpParams params;
  FluxSpec flux;
  PiecewiseConstantFn initial;
  std::vector<GridIndex> strengths;  // small jumps, units
  std::vector<double> merge_times;
  double t_max = 1.25;
};

NotJumpScenario scenario_not_jump(const NotJumpParams& params = {});

struct NotJumpVerdict {
  std::vector<std::pair<double, double>> interaction_points;  // (t, x)
  std::vector<double> atom_masses;
  bool monotone = false;
  bool atoms_bounded = false;  // each atom <= 2 2^-nu strength_k
  double max_atom = 0.0;
  double atom_bound = 0.0;     // 2 2^-nu max strength
  GammaPm gamma;
  double slope_gap = 0.0;
  double required_gap = 0.05;
  bool passed = false;
};

NotJumpVerdict evaluate_not_jump(const NotJumpScenario& sc, const WaveAtlas& atlas);

/// Random piecewise-constant datum on [0, length) with values in [0, M],
/// total variation at most tv_cap.
std::vector<Sample> random_samples(std::uint64_t seed, int pieces, double max_value, double tv_cap,
                                   double length = 1.0);

/// Random C^2 flux: burgers + cubic + smooth bumps, positive coefficients.
FluxSpec random_blend_flux(std::uint64_t seed, double max_value = 1.0);

}  // namespace frontwave

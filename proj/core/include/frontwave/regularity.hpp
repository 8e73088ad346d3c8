#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "frontwave/check.hpp"
#include "frontwave/waverep.hpp"

namespace frontwave {

/// Polyline x -> tau(x) through (x, t) vertices, constant beyond the ends.
class SpacelikeCurve {
 public:
  /// Throws if x is not increasing, some t < 0, or a slope exceeds 1/lambda.
  SpacelikeCurve(std::vector<std::pair<double, double>> vertices, double lambda);
  static SpacelikeCurve flat(double t);

  double at(double x) const;
  double max_time() const;
  std::span<const std::pair<double, double>> vertices() const { return vertices_; }

 private:
  SpacelikeCurve() = default;
  std::vector<std::pair<double, double>> vertices_;
};

/// lower(x) <= upper(x) for all x.
bool curve_below(const SpacelikeCurve& lower, const SpacelikeCurve& upper);

/// Time at which wave s meets tau (X frozen after death).
double crossing_time(const WaveAtlas& atlas, WaveId s, const SpacelikeCurve& tau);

/// Jumps of u along tau: (x, signed jump in units), sorted by x.
std::vector<std::pair<double, GridIndex>> curve_crossings(const Timeline& timeline, const SpacelikeCurve& tau);

struct SpacelikeBalance {
  std::int64_t lhs_tau = 0;        // TV along tau from wave s to wave s' inclusive, units
  std::int64_t lhs_tau_prime = 0;  // same along tau_prime
  std::int64_t canceled = 0;       // units of (s, s') dying between the curves

  bool holds() const { return lhs_tau == lhs_tau_prime - canceled; }
};

/// Both sides of the exact balance between spacelike curves tau_prime <= tau
/// for waves s < s'. Values along a curve are resolved by wave, so fronts
/// meeting the curve at one point still count in s order.
SpacelikeBalance spacelike_tv_balance(const WaveAtlas& atlas, const SpacelikeCurve& tau,
                                      const SpacelikeCurve& tau_prime, WaveId s, WaveId s_prime);

struct LinfBalance {
  double later = 0.0;    // sup over tau, value units
  double earlier = 0.0;  // sup over tau_prime
  double canceled = 0.0;

  bool holds() const { return later + canceled >= earlier - 1e-12 * (1.0 + earlier); }
};

/// Sup-deviation counterpart over the values from just before s to just after s'.
LinfBalance spacelike_linf_balance(const WaveAtlas& atlas, const SpacelikeCurve& tau,
                                   const SpacelikeCurve& tau_prime, WaveId s, WaveId s_prime, double u_bar);

struct DependenceCheck {
  std::int64_t tv_before = 0;  // TV(u(t_bar), (a, b)), units
  std::int64_t tv_after = 0;   // TV(u(t), triangle(t)), units
  std::int64_t canceled = 0;   // tv_drop of events in the triangle over (t_bar, t]
  double interaction = 0.0;    // interaction mass in the triangle over (t_bar, t]

  bool holds() const { return tv_before >= tv_after + canceled; }
  bool holds_with_interaction(double h) const {
    return static_cast<double>(tv_before) * h + 1e-12 >= static_cast<double>(tv_after) * h + interaction;
  }
};

DependenceCheck domain_of_dependence(const WaveAtlas& atlas, double a, double b, double t_bar, double t);

struct JumpPoint {
  double t = 0.0;
  double x = 0.0;
  GridIndex left_value = 0;
  GridIndex right_value = 0;
  double rh_speed = 0.0;
  bool in_theta = false;
};

/// Start, midpoint and end samples of front tracks with strength >= eps_jump.
std::vector<JumpPoint> jump_set(const Timeline& timeline, GridIndex eps_jump,
                                const std::vector<std::pair<double, double>>& theta = {});

/// Points carrying an atom of either measure with mass >= threshold.
std::vector<std::pair<double, double>> theta_atoms(const PointMeasure& canc, const PointMeasure& inter,
                                                   double threshold);

/// Every point lies on some front track at its time.
CheckReport theta_on_fronts(const Timeline& timeline, const std::vector<std::pair<double, double>>& points);

struct ConeSample {
  double rho = 0.0;
  double dev_left = 0.0;
  double dev_right = 0.0;
};

struct GammaPm {
  std::vector<std::pair<double, double>> minus;  // (t, x)
  std::vector<std::pair<double, double>> plus;
  std::vector<WaveId> members;  // waves used before t_bar
  bool degenerate = false;      // no wave at the point
  double slope_minus_in = 0.0;
  double slope_plus_in = 0.0;
  double slope_minus_out = 0.0;
  double slope_plus_out = 0.0;
  bool continues = false;  // curves extend past t_bar
  std::vector<ConeSample> deviations;
};

/// Boundary curves of the waves at (t_bar, x_bar). The extreme unit on each
/// side is dropped when at least 3 units sit there. Past t_bar the curves
/// follow the surviving members, or all survivors at the point if none.
GammaPm gamma_pm(const WaveAtlas& atlas, double t_bar, double x_bar, double rho0 = 0.25);

/// Sup deviation from u(t_bar, x_bar-) and u(t_bar, x_bar+) on the cones
/// x < x_bar + p (t - t_bar) - delta |t - t_bar| and its mirror, within B_rho.
std::pair<double, double> cone_continuity_check(const Timeline& timeline, double t_bar, double x_bar, double p,
                                                double delta, double rho);

}  // namespace frontwave

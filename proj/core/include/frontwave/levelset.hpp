#pragma once

#include <string>
#include <utility>
#include <vector>

#include "frontwave/waverep.hpp"

namespace frontwave {

/// One boundary curve gamma_{j,w} of {u > w}.
struct LevelCurve {
  int j = 1;  // 1-based, in birth-position order
  double w = 0.0;
  WaveId wave = 0;
  /// Polyline vertices (t, x) on [0, t_end].
  std::vector<std::pair<double, double>> polyline;
  double t_end = kInfinity;  // existence is [0, t_end)
  int normal_sign = 1;       // (-1)^(1+j)

  double position(double t) const;
};

/// Curves at band midpoint w = (k - 1/2) 2^-nu; throws if w is not one.
std::vector<LevelCurve> extract_level_curves(const WaveAtlas& atlas, double w);

/// Band index b with w = (b + 1/2) 2^-nu, or throws.
GridIndex band_of_midpoint(double w, int nu);

struct CoareaSlice {
  std::int64_t lhs = 0;  // TV(u(t)) in units
  std::int64_t rhs = 0;  // number of level curves alive at t, over all bands
};

CoareaSlice coarea_time_slice(const WaveAtlas& atlas, double t);

/// s-unit of gamma_{j,w}, computed from u0: TV to the left of the j-th crossing
/// of w plus the offset |w - u0(x-)| rounded up to units.
WaveId s_parametrization(const WaveAtlas& atlas, int j, double w);

/// (j, w) of s-unit s: w from the prefix sum of signs, j from the rank among
/// earlier units on the same band.
std::pair<int, double> inverse_parametrization(const WaveAtlas& atlas, WaveId s);

enum class SetMetric { hausdorff, l1 };

SetMetric parse_set_metric(const std::string& name);

/// Distance between unions of intervals (Hausdorff of closures or measure of
/// the symmetric difference). Hausdorff with exactly one empty side is +inf.
double interval_set_distance(const std::vector<Interval>& a, const std::vector<Interval>& b, SetMetric metric);

/// Distance between {u_A(t) > w} and {u_B(t) > w}.
double level_set_distance(const Timeline& a, const Timeline& b, double w, double t, SetMetric metric);

/// Sup of level_set_distance over `samples` uniform times in (0, t_max].
double level_set_distance_sup(const Timeline& a, const Timeline& b, double w, SetMetric metric,
                              int samples = 32);

/// Level curves as CSV rows: w,j,t,x,normal_sign.
std::string level_curves_csv(const std::vector<LevelCurve>& curves);

}  // namespace frontwave

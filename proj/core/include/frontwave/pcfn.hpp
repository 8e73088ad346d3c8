#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "frontwave/flux.hpp"

namespace frontwave {

/// Positions closer than tolerance_x(x) = 1e-12 (1 + |x|) are the same point.
inline double tolerance_x(double x) { return 1e-12 * (1.0 + (x < 0 ? -x : x)); }
/// Times closer than tolerance_t(t) = 1e-12 (1 + t) are simultaneous.
inline double tolerance_t(double t) { return 1e-12 * (1.0 + (t < 0 ? -t : t)); }

/// Right-continuous, compactly supported, grid-valued step function.
///
/// values[i] holds on [breakpoints[i-1], breakpoints[i]); values.front() and
/// values.back() are zero, adjacent values differ.
class PiecewiseConstantFn {
 public:
  PiecewiseConstantFn() = default;
  explicit PiecewiseConstantFn(int nu) : nu_(nu) {}
  PiecewiseConstantFn(int nu, std::vector<double> breakpoints, std::vector<GridIndex> values);

  /// Builds from (position, signed jump) pairs; co-located jumps are summed and
  /// zero jumps dropped. Positions must be sorted.
  static PiecewiseConstantFn from_jumps(int nu, std::span<const std::pair<double, GridIndex>> jumps);

  int nu() const { return nu_; }
  double cell() const;
  std::span<const double> breakpoints() const { return breakpoints_; }
  std::span<const GridIndex> values() const { return values_; }
  std::size_t jump_count() const { return breakpoints_.size(); }
  GridIndex jump(std::size_t i) const { return values_[i + 1] - values_[i]; }

  /// u(x), right-continuous.
  GridIndex at(double x) const;
  /// u(x-).
  GridIndex left_limit(double x) const;
  /// Index of the breakpoint within tolerance_x of x, or -1.
  std::ptrdiff_t breakpoint_near(double x) const;

  GridIndex max_value() const;
  /// Exact integral in value units (sum of value * 2^-nu * length).
  double integral() const;

  friend bool operator==(const PiecewiseConstantFn&, const PiecewiseConstantFn&) = default;

 private:
  int nu_ = 0;
  std::vector<double> breakpoints_;
  std::vector<GridIndex> values_{0};
};

/// Total variation in grid units (multiples of 2^-nu).
std::int64_t total_variation(const PiecewiseConstantFn& f);

/// Total variation of the jumps with position strictly inside (a, b), or in
/// [a, b] when closed is true.
std::int64_t total_variation_on(const PiecewiseConstantFn& f, double a, double b, bool closed = false);

struct Interval {
  double lo;
  double hi;
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// {x : f(x) > w} as maximal half-open intervals. w must not be a grid value.
std::vector<Interval> level_set(const PiecewiseConstantFn& f, double w);

struct CoareaResult {
  std::int64_t lhs = 0;
  std::int64_t rhs = 0;
};

/// TV(f) against the sum over band midpoints of boundary-point counts.
CoareaResult coarea_check(const PiecewiseConstantFn& f);

struct Sample {
  double x;
  double value;
};

/// Grid-valued approximation of the step function taking samples[i].value on
/// [samples[i].x, samples[i+1].x) and 0 before the first sample. The last value
/// must be 0. For each band ((k-1)2^-nu, k 2^-nu] a level inside the band with
/// the fewest crossings is chosen; the output counts levels exceeded.
PiecewiseConstantFn approximate_initial_datum(std::span<const Sample> samples, int nu);

/// Exact L1 distance, in value units. The two functions may have different nu.
double l1_distance(const PiecewiseConstantFn& a, const PiecewiseConstantFn& b);

}  // namespace frontwave

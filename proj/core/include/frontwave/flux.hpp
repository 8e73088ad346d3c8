#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace frontwave {

/// A state value k meaning k * 2^-nu.
using GridIndex = std::int64_t;

/// Slopes of adjacent envelope segments closer than this are merged.
inline constexpr double kSlopeMergeTolerance = 1e-12;

/// The smooth flux f on the value interval [0, max_value].
struct FluxSpec {
  std::string name;
  std::function<double(double)> eval;
  std::optional<double> second_derivative_hint;
  double max_value = 1.0;
};

FluxSpec burgers_flux(double max_value = 1.0);
FluxSpec cubic_flux(double max_value = 1.0);
FluxSpec linear_flux(double max_value = 1.0);
FluxSpec buckley_flux(double max_value = 1.0);

/// Piecewise-affine flux through (u_i, f_i) samples, linearly extrapolated
/// beyond the first and last sample.
FluxSpec table_flux(std::vector<std::pair<double, double>> samples, double max_value = 1.0);

/// Reads a CSV of "u,f" rows (an optional header line is skipped).
FluxSpec table_flux_from_file(const std::string& path, double max_value = 1.0);

/// Resolves a CLI flux name: burgers, cubic, linear, buckley, table:<file>.
FluxSpec make_flux(const std::string& name, double max_value = 1.0);

/// f^nu: the interpolation of f on the grid 2^-nu Z restricted to [0, M].
class PiecewiseAffineFlux {
 public:
  PiecewiseAffineFlux() = default;
  PiecewiseAffineFlux(int nu, std::vector<double> grid_values);

  int nu() const { return nu_; }
  double cell() const { return cell_; }
  GridIndex max_index() const { return static_cast<GridIndex>(grid_values_.size()) - 1; }

  double value(GridIndex k) const { return grid_values_.at(static_cast<std::size_t>(k)); }
  /// Slope of f^nu on the cell [k, k+1].
  double slope(GridIndex k) const { return slopes_.at(static_cast<std::size_t>(k)); }

  std::span<const double> grid_values() const { return grid_values_; }
  std::span<const double> slopes() const { return slopes_; }

  /// (f^nu(b) - f^nu(a)) / ((b - a) 2^-nu). Symmetric in a, b; requires a != b.
  double chord_slope(GridIndex a, GridIndex b) const;

  /// f^nu at an arbitrary real u in [0, M].
  double interpolate(double u) const;

  double to_value(GridIndex k) const { return static_cast<double>(k) * cell_; }

 private:
  int nu_ = 0;
  double cell_ = 1.0;
  std::vector<double> grid_values_;
  std::vector<double> slopes_;
};

/// Samples f at k 2^-nu for k = 0 .. ceil(M 2^nu).
PiecewiseAffineFlux sample_flux(const FluxSpec& spec, int nu);

struct EnvelopeSegment {
  GridIndex start = 0;
  GridIndex end = 0;
  double slope = 0.0;

  GridIndex length() const { return end - start; }
  friend bool operator==(const EnvelopeSegment&, const EnvelopeSegment&) = default;
};

enum class EnvelopeKind { lower_convex, upper_concave };

/// Maximal constant-slope pieces of an envelope of f^nu over [a, b].
struct EnvelopeSegmentList {
  GridIndex a = 0;
  GridIndex b = 0;
  EnvelopeKind kind = EnvelopeKind::lower_convex;
  std::vector<EnvelopeSegment> segments;

  /// Envelope value at grid point k in [a, b].
  double value_at(const PiecewiseAffineFlux& flux, GridIndex k) const;
  /// The segment containing the band [lo, hi]; throws if it straddles two.
  const EnvelopeSegment& segment_containing(GridIndex lo, GridIndex hi) const;
};

EnvelopeSegmentList lower_convex_envelope(const PiecewiseAffineFlux& flux, GridIndex a, GridIndex b);
EnvelopeSegmentList upper_concave_envelope(const PiecewiseAffineFlux& flux, GridIndex a, GridIndex b);

/// Upper bound for sup |f''| on [0, M]: the hint if present, otherwise a
/// second-difference estimate on 2^(nu+4) cells inflated by 1.1.
double second_derivative_bound(const FluxSpec& spec, int nu = 8);

/// Lambda = max_k |slope_k|.
double lipschitz_bound(const PiecewiseAffineFlux& flux);

}  // namespace frontwave

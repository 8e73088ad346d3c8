#include "frontwave/flux.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace frontwave {

FluxSpec burgers_flux(double max_value) {
  return {"burgers", [](double u) { return 0.5 * u * u; }, 1.0, max_value};
}

FluxSpec cubic_flux(double max_value) {
  return {"cubic", [](double u) { return u * u * u / 3.0; }, 2.0 * max_value, max_value};
}

FluxSpec linear_flux(double max_value) {
  return {"linear", [](double u) { return u; }, 0.0, max_value};
}

FluxSpec buckley_flux(double max_value) {
  auto f = [](double u) {
    const double a = u * u;
    const double b = (1.0 - u) * (1.0 - u);
    return a / (a + b);
  };
  return {"buckley", f, std::nullopt, max_value};
}

FluxSpec table_flux(std::vector<std::pair<double, double>> samples, double max_value) {
  if (samples.size() < 2) {
    throw std::invalid_argument("table flux needs at least two samples");
  }
  std::sort(samples.begin(), samples.end());
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (!(samples[i].first > samples[i - 1].first)) {
      throw std::invalid_argument("table flux has duplicate u samples");
    }
  }
  auto f = [pts = std::move(samples)](double u) {
    auto it = std::upper_bound(pts.begin(), pts.end(), u,
                               [](double v, const auto& p) { return v < p.first; });
    std::size_t i = 0;
    if (it == pts.begin()) {
      i = 0;
    } else if (it == pts.end()) {
      i = pts.size() - 2;
    } else {
      i = static_cast<std::size_t>(it - pts.begin()) - 1;
    }
    const auto& [u0, f0] = pts[i];
    const auto& [u1, f1] = pts[i + 1];
    return f0 + (f1 - f0) * (u - u0) / (u1 - u0);
  };
  return {"table", f, std::nullopt, max_value};
}

FluxSpec table_flux_from_file(const std::string& path, double max_value) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open flux table: " + path);
  }
  std::vector<std::pair<double, double>> samples;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double u = 0.0;
    double fu = 0.0;
    if (!(row >> u >> fu)) {
      if (samples.empty()) continue;  // header
      throw std::invalid_argument("malformed row in flux table " + path + ": " + line);
    }
    samples.emplace_back(u, fu);
  }
  auto spec = table_flux(std::move(samples), max_value);
  spec.name = "table:" + path;
  return spec;
}

FluxSpec make_flux(const std::string& name, double max_value) {
  if (name == "burgers") return burgers_flux(max_value);
  if (name == "cubic") return cubic_flux(max_value);
  if (name == "linear") return linear_flux(max_value);
  if (name == "buckley") return buckley_flux(max_value);
  if (name.rfind("table:", 0) == 0) return table_flux_from_file(name.substr(6), max_value);
  throw std::invalid_argument("unknown flux: " + name);
}

PiecewiseAffineFlux::PiecewiseAffineFlux(int nu, std::vector<double> grid_values)
    : nu_(nu), cell_(std::ldexp(1.0, -nu)), grid_values_(std::move(grid_values)) {
  if (nu < 0) throw std::invalid_argument("refinement level must be >= 0");
  if (grid_values_.size() < 2) throw std::invalid_argument("flux needs at least one cell");
  const double scale = std::ldexp(1.0, nu);
  slopes_.resize(grid_values_.size() - 1);
  for (std::size_t k = 0; k + 1 < grid_values_.size(); ++k) {
    slopes_[k] = (grid_values_[k + 1] - grid_values_[k]) * scale;
  }
}

double PiecewiseAffineFlux::chord_slope(GridIndex a, GridIndex b) const {
  if (a == b) throw std::invalid_argument("chord over an empty band");
  if (a > b) std::swap(a, b);
  return (value(b) - value(a)) / (static_cast<double>(b - a) * cell_);
}

double PiecewiseAffineFlux::interpolate(double u) const {
  const double pos = u / cell_;
  auto k = static_cast<GridIndex>(std::floor(pos));
  k = std::clamp<GridIndex>(k, 0, max_index() - 1);
  const double theta = pos - static_cast<double>(k);
  return (1.0 - theta) * value(k) + theta * value(k + 1);
}

PiecewiseAffineFlux sample_flux(const FluxSpec& spec, int nu) {
  if (nu < 0 || nu > 40) throw std::invalid_argument("refinement level out of range");
  if (!spec.eval) throw std::invalid_argument("flux has no evaluator");
  const double scaled = spec.max_value * std::ldexp(1.0, nu);
  const auto n = static_cast<GridIndex>(std::ceil(scaled - 1e-9));
  if (n < 1) throw std::invalid_argument("flux domain [0, M] must contain at least one cell");
  std::vector<double> values(static_cast<std::size_t>(n) + 1);
  for (GridIndex k = 0; k <= n; ++k) {
    const double v = spec.eval(std::ldexp(static_cast<double>(k), -nu));
    if (!std::isfinite(v)) {
      throw std::invalid_argument("flux '" + spec.name + "' is not finite at u = " +
                                  std::to_string(std::ldexp(static_cast<double>(k), -nu)));
    }
    values[static_cast<std::size_t>(k)] = v;
  }
  return PiecewiseAffineFlux(nu, std::move(values));
}

namespace {

// Monotone-chain lower hull of (k, y_k), k = a..b, with collinear points dropped,
// followed by a merge of neighbouring slopes within kSlopeMergeTolerance.
std::vector<EnvelopeSegment> lower_hull(const PiecewiseAffineFlux& flux, GridIndex a, GridIndex b,
                                        double sign) {
  auto y = [&](GridIndex k) { return sign * flux.value(k); };
  std::vector<GridIndex> hull;
  hull.reserve(static_cast<std::size_t>(b - a + 1));
  for (GridIndex k = a; k <= b; ++k) {
    while (hull.size() >= 2) {
      const GridIndex p = hull[hull.size() - 2];
      const GridIndex q = hull.back();
      const double cross = static_cast<double>(q - p) * (y(k) - y(p)) -
                           (y(q) - y(p)) * static_cast<double>(k - p);
      if (cross <= 0.0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(k);
  }

  auto chord = [&](GridIndex s, GridIndex e) { return sign * flux.chord_slope(s, e); };
  std::vector<EnvelopeSegment> segs;
  for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
    EnvelopeSegment next{hull[i], hull[i + 1], chord(hull[i], hull[i + 1])};
    if (!segs.empty() && std::abs(next.slope - segs.back().slope) < kSlopeMergeTolerance) {
      segs.back().end = next.end;
      segs.back().slope = chord(segs.back().start, segs.back().end);
    } else {
      segs.push_back(next);
    }
  }
  // Report the slope of the envelope of the original (unnegated) flux.
  for (auto& s : segs) s.slope *= sign;
  return segs;
}

void check_interval(const PiecewiseAffineFlux& flux, GridIndex a, GridIndex b) {
  if (a >= b) throw std::invalid_argument("envelope interval must satisfy a < b");
  if (a < 0 || b > flux.max_index()) throw std::out_of_range("envelope interval outside flux grid");
}

}  // namespace

EnvelopeSegmentList lower_convex_envelope(const PiecewiseAffineFlux& flux, GridIndex a, GridIndex b) {
  check_interval(flux, a, b);
  return {a, b, EnvelopeKind::lower_convex, lower_hull(flux, a, b, 1.0)};
}

EnvelopeSegmentList upper_concave_envelope(const PiecewiseAffineFlux& flux, GridIndex a, GridIndex b) {
  check_interval(flux, a, b);
  return {a, b, EnvelopeKind::upper_concave, lower_hull(flux, a, b, -1.0)};
}

double EnvelopeSegmentList::value_at(const PiecewiseAffineFlux& flux, GridIndex k) const {
  for (const auto& s : segments) {
    if (k >= s.start && k <= s.end) {
      return flux.value(s.start) + s.slope * static_cast<double>(k - s.start) * flux.cell();
    }
  }
  throw std::out_of_range("grid point outside envelope interval");
}

const EnvelopeSegment& EnvelopeSegmentList::segment_containing(GridIndex lo, GridIndex hi) const {
  for (const auto& s : segments) {
    if (lo >= s.start && hi <= s.end) return s;
  }
  throw std::logic_error("band is not contained in a single envelope segment");
}

double second_derivative_bound(const FluxSpec& spec, int nu) {
  if (spec.second_derivative_hint) return *spec.second_derivative_hint;
  const std::int64_t n = std::int64_t{1} << std::clamp(nu + 4, 4, 24);
  const double h = spec.max_value / static_cast<double>(n);
  double best = 0.0;
  for (std::int64_t i = 1; i < n; ++i) {
    const double u = static_cast<double>(i) * h;
    const double d2 = (spec.eval(u + h) - 2.0 * spec.eval(u) + spec.eval(u - h)) / (h * h);
    if (std::isfinite(d2)) best = std::max(best, std::abs(d2));
  }
  return 1.1 * best;
}

double lipschitz_bound(const PiecewiseAffineFlux& flux) {
  double lam = 0.0;
  for (double s : flux.slopes()) lam = std::max(lam, std::abs(s));
  return lam;
}

}  // namespace frontwave

#include "frontwave/levelset.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace frontwave {

double LevelCurve::position(double t) const {
  if (polyline.empty()) throw std::logic_error("empty level curve");
  if (t <= polyline.front().first) return polyline.front().second;
  for (std::size_t i = 0; i + 1 < polyline.size(); ++i) {
    const auto [t0, x0] = polyline[i];
    const auto [t1, x1] = polyline[i + 1];
    if (t <= t1) return t1 > t0 ? x0 + (x1 - x0) * (t - t0) / (t1 - t0) : x1;
  }
  return polyline.back().second;
}

GridIndex band_of_midpoint(double w, int nu) {
  const double scaled = std::ldexp(w, nu) - 0.5;
  const double r = std::round(scaled);
  if (std::abs(scaled - r) > 1e-9 || r < 0.0) {
    throw std::invalid_argument("level " + std::to_string(w) + " is not a band midpoint at nu=" + std::to_string(nu));
  }
  return static_cast<GridIndex>(r);
}

std::vector<LevelCurve> extract_level_curves(const WaveAtlas& atlas, double w) {
  const auto& tl = atlas.timeline();
  const GridIndex band = band_of_midpoint(w, tl.nu());
  std::vector<LevelCurve> out;
  for (const auto& r : atlas.records()) {
    if (r.band != band) continue;
    LevelCurve c;
    c.j = static_cast<int>(out.size()) + 1;
    c.w = w;
    c.wave = r.id;
    c.t_end = r.death_time;
    c.normal_sign = c.j % 2 == 1 ? 1 : -1;
    for (const auto& seg : r.segments) c.polyline.emplace_back(seg.t_start, atlas.position(r.id, seg.t_start));
    const double stop = std::min(r.death_time, tl.t_max());
    if (stop > c.polyline.back().first) c.polyline.emplace_back(stop, atlas.position(r.id, stop));
    out.push_back(std::move(c));
  }
  return out;
}

CoareaSlice coarea_time_slice(const WaveAtlas& atlas, double t) {
  const auto& tl = atlas.timeline();
  CoareaSlice out;
  out.lhs = total_variation(sample_solution(tl, t));
  const double h = tl.flux().cell();
  for (GridIndex b = 0; b < tl.flux().max_index(); ++b) {
    for (const auto& c : extract_level_curves(atlas, (static_cast<double>(b) + 0.5) * h)) {
      if (t < c.t_end) ++out.rhs;
    }
  }
  return out;
}

WaveId s_parametrization(const WaveAtlas& atlas, int j, double w) {
  const auto& u0 = atlas.timeline().initial();
  band_of_midpoint(w, u0.nu());
  const double wu = w / u0.cell();
  const auto vals = u0.values();
  std::int64_t tv_left = 0;
  int seen = 0;
  for (std::size_t i = 0; i < u0.jump_count(); ++i) {
    const auto left = static_cast<double>(vals[i]);
    const auto right = static_cast<double>(vals[i + 1]);
    if (std::min(left, right) < wu && wu < std::max(left, right) && ++seen == j) {
      return tv_left + static_cast<WaveId>(std::ceil(std::abs(wu - left)));
    }
    tv_left += std::abs(u0.jump(i));
  }
  throw std::out_of_range("no level curve j=" + std::to_string(j) + " at w=" + std::to_string(w));
}

std::pair<int, double> inverse_parametrization(const WaveAtlas& atlas, WaveId s) {
  if (s < 1 || s > atlas.total_s()) throw std::out_of_range("s-unit outside (0, total_s]");
  const auto& r = atlas.record(s);
  const GridIndex u = atlas.value(s);
  const GridIndex band = r.sign > 0 ? u - 1 : u;
  int j = 1;
  for (WaveId k = 1; k < s; ++k) {
    const GridIndex uk = atlas.value(k);
    if ((atlas.record(k).sign > 0 ? uk - 1 : uk) == band) ++j;
  }
  return {j, (static_cast<double>(band) + 0.5) * atlas.cell()};
}

SetMetric parse_set_metric(const std::string& name) {
  if (name == "hausdorff") return SetMetric::hausdorff;
  if (name == "l1") return SetMetric::l1;
  throw std::invalid_argument("unknown set metric: " + name);
}

namespace {

bool inside(const std::vector<Interval>& s, double x) {
  return std::any_of(s.begin(), s.end(), [x](const Interval& i) { return i.lo <= x && x < i.hi; });
}

double distance_to(const std::vector<Interval>& s, double x) {
  double d = kInfinity;
  for (const auto& i : s) {
    if (i.lo <= x && x <= i.hi) return 0.0;
    d = std::min({d, std::abs(x - i.lo), std::abs(x - i.hi)});
  }
  return d;
}

double directed_hausdorff(const std::vector<Interval>& a, const std::vector<Interval>& b) {
  double d = 0.0;
  for (const auto& i : a) {
    d = std::max({d, distance_to(b, i.lo), distance_to(b, i.hi)});
  }
  for (std::size_t k = 0; k + 1 < b.size(); ++k) {
    const double m = 0.5 * (b[k].hi + b[k + 1].lo);
    for (const auto& i : a) {
      if (i.lo <= m && m <= i.hi) d = std::max(d, distance_to(b, m));
    }
  }
  return d;
}

}  // namespace

double interval_set_distance(const std::vector<Interval>& a, const std::vector<Interval>& b, SetMetric metric) {
  if (metric == SetMetric::hausdorff) {
    if (a.empty() && b.empty()) return 0.0;
    if (a.empty() || b.empty()) return kInfinity;
    return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
  }
  std::vector<double> xs;
  for (const auto& i : a) xs.insert(xs.end(), {i.lo, i.hi});
  for (const auto& i : b) xs.insert(xs.end(), {i.lo, i.hi});
  std::sort(xs.begin(), xs.end());
  double acc = 0.0;
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    const double len = xs[k + 1] - xs[k];
    if (len <= 0.0) continue;
    const double m = 0.5 * (xs[k] + xs[k + 1]);
    if (inside(a, m) != inside(b, m)) acc += len;
  }
  return acc;
}

double level_set_distance(const Timeline& a, const Timeline& b, double w, double t, SetMetric metric) {
  return interval_set_distance(level_set(sample_solution(a, t), w), level_set(sample_solution(b, t), w), metric);
}

double level_set_distance_sup(const Timeline& a, const Timeline& b, double w, SetMetric metric, int samples) {
  if (samples < 1) throw std::invalid_argument("need at least one time sample");
  const double t_end = std::min(a.t_max(), b.t_max());
  double d = 0.0;
  for (int i = 1; i <= samples; ++i) {
    d = std::max(d, level_set_distance(a, b, w, t_end * i / samples, metric));
  }
  return d;
}

std::string level_curves_csv(const std::vector<LevelCurve>& curves) {
  std::ostringstream os;
  os.precision(17);
  os << "w,j,t,x,normal_sign\n";
  for (const auto& c : curves) {
    for (const auto& [t, x] : c.polyline) os << c.w << ',' << c.j << ',' << t << ',' << x << ',' << c.normal_sign << '\n';
  }
  return os.str();
}

}  // namespace frontwave

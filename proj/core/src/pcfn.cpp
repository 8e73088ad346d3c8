#include "frontwave/pcfn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace frontwave {

PiecewiseConstantFn::PiecewiseConstantFn(int nu, std::vector<double> breakpoints,
                                         std::vector<GridIndex> values)
    : nu_(nu), breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (values_.size() != breakpoints_.size() + 1) {
    throw std::invalid_argument("step function needs one more value than breakpoints");
  }
  if (values_.front() != 0 || values_.back() != 0) {
    throw std::invalid_argument("step function must vanish outside its breakpoints");
  }
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    if (!std::isfinite(breakpoints_[i])) throw std::invalid_argument("non-finite breakpoint");
    if (i > 0 && !(breakpoints_[i] > breakpoints_[i - 1])) {
      throw std::invalid_argument("breakpoints must be strictly increasing");
    }
    if (values_[i] == values_[i + 1]) throw std::invalid_argument("spurious breakpoint");
  }
}

PiecewiseConstantFn PiecewiseConstantFn::from_jumps(int nu,
                                                    std::span<const std::pair<double, GridIndex>> jumps) {
  std::vector<double> bps;
  std::vector<GridIndex> vals{0};
  GridIndex current = 0;
  std::size_t i = 0;
  while (i < jumps.size()) {
    const double x = jumps[i].first;
    GridIndex delta = 0;
    std::size_t j = i;
    while (j < jumps.size() && jumps[j].first - x <= tolerance_x(x)) {
      if (j > i && jumps[j].first < jumps[j - 1].first) throw std::invalid_argument("unsorted jumps");
      delta += jumps[j].second;
      ++j;
    }
    if (j < jumps.size() && jumps[j].first < jumps[j - 1].first) throw std::invalid_argument("unsorted jumps");
    if (delta != 0) {
      current += delta;
      bps.push_back(x);
      vals.push_back(current);
    }
    i = j;
  }
  return PiecewiseConstantFn(nu, std::move(bps), std::move(vals));
}

double PiecewiseConstantFn::cell() const { return std::ldexp(1.0, -nu_); }

GridIndex PiecewiseConstantFn::at(double x) const {
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
  return values_[static_cast<std::size_t>(it - breakpoints_.begin())];
}

GridIndex PiecewiseConstantFn::left_limit(double x) const {
  const auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), x);
  return values_[static_cast<std::size_t>(it - breakpoints_.begin())];
}

std::ptrdiff_t PiecewiseConstantFn::breakpoint_near(double x) const {
  const double tol = tolerance_x(x);
  auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), x - tol);
  if (it != breakpoints_.end() && *it <= x + tol) return it - breakpoints_.begin();
  return -1;
}

GridIndex PiecewiseConstantFn::max_value() const {
  GridIndex m = 0;
  for (GridIndex v : values_) m = std::max(m, v < 0 ? -v : v);
  return m;
}

double PiecewiseConstantFn::integral() const {
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i) {
    acc += static_cast<double>(values_[i + 1]) * (breakpoints_[i + 1] - breakpoints_[i]);
  }
  return acc * cell();
}

std::int64_t total_variation(const PiecewiseConstantFn& f) {
  std::int64_t tv = 0;
  for (std::size_t i = 0; i < f.jump_count(); ++i) tv += std::abs(f.jump(i));
  return tv;
}

std::int64_t total_variation_on(const PiecewiseConstantFn& f, double a, double b, bool closed) {
  std::int64_t tv = 0;
  const auto bps = f.breakpoints();
  for (std::size_t i = 0; i < bps.size(); ++i) {
    const bool inside = closed ? (bps[i] >= a && bps[i] <= b) : (bps[i] > a && bps[i] < b);
    if (inside) tv += std::abs(f.jump(i));
  }
  return tv;
}

std::vector<Interval> level_set(const PiecewiseConstantFn& f, double w) {
  const double scaled = w / f.cell();
  if (scaled == std::round(scaled)) {
    throw std::invalid_argument("level query on a grid value is ambiguous");
  }
  std::vector<Interval> out;
  const auto bps = f.breakpoints();
  const auto vals = f.values();
  bool inside = false;
  double start = 0.0;
  for (std::size_t i = 0; i < bps.size(); ++i) {
    const bool above = static_cast<double>(vals[i + 1]) > scaled;
    if (above && !inside) {
      start = bps[i];
      inside = true;
    } else if (!above && inside) {
      out.push_back({start, bps[i]});
      inside = false;
    }
  }
  return out;
}

CoareaResult coarea_check(const PiecewiseConstantFn& f) {
  CoareaResult r;
  r.lhs = total_variation(f);
  const GridIndex top = f.max_value();
  GridIndex bottom = 0;
  for (GridIndex v : f.values()) bottom = std::min(bottom, v);
  for (GridIndex k = bottom + 1; k <= top; ++k) {
    const double w = (static_cast<double>(k) - 0.5) * f.cell();
    r.rhs += 2 * static_cast<std::int64_t>(level_set(f, w).size());
  }
  return r;
}

namespace {

std::int64_t crossings(std::span<const double> seq, double w) {
  std::int64_t n = 0;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    if ((seq[i] > w) != (seq[i + 1] > w)) ++n;
  }
  return n;
}

}  // namespace

PiecewiseConstantFn approximate_initial_datum(std::span<const Sample> samples, int nu) {
  if (nu < 0) throw std::invalid_argument("refinement level must be >= 0");
  std::vector<double> seq{0.0};
  double vmax = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!std::isfinite(samples[i].x) || !std::isfinite(samples[i].value)) {
      throw std::invalid_argument("non-finite sample");
    }
    if (i > 0 && !(samples[i].x > samples[i - 1].x)) throw std::invalid_argument("samples must be sorted");
    if (samples[i].value < 0.0) throw std::invalid_argument("sample values must be >= 0");
    seq.push_back(samples[i].value);
    vmax = std::max(vmax, samples[i].value);
  }
  if (!samples.empty() && samples.back().value != 0.0) {
    throw std::invalid_argument("last sample must be 0 (compact support)");
  }

  const double h = std::ldexp(1.0, -nu);
  const auto bands = static_cast<GridIndex>(std::ceil(vmax / h - 1e-12));
  std::vector<double> sorted(seq.begin(), seq.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  std::vector<double> levels;
  for (GridIndex k = 1; k <= bands; ++k) {
    const double lo = static_cast<double>(k - 1) * h;
    const double hi = static_cast<double>(k) * h;
    std::vector<double> cuts{lo};
    for (double v : sorted) {
      if (v > lo && v < hi) cuts.push_back(v);
    }
    cuts.push_back(hi);
    const double mid = 0.5 * (lo + hi);
    double best = mid;
    std::int64_t best_count = -1;
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
      const double w = 0.5 * (cuts[c] + cuts[c + 1]);
      const std::int64_t n = crossings(seq, w);
      if (best_count < 0 || n < best_count ||
          (n == best_count && std::abs(w - mid) < std::abs(best - mid))) {
        best = w;
        best_count = n;
      }
    }
    levels.push_back(best);
  }

  std::vector<std::pair<double, GridIndex>> jumps;
  GridIndex prev = 0;
  for (const auto& s : samples) {
    GridIndex v = 0;
    for (double w : levels) v += s.value > w ? 1 : 0;
    if (v != prev) jumps.emplace_back(s.x, v - prev);
    prev = v;
  }
  return PiecewiseConstantFn::from_jumps(nu, jumps);
}

double l1_distance(const PiecewiseConstantFn& a, const PiecewiseConstantFn& b) {
  std::vector<double> xs(a.breakpoints().begin(), a.breakpoints().end());
  xs.insert(xs.end(), b.breakpoints().begin(), b.breakpoints().end());
  std::sort(xs.begin(), xs.end());
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const double len = xs[i + 1] - xs[i];
    if (len <= 0.0) continue;
    const double mid = 0.5 * (xs[i] + xs[i + 1]);
    const double va = static_cast<double>(a.at(mid)) * a.cell();
    const double vb = static_cast<double>(b.at(mid)) * b.cell();
    acc += std::abs(va - vb) * len;
  }
  return acc;
}

}  // namespace frontwave

#pragma once

// Upper Minkowski (box-counting) dimension estimation for graphs of sampled
// functions, with stability probes: bi-Lipschitz invariance and finite
// unions.
//
// Counting is by column stacking on a grid anchored at the origin: for each
// epsilon-column the vertical extent of the samples determines the stack of
// boxes, which is exact for graphs of continuous functions sampled densely.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "symharm/regularity.hpp"

namespace symharm {

struct PlanarPoint {
  double x = 0.0;
  double y = 0.0;
};

struct BoxCountEstimate {
  std::vector<double> epsilons;   // decreasing
  std::vector<int64_t> counts;    // boxes per level
  double dimension = 0.0;         // set by minkowski_fit
  double r2 = 0.0;
  double window_min = 0.0;        // epsilon range used by the fit
  double window_max = 0.0;
  bool fitted = false;
};

namespace detail {

// Per-column [row_min, row_max] ranges of one connected sample set.
using ColumnIntervals = std::map<int64_t, std::pair<int64_t, int64_t>>;

inline void add_row_range(ColumnIntervals& cols, int64_t cx, double y0,
                          double y1, double eps) {
  if (y0 > y1) std::swap(y0, y1);
  const int64_t rlo = static_cast<int64_t>(std::floor(y0 / eps));
  const int64_t rhi = static_cast<int64_t>(std::floor(y1 / eps));
  auto [it, fresh] = cols.try_emplace(cx, std::pair{rlo, rhi});
  if (!fresh) {
    it->second.first = std::min(it->second.first, rlo);
    it->second.second = std::max(it->second.second, rhi);
  }
}

// The samples are taken as a polyline: each segment between consecutive
// points is clipped into the columns it crosses, so curves that run steeply
// through a column (e.g. after a rotation) are still counted there.
inline ColumnIntervals column_intervals(std::span<const PlanarPoint> pts,
                                        double eps) {
  ColumnIntervals cols;
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    PlanarPoint p = pts[i], q = pts[i + 1];
    if (p.x > q.x) std::swap(p, q);
    const int64_t c0 = static_cast<int64_t>(std::floor(p.x / eps));
    const int64_t c1 = static_cast<int64_t>(std::floor(q.x / eps));
    if (c0 == c1) {
      add_row_range(cols, c0, p.y, q.y, eps);
      continue;
    }
    double y_prev = p.y;
    for (int64_t c = c0; c < c1; ++c) {
      const double xb = static_cast<double>(c + 1) * eps;
      const double t = (xb - p.x) / (q.x - p.x);
      const double yb = p.y + t * (q.y - p.y);
      add_row_range(cols, c, y_prev, yb, eps);
      y_prev = yb;
    }
    add_row_range(cols, c1, y_prev, q.y, eps);
  }
  if (pts.size() == 1)
    add_row_range(cols, static_cast<int64_t>(std::floor(pts[0].x / eps)),
                  pts[0].y, pts[0].y, eps);
  return cols;
}

inline int64_t count_stacked(const ColumnIntervals& cols) {
  int64_t total = 0;
  for (const auto& [cx, range] : cols)
    total += range.second - range.first + 1;
  return total;
}

inline double mean_spacing(std::span<const PlanarPoint> pts) {
  double lo = pts.front().x, hi = pts.front().x;
  for (const auto& p : pts) {
    lo = std::min(lo, p.x);
    hi = std::max(hi, p.x);
  }
  return (hi - lo) / std::max<size_t>(1, pts.size() - 1);
}

}  // namespace detail

/// Column-stacked box counts of a sampled graph at the given scales.
/// Each scale must be at least twice the mean sample spacing.
inline BoxCountEstimate box_count(std::span<const PlanarPoint> points,
                                  std::span<const double> eps_levels) {
  if (points.size() < 2)
    throw std::invalid_argument("box_count: need at least 2 points");
  if (eps_levels.size() < 2)
    throw std::invalid_argument("box_count: need at least 2 levels");
  const double spacing = detail::mean_spacing(points);
  BoxCountEstimate est;
  est.epsilons.assign(eps_levels.begin(), eps_levels.end());
  std::sort(est.epsilons.begin(), est.epsilons.end(), std::greater<>());
  est.counts.reserve(est.epsilons.size());
  for (double eps : est.epsilons) {
    if (!(eps > 0.0) || eps < 2.0 * spacing)
      throw std::invalid_argument(
          "box_count: scale below sample resolution (need eps >= 2x spacing)");
    est.counts.push_back(
        detail::count_stacked(detail::column_intervals(points, eps)));
  }
  return est;
}

/// Least-squares slope of log N(eps) against log(1/eps) over the levels
/// inside [window_min, window_max]; needs >= 4 levels in the window.
inline BoxCountEstimate minkowski_fit(BoxCountEstimate est, double window_min,
                                      double window_max) {
  std::vector<double> xs, ys;
  for (size_t i = 0; i < est.epsilons.size(); ++i) {
    const double e = est.epsilons[i];
    if (e >= window_min && e <= window_max) {
      xs.push_back(1.0 / e);
      ys.push_back(static_cast<double>(est.counts[i]));
    }
  }
  if (xs.size() < 4)
    throw std::invalid_argument("minkowski_fit: need >= 4 levels in window");
  const DecayFit fit = decay_fit(xs, ys);
  est.dimension = fit.slope;
  est.r2 = fit.r2;
  est.window_min = window_min;
  est.window_max = window_max;
  est.fitted = true;
  return est;
}

/// Default fit window: drop the two coarsest levels.
inline BoxCountEstimate minkowski_fit(BoxCountEstimate est) {
  if (est.epsilons.size() < 6)
    throw std::invalid_argument("minkowski_fit: need >= 6 levels by default");
  return minkowski_fit(std::move(est), 0.0,
                       est.epsilons[2] * (1.0 + 1e-12));
}

/// Dyadic scale ladder span/2^j for j = j_min..j_max.
inline std::vector<double> dyadic_scales(double span, int j_min, int j_max) {
  std::vector<double> v;
  for (int j = j_min; j <= j_max; ++j) v.push_back(span * std::pow(2.0, -j));
  return v;
}

using PlanarMap = std::function<PlanarPoint(const PlanarPoint&)>;

namespace detail {

// Crude distortion estimate of a planar map over the bounding box of the
// data: extreme singular values of finite-difference Jacobians on a grid.
inline std::pair<double, double> map_distortion(
    const PlanarMap& map, std::span<const PlanarPoint> pts) {
  double x0 = pts.front().x, x1 = x0, y0 = pts.front().y, y1 = y0;
  for (const auto& p : pts) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  const double hx = std::max(1e-6, 1e-6 * (x1 - x0));
  const double hy = std::max(1e-6, 1e-6 * (y1 - y0));
  double smin = 1e300, smax = 0.0;
  const int G = 16;
  for (int i = 0; i <= G; ++i) {
    for (int j = 0; j <= G; ++j) {
      const double x = x0 + (x1 - x0) * i / G;
      const double y = y0 + (y1 - y0) * j / G;
      const auto fxp = map({x + hx, y}), fxm = map({x - hx, y});
      const auto fyp = map({x, y + hy}), fym = map({x, y - hy});
      const double a = (fxp.x - fxm.x) / (2 * hx), b = (fyp.x - fym.x) / (2 * hy);
      const double c = (fxp.y - fxm.y) / (2 * hx), d = (fyp.y - fym.y) / (2 * hy);
      // singular values of [[a,b],[c,d]]
      const double t1 = a * a + b * b + c * c + d * d;
      const double det = a * d - b * c;
      const double disc = std::sqrt(std::max(0.0, t1 * t1 - 4.0 * det * det));
      smax = std::max(smax, std::sqrt(0.5 * (t1 + disc)));
      smin = std::min(smin, std::sqrt(std::max(0.0, 0.5 * (t1 - disc))));
    }
  }
  return {smin, smax};
}

}  // namespace detail

struct BilipschitzProbe {
  BoxCountEstimate before;
  BoxCountEstimate after;
  double difference = 0.0;
};

/// Box dimension before and after a bi-Lipschitz planar map; the map's
/// distortion on the data's bounding box must be at most 10.
inline BilipschitzProbe bilipschitz_probe(std::span<const PlanarPoint> points,
                                          const PlanarMap& map,
                                          std::span<const double> eps_levels) {
  const auto [smin, smax] = detail::map_distortion(map, points);
  if (!(smax <= 10.0) || !(smin >= 0.1))
    throw std::invalid_argument(
        "bilipschitz_probe: map distortion exceeds 10 on the data range");
  std::vector<PlanarPoint> mapped(points.size());
  for (size_t i = 0; i < points.size(); ++i) mapped[i] = map(points[i]);
  BilipschitzProbe probe;
  probe.before = minkowski_fit(box_count(points, eps_levels));
  probe.after = minkowski_fit(box_count(mapped, eps_levels));
  probe.difference = std::abs(probe.after.dimension - probe.before.dimension);
  return probe;
}

struct UnionProbe {
  BoxCountEstimate a;
  BoxCountEstimate b;
  BoxCountEstimate joint;
};

/// Dimensions of two sample sets and of their union, counted on the same
/// absolute grid so per-column box sets merge exactly.
inline UnionProbe union_probe(std::span<const PlanarPoint> points_a,
                              std::span<const PlanarPoint> points_b,
                              std::span<const double> eps_levels) {
  UnionProbe probe;
  probe.a = minkowski_fit(box_count(points_a, eps_levels));
  probe.b = minkowski_fit(box_count(points_b, eps_levels));
  probe.joint = probe.a;  // reuse level layout
  probe.joint.counts.clear();
  for (double eps : probe.joint.epsilons) {
    const auto ca = detail::column_intervals(points_a, eps);
    const auto cb = detail::column_intervals(points_b, eps);
    int64_t total = 0;
    for (const auto& [cx, ra] : ca) {
      const auto it = cb.find(cx);
      if (it == cb.end()) {
        total += ra.second - ra.first + 1;
      } else {
        const auto& rb = it->second;
        const int64_t la = ra.second - ra.first + 1;
        const int64_t lb = rb.second - rb.first + 1;
        const int64_t olo = std::max(ra.first, rb.first);
        const int64_t ohi = std::min(ra.second, rb.second);
        total += la + lb - std::max<int64_t>(0, ohi - olo + 1);
      }
    }
    for (const auto& [cx, rb] : cb)
      if (!ca.contains(cx)) total += rb.second - rb.first + 1;
    probe.joint.counts.push_back(total);
  }
  probe.joint = minkowski_fit(std::move(probe.joint));
  return probe;
}

/// Graph of a sampled radial profile (real part) as planar points.
inline std::vector<PlanarPoint> graph_points(const RadialProfile& f,
                                             bool imaginary = false) {
  std::vector<PlanarPoint> pts(f.thetas.size());
  for (size_t i = 0; i < f.thetas.size(); ++i)
    pts[i] = {f.thetas[i],
              imaginary ? f.values[i].imag() : f.values[i].real()};
  return pts;
}

}  // namespace symharm

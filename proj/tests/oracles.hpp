#pragma once

// Reference computations written independently of the library code paths.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "mincop/copula.hpp"

namespace oracle {

using mincop::Point;

// Sum over cells of mass times the covered fraction of the cell.
inline double checkerboard_cdf(const mincop::CheckerboardCopula& cb, const Point& u) {
  const auto& cuts = cb.cuts();
  const auto& shape = cb.shape();
  const std::size_t d = shape.size();
  double total = 0.0;
  std::vector<std::size_t> idx(d, 0);
  for (std::size_t cell = 0; cell < cb.cell_count(); ++cell) {
    std::size_t rest = cell;
    for (std::size_t k = d; k-- > 0;) {
      idx[k] = rest % shape[k];
      rest /= shape[k];
    }
    double frac = 1.0;
    for (std::size_t k = 0; k < d && frac > 0.0; ++k) {
      const double lo = cuts[k][idx[k]];
      const double hi = cuts[k][idx[k] + 1];
      frac *= std::clamp((u[k] - lo) / (hi - lo), 0.0, 1.0);
    }
    total += cb.masses()[cell] * frac;
  }
  return total;
}

// Length fraction of each segment inside [0,u], from the per-coordinate
// linear constraints.
inline double segment_cdf(const std::vector<mincop::Segment>& segs, const Point& u) {
  double total = 0.0;
  for (const auto& s : segs) {
    double t0 = 0.0;
    double t1 = 1.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
      const double a = s.start[k];
      const double b = s.end[k] - s.start[k];
      if (b > 0) {
        t1 = std::min(t1, (u[k] - a) / b);
      } else if (b < 0) {
        t0 = std::max(t0, (u[k] - a) / b);
      } else if (a > u[k]) {
        t1 = -1.0;
      }
    }
    if (t1 > t0) total += s.mass * (t1 - t0);
  }
  return total;
}

inline double upper_frechet(const Point& u) { return *std::min_element(u.begin(), u.end()); }

inline double lower_frechet_bound(const Point& u) {
  double s = 0.0;
  for (double x : u) s += x;
  return std::max(s - static_cast<double>(u.size()) + 1.0, 0.0);
}

inline double product(const Point& u) {
  double p = 1.0;
  for (double x : u) p *= x;
  return p;
}

inline double clayton_extreme(const Point& u) {
  const double d = static_cast<double>(u.size());
  double s = 0.0;
  for (double x : u) s += std::pow(x, 1.0 / (d - 1.0));
  return std::pow(std::max(s - (d - 1.0), 0.0), d - 1.0);
}

inline double kendall_min(int d) { return -1.0 / (std::pow(2.0, d - 1) - 1.0); }

// Box mass from a cdf by inclusion-exclusion over the 2^d corners.
template <class F>
double box_from_cdf(F&& cdf, const Point& lo, const Point& hi) {
  const std::size_t d = lo.size();
  double total = 0.0;
  Point corner(d);
  for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
    int lows = 0;
    for (std::size_t k = 0; k < d; ++k) {
      const bool take_lo = (mask >> k) & 1U;
      corner[k] = take_lo ? lo[k] : hi[k];
      lows += take_lo;
    }
    total += (lows % 2 ? -1.0 : 1.0) * cdf(corner);
  }
  return total;
}

inline std::vector<Point> random_points(int d, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<Point> pts(static_cast<std::size_t>(n), Point(static_cast<std::size_t>(d)));
  for (auto& p : pts)
    for (auto& x : p) x = unif(rng);
  return pts;
}

inline std::vector<Point> uniform_grid(int d, int n) {
  std::vector<Point> pts;
  Point p(static_cast<std::size_t>(d), 0.0);
  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  while (true) {
    for (std::size_t k = 0; k < idx.size(); ++k) p[k] = static_cast<double>(idx[k]) / n;
    pts.push_back(p);
    std::size_t k = idx.size();
    while (k-- > 0) {
      if (++idx[k] <= n) break;
      idx[k] = 0;
    }
    if (k == static_cast<std::size_t>(-1)) break;
  }
  return pts;
}

}  // namespace oracle

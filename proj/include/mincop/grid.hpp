#pragma once

// Tensor grids: per-axis vertex lists, vertex iteration and cell differencing.

#include <cstddef>
#include <string>
#include <vector>

#include "mincop/copula.hpp"

namespace mincop {

/// Evaluation grid used by the order and certificate scans.
struct GridSpec {
  /// Uniform vertices per axis (including 0 and 1); 0 selects the default for
  /// the dimension: 33 for d <= 3, 17 for d = 4, 9 above.
  int vertices_per_axis = 0;
  /// Merge in the copulas' own breakpoints (cuts, segment endpoints, a and b).
  bool include_breakpoints = true;
  /// Use only breakpoints; the vertex grid of a checkerboard, for example.
  bool breakpoints_only = false;
};

int default_vertices(int dim);

std::vector<double> uniform_axis(int vertices);

/// Sorted union of the two axis lists; values closer than 1e-12 are merged.
std::vector<double> merge_axis(const std::vector<double>& a, const std::vector<double>& b);
Axes merge_axes(const Axes& a, const Axes& b);

/// Per-axis breakpoints of the representation, always containing 0 and 1.
Axes breakpoints(const Copula& c);

/// Grid for `spec` over the given copulas.
Axes evaluation_axes(int dim, const GridSpec& spec, const std::vector<const Copula*>& copulas);

std::string describe_axes(const Axes& axes);

std::size_t vertex_count(const Axes& axes);

/// Calls f(point) for every vertex, last axis fastest.
template <class F>
void for_each_vertex(const Axes& axes, F&& f) {
  const std::size_t d = axes.size();
  std::vector<std::size_t> idx(d, 0);
  Point u(d);
  for (std::size_t k = 0; k < d; ++k) u[k] = axes[k][0];
  while (true) {
    f(static_cast<const Point&>(u));
    std::size_t k = d;
    while (k > 0) {
      --k;
      if (++idx[k] < axes[k].size()) {
        u[k] = axes[k][idx[k]];
        break;
      }
      idx[k] = 0;
      u[k] = axes[k][0];
      if (k == 0) return;
    }
    if (d == 0) return;
  }
}

/// cdf at every vertex, row-major.
std::vector<double> cdf_table(const Copula& c, const Axes& axes);

/// Turns a row-major vertex table of a distribution function into the masses
/// of the grid cells by differencing along every axis.
std::vector<double> difference_table(std::vector<double> table, const Axes& axes);

}  // namespace mincop

#include "mincop/grid.hpp"

#include <algorithm>
#include <sstream>
#include <variant>

#include "mincop/core.hpp"
#include "mincop/errors.hpp"

namespace mincop {

namespace {

constexpr double kMergeTol = 1e-12;

std::vector<double> unit_axis() { return {0.0, 1.0}; }

void normalize_axis(std::vector<double>& axis) {
  std::sort(axis.begin(), axis.end());
  std::vector<double> out;
  out.reserve(axis.size());
  for (double x : axis) {
    x = std::clamp(x, 0.0, 1.0);
    if (out.empty() || x - out.back() > kMergeTol) {
      out.push_back(x);
    }
  }
  // Keep the exact endpoints.
  out.front() = 0.0;
  if (1.0 - out.back() <= kMergeTol) {
    out.back() = 1.0;
  } else {
    out.push_back(1.0);
  }
  axis = std::move(out);
}

}  // namespace

int default_vertices(int dim) {
  if (dim <= 3) return 33;
  if (dim == 4) return 17;
  return 9;
}

std::vector<double> uniform_axis(int vertices) {
  if (vertices < 2) throw InputError("a grid axis needs at least two vertices");
  std::vector<double> axis(static_cast<std::size_t>(vertices));
  for (int j = 0; j < vertices; ++j) axis[static_cast<std::size_t>(j)] = double(j) / (vertices - 1);
  axis.back() = 1.0;
  return axis;
}

std::vector<double> merge_axis(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(a);
  out.insert(out.end(), b.begin(), b.end());
  out.push_back(0.0);
  normalize_axis(out);
  return out;
}

Axes merge_axes(const Axes& a, const Axes& b) {
  if (a.size() != b.size()) throw InputError("cannot merge grids of different dimension");
  Axes out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = merge_axis(a[k], b[k]);
  return out;
}

Axes breakpoints(const Copula& c) {
  const auto d = static_cast<std::size_t>(c.dim());
  const Node& n = c.node();
  Axes out = std::visit(
      [&](const auto& p) -> Axes {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, std::shared_ptr<const CheckerboardCopula>>) {
          return p->cuts();
        } else if constexpr (std::is_same_v<T, std::shared_ptr<const SegmentCopula>>) {
          Axes axes(d, unit_axis());
          for (const auto& s : p->segments()) {
            for (std::size_t k = 0; k < d; ++k) {
              axes[k].push_back(s.start[k]);
              axes[k].push_back(s.end[k]);
            }
          }
          return axes;
        } else if constexpr (std::is_same_v<T, node::Reflected>) {
          Axes axes = breakpoints(p.inner);
          for (int k : p.k.zero_based()) {
            for (double& x : axes[static_cast<std::size_t>(k)]) x = 1.0 - x;
          }
          return axes;
        } else if constexpr (std::is_same_v<T, node::Permuted>) {
          Axes inner = breakpoints(p.inner);
          Axes axes(d);
          for (std::size_t i = 0; i < d; ++i)
            axes[i] = inner[static_cast<std::size_t>(p.sigma[static_cast<int>(i)])];
          return axes;
        } else if constexpr (std::is_same_v<T, node::GlueProduct>) {
          Axes axes = breakpoints(p.left);
          Axes right = breakpoints(p.right);
          axes.insert(axes.end(), right.begin(), right.end());
          return axes;
        } else if constexpr (std::is_same_v<T, node::Mixture>) {
          Axes axes(d, unit_axis());
          for (const auto& part : p.parts) axes = merge_axes(axes, breakpoints(part.first));
          return axes;
        } else if constexpr (std::is_same_v<T, node::Refuted>) {
          Axes axes = breakpoints(p.inner);
          for (std::size_t k = 0; k < d; ++k) {
            axes[k].push_back(p.a[k]);
            axes[k].push_back(p.b[k]);
          }
          return axes;
        } else if constexpr (std::is_same_v<T, node::LowerFrechet>) {
          return Axes(2, unit_axis());
        } else {
          return Axes(d, unit_axis());
        }
      },
      n.payload);
  for (auto& axis : out) normalize_axis(axis);
  return out;
}

Axes evaluation_axes(int dim, const GridSpec& spec, const std::vector<const Copula*>& copulas) {
  const auto d = static_cast<std::size_t>(dim);
  Axes axes(d, unit_axis());
  if (!spec.breakpoints_only) {
    const int v = spec.vertices_per_axis > 0 ? spec.vertices_per_axis : default_vertices(dim);
    axes.assign(d, uniform_axis(v));
  }
  if (spec.include_breakpoints || spec.breakpoints_only) {
    for (const Copula* c : copulas) {
      if (c->dim() != dim) throw InputError("grid requested for copulas of different dimension");
      axes = merge_axes(axes, breakpoints(*c));
    }
  }
  return axes;
}

std::string describe_axes(const Axes& axes) {
  std::ostringstream out;
  for (std::size_t k = 0; k < axes.size(); ++k) out << (k ? "x" : "") << axes[k].size();
  out << " vertices";
  return out.str();
}

std::size_t vertex_count(const Axes& axes) {
  std::size_t n = 1;
  for (const auto& a : axes) n *= a.size();
  return n;
}

std::vector<double> cdf_table(const Copula& c, const Axes& axes) {
  std::vector<double> table;
  table.reserve(vertex_count(axes));
  for_each_vertex(axes, [&](const Point& u) { table.push_back(detail::cdf(c, u)); });
  return table;
}

std::vector<double> difference_table(std::vector<double> table, const Axes& axes) {
  const std::size_t d = axes.size();
  std::vector<std::size_t> n(d);
  for (std::size_t k = 0; k < d; ++k) n[k] = axes[k].size();
  // Difference along each axis in place: t[..i..] -= t[..i-1..] for i >= 1,
  // walking backwards so the subtrahend is still undifferenced.
  std::vector<std::size_t> stride(d, 1);
  for (std::size_t k = d - 1; k > 0; --k) stride[k - 1] = stride[k] * n[k];
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t v = table.size(); v-- > 0;) {
      if ((v / stride[k]) % n[k] >= 1) table[v] -= table[v - stride[k]];
    }
  }
  // Keep vertices with every index >= 1; vertex (i+1) holds cell i.
  std::vector<double> cells;
  std::size_t total = 1;
  for (std::size_t k = 0; k < d; ++k) total *= n[k] - 1;
  cells.reserve(total);
  std::vector<std::size_t> idx(d, 0);
  for (std::size_t c = 0; c < total; ++c) {
    std::size_t rem = c;
    std::size_t v = 0;
    for (std::size_t k = d; k-- > 0;) {
      idx[k] = rem % (n[k] - 1);
      rem /= n[k] - 1;
      v += (idx[k] + 1) * stride[k];
    }
    cells.push_back(table[v]);
  }
  return cells;
}

}  // namespace mincop

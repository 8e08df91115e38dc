#include "mincop/order.hpp"

#include "mincop/core.hpp"
#include "mincop/errors.hpp"

namespace mincop {

namespace {

struct Scan {
  double max_forward = -1.0;  // max of first - second
  double max_backward = -1.0;
  Point forward_at;
  Point backward_at;
  std::string forward_fn;
  std::string backward_fn;
};

// Folds the differences first - second over the vertices into `scan`.
template <class F, class G>
void compare(const Axes& axes, F&& first, G&& second, const char* name, Scan& scan, bool flip_point) {
  for_each_vertex(axes, [&](const Point& v) {
    const double diff = first(v) - second(v);
    auto report_point = [&] {
      if (!flip_point) return v;
      Point u(v.size());
      for (std::size_t k = 0; k < v.size(); ++k) u[k] = 1.0 - v[k];
      return u;
    };
    if (diff > scan.max_forward) {
      scan.max_forward = diff;
      scan.forward_at = report_point();
      scan.forward_fn = name;
    }
    if (-diff > scan.max_backward) {
      scan.max_backward = -diff;
      scan.backward_at = report_point();
      scan.backward_fn = name;
    }
  });
}

OrderResult conclude(const Scan& scan, double tol, const Axes& axes, bool exact) {
  OrderResult r;
  r.tolerance = tol;
  r.max_violation = scan.max_forward;
  r.max_reverse = scan.max_backward;
  r.grid_used = describe_axes(axes);
  r.exact = exact;
  const bool above = scan.max_forward > tol;
  const bool below = scan.max_backward > tol;
  if (!above && !below) {
    r.relation = Relation::equal;
  } else if (!above) {
    r.relation = Relation::strictly_below;
  } else if (!below) {
    r.relation = Relation::strictly_above;
  } else {
    r.relation = Relation::incomparable;
  }
  if (below) r.witnesses.push_back({scan.backward_at, scan.backward_fn, -scan.max_backward});
  if (above) r.witnesses.push_back({scan.forward_at, scan.forward_fn, scan.max_forward});
  return r;
}

Axes order_axes(const Copula& c, const Copula& d, const OrderOptions& options) {
  if (c.dim() != d.dim()) throw InputError("copulas of different dimension cannot be compared");
  return evaluation_axes(c.dim(), options.grid, {&c, &d});
}

bool exact_pair(const Copula& c, const Copula& d, const OrderOptions& options) {
  return (options.grid.include_breakpoints || options.grid.breakpoints_only) &&
         c.representation() == Copula::Representation::checkerboard &&
         d.representation() == Copula::Representation::checkerboard;
}

}  // namespace

std::string to_string(Relation r) {
  switch (r) {
    case Relation::equal:
      return "equal";
    case Relation::strictly_below:
      return "strictly_below";
    case Relation::strictly_above:
      return "strictly_above";
    case Relation::incomparable:
      return "incomparable";
  }
  return "unknown";
}

OrderResult pointwise_leq(const Copula& c, const Copula& d, const OrderOptions& options) {
  const Axes axes = order_axes(c, d, options);
  Scan scan;
  compare(
      axes, [&](const Point& u) { return detail::cdf(c, u); },
      [&](const Point& u) { return detail::cdf(d, u); }, "cdf", scan, false);
  return conclude(scan, options.tolerance, axes, exact_pair(c, d, options));
}

OrderResult concordance_leq(const Copula& c, const Copula& d, const OrderOptions& options) {
  const Axes axes = order_axes(c, d, options);
  Scan scan;
  compare(
      axes, [&](const Point& u) { return detail::cdf(c, u); },
      [&](const Point& u) { return detail::cdf(d, u); }, "cdf", scan, false);
  // (tau C)(1 - v) = Q^C[[v, 1]]; the upper-orthant masses are compared on
  // the same vertices and reported at u = 1 - v.
  const Point one(static_cast<std::size_t>(c.dim()), 1.0);
  compare(
      axes, [&](const Point& v) { return detail::box(c, v, one); },
      [&](const Point& v) { return detail::box(d, v, one); }, "survival", scan, true);
  return conclude(scan, options.tolerance, axes, exact_pair(c, d, options));
}

}  // namespace mincop

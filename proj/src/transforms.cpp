#include "mincop/transforms.hpp"

#include <variant>

#include "mincop/core.hpp"
#include "mincop/errors.hpp"
#include "mincop/grid.hpp"

namespace mincop {

namespace {

constexpr double kNegativeMassTol = 1e-10;

// Calls f(old_flat, new_index_vector) for every cell of `shape`.
template <class F>
void for_each_cell(const std::vector<std::size_t>& shape, F&& f) {
  const std::size_t d = shape.size();
  std::size_t total = 1;
  for (auto n : shape) total *= n;
  std::vector<std::size_t> idx(d, 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    for (std::size_t k = d; k-- > 0;) {
      idx[k] = rem % shape[k];
      rem /= shape[k];
    }
    f(flat, static_cast<const std::vector<std::size_t>&>(idx));
  }
}

}  // namespace

CheckerboardCopula reflect(const CheckerboardCopula& c, const ReflectionSet& k) {
  if (k.dim() != c.dim()) throw InputError("reflection set dimension does not match the copula");
  Axes cuts = c.cuts();
  for (int axis : k.zero_based()) {
    auto& a = cuts[static_cast<std::size_t>(axis)];
    std::vector<double> flipped(a.rbegin(), a.rend());
    for (double& x : flipped) x = 1.0 - x;
    flipped.front() = 0.0;
    flipped.back() = 1.0;
    a = std::move(flipped);
  }
  std::vector<double> masses(c.cell_count());
  const auto& shape = c.shape();
  std::vector<std::size_t> target(shape.size());
  for_each_cell(shape, [&](std::size_t flat, const std::vector<std::size_t>& idx) {
    for (std::size_t i = 0; i < idx.size(); ++i) {
      target[i] = k.contains(static_cast<int>(i)) ? shape[i] - 1 - idx[i] : idx[i];
    }
    masses[c.cell_index(target)] = c.masses()[flat];
  });
  return CheckerboardCopula::make_unchecked(std::move(cuts), std::move(masses));
}

CheckerboardCopula permute(const CheckerboardCopula& c, const Permutation& sigma) {
  if (sigma.dim() != c.dim()) throw InputError("permutation dimension does not match the copula");
  const std::size_t d = c.shape().size();
  Axes cuts(d);
  std::vector<std::size_t> shape(d);
  for (std::size_t i = 0; i < d; ++i) {
    const auto j = static_cast<std::size_t>(sigma[static_cast<int>(i)]);
    cuts[i] = c.cuts()[j];
    shape[i] = c.shape()[j];
  }
  std::vector<std::size_t> strides(d, 1);
  for (std::size_t k = d - 1; k > 0; --k) strides[k - 1] = strides[k] * shape[k];
  std::vector<double> masses(c.cell_count());
  for_each_cell(c.shape(), [&](std::size_t flat, const std::vector<std::size_t>& old) {
    std::size_t target = 0;
    for (std::size_t i = 0; i < d; ++i) target += old[static_cast<std::size_t>(sigma[static_cast<int>(i)])] * strides[i];
    masses[target] = c.masses()[flat];
  });
  return CheckerboardCopula::make_unchecked(std::move(cuts), std::move(masses));
}

SegmentCopula reflect(const SegmentCopula& c, const ReflectionSet& k) {
  if (k.dim() != c.dim()) throw InputError("reflection set dimension does not match the copula");
  std::vector<Segment> segments = c.segments();
  for (auto& s : segments) {
    for (int axis : k.zero_based()) {
      const auto a = static_cast<std::size_t>(axis);
      s.start[a] = 1.0 - s.start[a];
      s.end[a] = 1.0 - s.end[a];
    }
  }
  return SegmentCopula::make(c.dim(), std::move(segments));
}

SegmentCopula permute(const SegmentCopula& c, const Permutation& sigma) {
  if (sigma.dim() != c.dim()) throw InputError("permutation dimension does not match the copula");
  std::vector<Segment> segments;
  const auto d = static_cast<std::size_t>(c.dim());
  for (const auto& s : c.segments()) {
    Segment t{Point(d), Point(d), s.mass};
    for (std::size_t i = 0; i < d; ++i) {
      const auto j = static_cast<std::size_t>(sigma[static_cast<int>(i)]);
      t.start[i] = s.start[j];
      t.end[i] = s.end[j];
    }
    segments.push_back(std::move(t));
  }
  return SegmentCopula::make(c.dim(), std::move(segments));
}

Copula reflect(const Copula& c, const ReflectionSet& k) {
  if (k.dim() != c.dim()) throw InputError("reflection set dimension does not match the copula");
  if (k.empty()) return c;
  const bool all = k.size() == c.dim();
  const Node& n = c.node();
  if (auto cb = c.as_checkerboard_ptr()) return reflect(*cb, k);
  if (auto sc = c.as_segments_ptr()) return reflect(*sc, k);
  if (std::holds_alternative<node::Product>(n.payload)) return c;
  if ((std::holds_alternative<node::UpperFrechet>(n.payload) ||
       std::holds_alternative<node::LowerFrechet>(n.payload)) &&
      all) {
    return c;
  }
  if (auto r = std::get_if<node::Reflected>(&n.payload)) {
    return reflect(r->inner, r->k.symmetric_difference(k));
  }
  if (auto g = std::get_if<node::GlueProduct>(&n.payload)) {
    const int dl = g->left.dim();
    std::vector<int> left;
    std::vector<int> right;
    for (int axis : k.zero_based()) (axis < dl ? left : right).push_back(axis < dl ? axis : axis - dl);
    return Copula::glue_product(reflect(g->left, ReflectionSet::from_zero_based(dl, left)),
                                reflect(g->right, ReflectionSet::from_zero_based(g->right.dim(), right)));
  }
  return Copula::reflected(c, k);
}

Copula permute(const Copula& c, const Permutation& sigma) {
  if (sigma.dim() != c.dim()) throw InputError("permutation dimension does not match the copula");
  if (sigma.is_identity()) return c;
  const Node& n = c.node();
  if (auto cb = c.as_checkerboard_ptr()) return permute(*cb, sigma);
  if (auto sc = c.as_segments_ptr()) return permute(*sc, sigma);
  if (std::holds_alternative<node::Product>(n.payload) ||
      std::holds_alternative<node::UpperFrechet>(n.payload)) {
    return c;
  }
  if (auto p = std::get_if<node::Permuted>(&n.payload)) {
    const Permutation combined = sigma.after(p->sigma);
    return combined.is_identity() ? p->inner : Copula::permuted(p->inner, combined);
  }
  return Copula::permuted(c, sigma);
}

Copula survival(const Copula& c) { return reflect(c, ReflectionSet::all(c.dim())); }

CheckerboardCopula discretize(const Copula& c, const Axes& cuts) {
  if (static_cast<int>(cuts.size()) != c.dim()) {
    throw InputError("cut lists do not match the copula dimension");
  }
  for (std::size_t k = 0; k < cuts.size(); ++k) {
    const auto& a = cuts[k];
    bool ok = a.size() >= 2 && a.front() == 0.0 && a.back() == 1.0;
    for (std::size_t j = 1; ok && j < a.size(); ++j) ok = a[j] > a[j - 1];
    if (!ok) {
      throw InputError("cuts on axis " + std::to_string(k + 1) +
                       " must increase strictly from 0 to 1");
    }
  }
  std::vector<double> masses = difference_table(cdf_table(c, cuts), cuts);
  for (double& m : masses) {
    if (m < -kNegativeMassTol) {
      throw ValidationError("discretization produced a cell mass of " + std::to_string(m) +
                            "; the input is not a copula");
    }
    if (m < 0.0) m = 0.0;
  }
  return CheckerboardCopula::make_unchecked(cuts, std::move(masses));
}

CheckerboardCopula discretize(const Copula& c, int n) {
  return discretize(c, CheckerboardCopula::uniform_cuts(c.dim(), n));
}

std::optional<SegmentCopula> as_segments(const Copula& c) {
  const Node& n = c.node();
  const auto d = static_cast<std::size_t>(c.dim());
  if (auto sc = c.as_segments_ptr()) return *sc;
  if (std::holds_alternative<node::UpperFrechet>(n.payload)) {
    return SegmentCopula::make(c.dim(), {Segment{Point(d, 0.0), Point(d, 1.0), 1.0}});
  }
  if (std::holds_alternative<node::LowerFrechet>(n.payload) ||
      (std::holds_alternative<node::ClaytonExtreme>(n.payload) && d == 2)) {
    return SegmentCopula::make(2, {Segment{{0.0, 1.0}, {1.0, 0.0}, 1.0}});
  }
  if (auto r = std::get_if<node::Reflected>(&n.payload)) {
    auto inner = as_segments(r->inner);
    if (inner) return reflect(*inner, r->k);
    return std::nullopt;
  }
  if (auto p = std::get_if<node::Permuted>(&n.payload)) {
    auto inner = as_segments(p->inner);
    if (inner) return permute(*inner, p->sigma);
    return std::nullopt;
  }
  if (auto m = std::get_if<node::Mixture>(&n.payload)) {
    std::vector<Segment> merged;
    for (const auto& [part, w] : m->parts) {
      auto inner = as_segments(part);
      if (!inner) return std::nullopt;
      for (Segment s : inner->segments()) {
        s.mass *= w;
        merged.push_back(std::move(s));
      }
    }
    return SegmentCopula::make(c.dim(), std::move(merged));
  }
  return std::nullopt;
}

std::optional<CheckerboardCopula> as_checkerboard(const Copula& c) {
  const Node& n = c.node();
  if (auto cb = c.as_checkerboard_ptr()) return *cb;
  if (std::holds_alternative<node::Product>(n.payload)) {
    return CheckerboardCopula::make_unchecked(CheckerboardCopula::uniform_cuts(c.dim(), 1), {1.0});
  }
  if (auto r = std::get_if<node::Reflected>(&n.payload)) {
    auto inner = as_checkerboard(r->inner);
    if (inner) return reflect(*inner, r->k);
    return std::nullopt;
  }
  if (auto p = std::get_if<node::Permuted>(&n.payload)) {
    auto inner = as_checkerboard(p->inner);
    if (inner) return permute(*inner, p->sigma);
    return std::nullopt;
  }
  if (auto g = std::get_if<node::GlueProduct>(&n.payload)) {
    auto left = as_checkerboard(g->left);
    auto right = as_checkerboard(g->right);
    if (!left || !right) return std::nullopt;
    Axes cuts = left->cuts();
    cuts.insert(cuts.end(), right->cuts().begin(), right->cuts().end());
    std::vector<double> masses;
    masses.reserve(left->cell_count() * right->cell_count());
    for (double ml : left->masses())
      for (double mr : right->masses()) masses.push_back(ml * mr);
    return CheckerboardCopula::make_unchecked(std::move(cuts), std::move(masses));
  }
  if (auto m = std::get_if<node::Mixture>(&n.payload)) {
    Axes cuts(static_cast<std::size_t>(c.dim()), std::vector<double>{0.0, 1.0});
    for (const auto& part : m->parts) {
      auto inner = as_checkerboard(part.first);
      if (!inner) return std::nullopt;
      cuts = merge_axes(cuts, inner->cuts());
    }
    // Every part is multilinear on the common refinement, so its cell
    // masses there describe the mixture exactly.
    return discretize(c, cuts);
  }
  if (auto r = std::get_if<node::Refuted>(&n.payload)) {
    auto inner = as_checkerboard(r->inner);
    if (!inner) return std::nullopt;
    Axes cuts = inner->cuts();
    for (std::size_t k = 0; k < cuts.size(); ++k) cuts[k] = merge_axis(cuts[k], {r->a[k], r->b[k]});
    return discretize(c, cuts);
  }
  return std::nullopt;
}

}  // namespace mincop

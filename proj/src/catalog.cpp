#include "mincop/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "mincop/errors.hpp"

namespace mincop {

Copula make_basic(BasicKind kind, int dim) {
  switch (kind) {
    case BasicKind::upper_frechet:
      if (dim < 1) throw DomainError("dimension must be positive");
      return Copula::upper_frechet(dim);
    case BasicKind::lower_frechet_2d:
      if (dim != 2) {
        throw DomainError("the lower Frechet-Hoeffding bound is a copula only for d = 2");
      }
      return Copula::lower_frechet();
    case BasicKind::product:
      if (dim < 1) throw DomainError("dimension must be positive");
      return Copula::product(dim);
    case BasicKind::clayton_extreme:
      return Copula::clayton_extreme(dim);
  }
  throw InputError("unknown basic copula");
}

SegmentCopula make_upper_frechet_segment(int dim) {
  const auto d = static_cast<std::size_t>(dim);
  return SegmentCopula::make(dim, {Segment{Point(d, 0.0), Point(d, 1.0), 1.0}});
}

SegmentCopula make_reflected_upper(int dim, std::vector<int> k_one_based) {
  const ReflectionSet k = ReflectionSet::from_one_based(dim, k_one_based);
  if (k.empty() || k.size() == dim) {
    throw DomainError("K must be a nonempty proper subset; reflect M directly for the others");
  }
  const auto d = static_cast<std::size_t>(dim);
  Point start(d);
  Point end(d);
  for (int i = 0; i < dim; ++i) {
    const bool in = k.contains(i);
    start[static_cast<std::size_t>(i)] = in ? 1.0 : 0.0;
    end[static_cast<std::size_t>(i)] = in ? 0.0 : 1.0;
  }
  return SegmentCopula::make(dim, {Segment{start, end, 1.0}});
}

SegmentCopula make_triangle_3d() {
  const Point p{0.0, 0.5, 1.0};
  const Point q{0.5, 1.0, 0.0};
  const Point r{1.0, 0.0, 0.5};
  const double third = 1.0 / 3.0;
  return SegmentCopula::make(3, {Segment{p, q, third}, Segment{q, r, third}, Segment{r, p, third}});
}

SegmentCopula make_shuffle(const ShuffleSpec& spec) {
  const auto& pieces = spec.pieces;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const auto& s = pieces[i];
    if (!(s.side > 0.0) || s.lo_x < 0.0 || s.lo_y < 0.0 || s.lo_x + s.side > 1.0 + 1e-12 ||
        s.lo_y + s.side > 1.0 + 1e-12) {
      throw DomainError("shuffle square " + std::to_string(i) + " does not fit in the unit square");
    }
    if (s.slope != 1 && s.slope != -1) throw DomainError("shuffle slope must be +1 or -1");
    for (std::size_t j = 0; j < i; ++j) {
      const auto& t = pieces[j];
      const double ox = std::min(s.lo_x + s.side, t.lo_x + t.side) - std::max(s.lo_x, t.lo_x);
      const double oy = std::min(s.lo_y + s.side, t.lo_y + t.side) - std::max(s.lo_y, t.lo_y);
      if (ox > 1e-12 && oy > 1e-12) {
        throw DomainError("shuffle squares " + std::to_string(j) + " and " + std::to_string(i) +
                          " overlap");
      }
    }
  }
  std::vector<Segment> segments;
  for (const auto& s : pieces) {
    const double x1 = std::min(s.lo_x + s.side, 1.0);
    const double y1 = std::min(s.lo_y + s.side, 1.0);
    if (s.slope == 1) {
      segments.push_back(Segment{{s.lo_x, s.lo_y}, {x1, y1}, s.side});
    } else {
      segments.push_back(Segment{{s.lo_x, y1}, {x1, s.lo_y}, s.side});
    }
  }
  return SegmentCopula::make(2, std::move(segments));
}

SegmentCopula shuffle_a() {
  return make_shuffle({{{0.0, 0.5, 0.5, 1}, {0.5, 0.0, 0.5, 1}}});
}

SegmentCopula shuffle_b() {
  return make_shuffle({{{0.0, 0.0, 0.5, -1}, {0.5, 0.5, 0.5, -1}}});
}

Copula make_glue_product(Copula left, Copula right) {
  if (left.dim() + right.dim() < 3) {
    throw DomainError("a glue product needs combined dimension at least 3");
  }
  return Copula::glue_product(std::move(left), std::move(right));
}

Copula make_mixture(std::vector<std::pair<Copula, double>> parts) {
  return Copula::mixture(std::move(parts));
}

Copula mixture_all_reflections(int dim) {
  if (dim < 2) throw DomainError("dimension must be at least 2");
  const int count = (1 << dim) - 2;
  std::vector<std::pair<Copula, double>> parts;
  for (int mask = 1; mask + 1 < (1 << dim); ++mask) {
    std::vector<int> k;
    for (int i = 0; i < dim; ++i)
      if (mask & (1 << i)) k.push_back(i + 1);
    parts.emplace_back(make_reflected_upper(dim, k), 1.0 / count);
  }
  // Renormalise so the weights sum to one in floating point.
  double total = 0.0;
  for (const auto& part : parts) total += part.second;
  for (auto& part : parts) part.second /= total;
  return Copula::mixture(std::move(parts));
}

CheckerboardCopula random_checkerboard(int dim, int n, std::uint64_t seed, int components) {
  if (n < 1 || components < 1) throw InputError("grid size and component count must be positive");
  std::mt19937_64 rng(seed);
  std::vector<double> weights(static_cast<std::size_t>(components));
  std::uniform_real_distribution<double> unit(0.2, 1.0);
  for (auto& w : weights) w = unit(rng);
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);

  const auto d = static_cast<std::size_t>(dim);
  const auto nn = static_cast<std::size_t>(n);
  std::size_t cells = 1;
  for (std::size_t k = 0; k < d; ++k) cells *= nn;
  std::vector<double> masses(cells, 0.0);
  std::vector<std::vector<std::size_t>> perms(d, std::vector<std::size_t>(nn));
  for (const double w : weights) {
    for (std::size_t k = 0; k < d; ++k) {
      std::iota(perms[k].begin(), perms[k].end(), std::size_t{0});
      if (k > 0) std::shuffle(perms[k].begin(), perms[k].end(), rng);
    }
    for (std::size_t i = 0; i < nn; ++i) {
      std::size_t cell = 0;
      for (std::size_t k = 0; k < d; ++k) cell = cell * nn + perms[k][i];
      masses[cell] += w / total / static_cast<double>(n);
    }
  }
  return CheckerboardCopula::make(CheckerboardCopula::uniform_cuts(dim, n), std::move(masses));
}

}  // namespace mincop

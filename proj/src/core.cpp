#include "mincop/core.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <variant>

#include "mincop/errors.hpp"
#include "mincop/grid.hpp"
#include "quadrature.hpp"

namespace mincop {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

using CheckerboardPtr = std::shared_ptr<const CheckerboardCopula>;
using SegmentPtr = std::shared_ptr<const SegmentCopula>;

// Inclusion-exclusion over the 2^d corners of [lo, hi]; corners with a zero
// coordinate contribute nothing for a grounded function.
double box_by_corners(const Copula& c, PointView lo, PointView hi) {
  const std::size_t d = lo.size();
  Point corner(d);
  double sum = 0.0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
    int lows = 0;
    bool zero = false;
    for (std::size_t k = 0; k < d; ++k) {
      if (mask & (std::size_t{1} << k)) {
        corner[k] = hi[k];
      } else {
        corner[k] = lo[k];
        ++lows;
        zero = zero || lo[k] == 0.0;
      }
    }
    if (zero) continue;
    const double v = detail::cdf(c, corner);
    sum += (lows % 2 == 0) ? v : -v;
  }
  return sum;
}

// [lo, hi] intersected with [clo, chi]; false when empty.
bool intersect(PointView lo, PointView hi, PointView clo, PointView chi, Point& olo, Point& ohi) {
  const std::size_t d = lo.size();
  olo.resize(d);
  ohi.resize(d);
  for (std::size_t k = 0; k < d; ++k) {
    olo[k] = std::max(lo[k], clo[k]);
    ohi[k] = std::min(hi[k], chi[k]);
    if (olo[k] > ohi[k]) return false;
  }
  return true;
}

Point filled(std::size_t d, double x) { return Point(d, x); }

// Q_C[(B_1 x I) cap box] and Q_C[(I x B_rest) cap box]: the first-coordinate
// and remaining-coordinate marginal parts of the corner-restricted measure.
Point first_only(PointView b, double fill) {
  Point out(b.size(), fill);
  out[0] = b[0];
  return out;
}
Point rest_only(PointView b, double fill) {
  Point out(b.begin(), b.end());
  out[0] = fill;
  return out;
}

double refuted_box(const node::Refuted& r, PointView lo, PointView hi) {
  const std::size_t d = lo.size();
  const Copula& c = r.inner;
  const Point zero = filled(d, 0.0);
  const Point one = filled(d, 1.0);
  Point l;
  Point h;
  double mass = detail::box(c, lo, hi);
  if (intersect(lo, hi, zero, r.a, l, h)) mass -= detail::box(c, l, h);
  if (intersect(lo, hi, r.b, one, l, h)) mass -= detail::box(c, l, h);

  auto part = [&](const Point& plo, const Point& phi, PointView clo, PointView chi) {
    Point il;
    Point ih;
    return intersect(plo, phi, clo, chi, il, ih) ? detail::box(c, il, ih) : 0.0;
  };
  const Point lo1 = first_only(lo, 0.0), hi1 = first_only(hi, 1.0);
  const Point lor = rest_only(lo, 0.0), hir = rest_only(hi, 1.0);
  const double first_a = part(lo1, hi1, zero, r.a);
  const double first_b = part(lo1, hi1, r.b, one);
  const double rest_a = part(lor, hir, zero, r.a);
  const double rest_b = part(lor, hir, r.b, one);
  mass += (first_a * rest_b + first_b * rest_a) / r.p;
  return mass;
}

// Integral of prod_k (alpha_k + beta_k x_k(t)) over t in [t0, t1] along the
// segment x(t) = s + t (e - s); polynomial of degree d in t.
double segment_integral(const AffineProduct& f, PointView s, PointView e, double t0, double t1,
                        int gauss_points) {
  if (!(t1 > t0)) return 0.0;
  const auto& rule = detail::gauss_legendre(gauss_points);
  double sum = 0.0;
  for (std::size_t q = 0; q < rule.x.size(); ++q) {
    const double t = t0 + (t1 - t0) * rule.x[q];
    double v = 1.0;
    for (std::size_t k = 0; k < s.size(); ++k) v *= f.alpha[k] + f.beta[k] * (s[k] + t * (e[k] - s[k]));
    sum += rule.w[q] * v;
  }
  return sum * (t1 - t0);
}

double affine_integral(double alpha, double beta, double x0, double x1) {
  return alpha * (x1 - x0) + 0.5 * beta * (x1 * x1 - x0 * x0);
}

double checkerboard_moment(const CheckerboardCopula& cb, const AffineProduct& f, PointView lo,
                           PointView hi) {
  const std::size_t d = lo.size();
  // factor[k][j]: mean of the k-th affine factor over the part of slab j
  // inside [lo_k, hi_k], times the fraction of the slab covered.
  std::vector<std::vector<double>> factor(d);
  std::vector<std::size_t> first(d), last(d);
  for (std::size_t k = 0; k < d; ++k) {
    const auto& c = cb.cuts()[k];
    const std::size_t n = c.size() - 1;
    factor[k].assign(n, 0.0);
    bool any = false;
    for (std::size_t j = 0; j < n; ++j) {
      const double x0 = std::max(lo[k], c[j]);
      const double x1 = std::min(hi[k], c[j + 1]);
      if (x1 <= x0) continue;
      factor[k][j] = affine_integral(f.alpha[k], f.beta[k], x0, x1) / (c[j + 1] - c[j]);
      if (!any) first[k] = j;
      last[k] = j;
      any = true;
    }
    if (!any) return 0.0;
  }
  const auto& strides = cb.cell_strides();
  const auto& masses = cb.masses();
  std::vector<std::size_t> idx(first);
  double sum = 0.0;
  while (true) {
    double w = 1.0;
    std::size_t cell = 0;
    for (std::size_t k = 0; k < d; ++k) {
      w *= factor[k][idx[k]];
      cell += idx[k] * strides[k];
    }
    sum += w * masses[cell];
    std::size_t k = d;
    while (k > 0) {
      --k;
      if (++idx[k] <= last[k]) break;
      idx[k] = first[k];
      if (k == 0) return sum;
    }
  }
}

std::optional<double> moment_impl(const Copula& c, const AffineProduct& f, PointView lo,
                                  PointView hi, int gp);

std::optional<double> refuted_moment(const node::Refuted& r, const AffineProduct& f, PointView lo,
                                     PointView hi, int gp) {
  const std::size_t d = lo.size();
  const Copula& c = r.inner;
  const Point zero = filled(d, 0.0);
  const Point one = filled(d, 1.0);
  auto restricted = [&](const AffineProduct& g, PointView blo, PointView bhi, PointView clo,
                        PointView chi) -> std::optional<double> {
    Point l;
    Point h;
    if (!intersect(blo, bhi, clo, chi, l, h)) return 0.0;
    return moment_impl(c, g, l, h, gp);
  };
  auto whole = moment_impl(c, f, lo, hi, gp);
  auto in_a = restricted(f, lo, hi, zero, r.a);
  auto in_b = restricted(f, lo, hi, r.b, one);
  AffineProduct f1 = AffineProduct::constant(static_cast<int>(d));
  f1.alpha[0] = f.alpha[0];
  f1.beta[0] = f.beta[0];
  AffineProduct frest = f;
  frest.alpha[0] = 1.0;
  frest.beta[0] = 0.0;
  const Point lo1 = first_only(lo, 0.0), hi1 = first_only(hi, 1.0);
  const Point lor = rest_only(lo, 0.0), hir = rest_only(hi, 1.0);
  auto first_a = restricted(f1, lo1, hi1, zero, r.a);
  auto first_b = restricted(f1, lo1, hi1, r.b, one);
  auto rest_a = restricted(frest, lor, hir, zero, r.a);
  auto rest_b = restricted(frest, lor, hir, r.b, one);
  if (!whole || !in_a || !in_b || !first_a || !first_b || !rest_a || !rest_b) return std::nullopt;
  return *whole - *in_a - *in_b + (*first_a * *rest_b + *first_b * *rest_a) / r.p;
}

std::optional<double> moment_impl(const Copula& c, const AffineProduct& f, PointView lo,
                                  PointView hi, int gp) {
  const std::size_t d = lo.size();
  for (std::size_t k = 0; k < d; ++k)
    if (lo[k] > hi[k]) return 0.0;
  return std::visit(
      Overloaded{
          [&](const CheckerboardPtr& cb) -> std::optional<double> {
            return checkerboard_moment(*cb, f, lo, hi);
          },
          [&](const SegmentPtr& sc) -> std::optional<double> {
            double sum = 0.0;
            for (const auto& s : sc->segments()) {
              const auto [t0, t1] = SegmentCopula::parameter_window(s, lo, hi);
              sum += s.mass * segment_integral(f, s.start, s.end, t0, t1, gp);
            }
            return sum;
          },
          [&](const node::UpperFrechet&) -> std::optional<double> {
            const double t0 = *std::max_element(lo.begin(), lo.end());
            const double t1 = *std::min_element(hi.begin(), hi.end());
            return segment_integral(f, filled(d, 0.0), filled(d, 1.0), t0, t1, gp);
          },
          [&](const node::LowerFrechet&) -> std::optional<double> {
            const double t0 = std::max(lo[0], 1.0 - hi[1]);
            const double t1 = std::min(hi[0], 1.0 - lo[1]);
            const Point s{0.0, 1.0};
            const Point e{1.0, 0.0};
            return segment_integral(f, s, e, t0, t1, gp);
          },
          [&](const node::Product&) -> std::optional<double> {
            double v = 1.0;
            for (std::size_t k = 0; k < d; ++k) v *= affine_integral(f.alpha[k], f.beta[k], lo[k], hi[k]);
            return v;
          },
          [&](const node::ClaytonExtreme&) -> std::optional<double> { return std::nullopt; },
          [&](const node::Reflected& r) -> std::optional<double> {
            AffineProduct g = f;
            Point l(lo.begin(), lo.end());
            Point h(hi.begin(), hi.end());
            for (int k : r.k.zero_based()) {
              const auto kk = static_cast<std::size_t>(k);
              g.alpha[kk] = f.alpha[kk] + f.beta[kk];
              g.beta[kk] = -f.beta[kk];
              l[kk] = 1.0 - hi[kk];
              h[kk] = 1.0 - lo[kk];
            }
            return moment_impl(r.inner, g, l, h, gp);
          },
          [&](const node::Permuted& p) -> std::optional<double> {
            AffineProduct g = f;
            Point l(d);
            Point h(d);
            for (std::size_t i = 0; i < d; ++i) {
              const auto j = static_cast<std::size_t>(p.sigma[static_cast<int>(i)]);
              g.alpha[j] = f.alpha[i];
              g.beta[j] = f.beta[i];
              l[j] = lo[i];
              h[j] = hi[i];
            }
            return moment_impl(p.inner, g, l, h, gp);
          },
          [&](const node::GlueProduct& g) -> std::optional<double> {
            const auto dl = static_cast<std::size_t>(g.left.dim());
            AffineProduct fl{{f.alpha.begin(), f.alpha.begin() + static_cast<long>(dl)},
                             {f.beta.begin(), f.beta.begin() + static_cast<long>(dl)}};
            AffineProduct fr{{f.alpha.begin() + static_cast<long>(dl), f.alpha.end()},
                             {f.beta.begin() + static_cast<long>(dl), f.beta.end()}};
            auto left = moment_impl(g.left, fl, lo.first(dl), hi.first(dl), gp);
            if (!left) return std::nullopt;
            auto right = moment_impl(g.right, fr, lo.subspan(dl), hi.subspan(dl), gp);
            if (!right) return std::nullopt;
            return *left * *right;
          },
          [&](const node::Mixture& m) -> std::optional<double> {
            double sum = 0.0;
            for (const auto& [part, w] : m.parts) {
              auto v = moment_impl(part, f, lo, hi, gp);
              if (!v) return std::nullopt;
              sum += w * *v;
            }
            return sum;
          },
          [&](const node::Refuted& r) -> std::optional<double> {
            return refuted_moment(r, f, lo, hi, gp);
          },
      },
      c.node().payload);
}

// ---------------------------------------------------------------------------
// Sampling

using Engine = std::mt19937_64;

double uniform01(Engine& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

bool inside(const Point& x, PointView lo, PointView hi) {
  for (std::size_t k = 0; k < x.size(); ++k)
    if (x[k] < lo[k] || x[k] > hi[k]) return false;
  return true;
}

constexpr long kRejectionCap = 100'000'000;

Point draw(const Copula& c, Engine& rng, long& budget);

Point draw_restricted(const Copula& c, Engine& rng, long& budget, PointView lo, PointView hi,
                      bool keep_inside) {
  while (true) {
    if (--budget < 0) {
      throw UnsupportedRepresentation("rejection sampler exceeded its attempt cap");
    }
    Point x = draw(c, rng, budget);
    if (inside(x, lo, hi) == keep_inside) return x;
  }
}

Point draw(const Copula& c, Engine& rng, long& budget) {
  const auto d = static_cast<std::size_t>(c.dim());
  return std::visit(
      Overloaded{
          [&](const CheckerboardPtr& cb) -> Point {
            const auto& running = cb->cumulative_masses();
            const double r = uniform01(rng) * running.back();
            auto it = std::upper_bound(running.begin(), running.end(), r);
            auto cell = static_cast<std::size_t>(it - running.begin());
            if (cell >= running.size()) cell = running.size() - 1;
            // Skip trailing empty cells picked by rounding at the boundary.
            while (cell > 0 && cb->masses()[cell] == 0.0) --cell;
            Point x(d);
            const auto& strides = cb->cell_strides();
            for (std::size_t k = 0; k < d; ++k) {
              const std::size_t j = (cell / strides[k]) % cb->shape()[k];
              const auto& cuts = cb->cuts()[k];
              x[k] = cuts[j] + uniform01(rng) * (cuts[j + 1] - cuts[j]);
            }
            return x;
          },
          [&](const SegmentPtr& sc) -> Point {
            const auto& segs = sc->segments();
            double r = uniform01(rng);
            std::size_t i = 0;
            while (i + 1 < segs.size() && r >= segs[i].mass) {
              r -= segs[i].mass;
              ++i;
            }
            return segs[i].at(uniform01(rng));
          },
          [&](const node::UpperFrechet&) -> Point { return Point(d, uniform01(rng)); },
          [&](const node::LowerFrechet&) -> Point {
            const double t = uniform01(rng);
            return Point{t, 1.0 - t};
          },
          [&](const node::Product&) -> Point {
            Point x(d);
            for (auto& v : x) v = uniform01(rng);
            return x;
          },
          [&](const node::ClaytonExtreme&) -> Point {
            // U_k = (1 - S_k)^(d-1) with S uniform on the unit simplex.
            Point e(d);
            double total = 0.0;
            std::exponential_distribution<double> expo(1.0);
            for (auto& v : e) total += (v = expo(rng));
            for (auto& v : e) v = std::clamp(std::pow(1.0 - v / total, double(d - 1)), 0.0, 1.0);
            return e;
          },
          [&](const node::Reflected& r) -> Point {
            Point x = draw(r.inner, rng, budget);
            for (int k : r.k.zero_based()) x[static_cast<std::size_t>(k)] = 1.0 - x[static_cast<std::size_t>(k)];
            return x;
          },
          [&](const node::Permuted& p) -> Point {
            const Point w = draw(p.inner, rng, budget);
            Point x(d);
            for (std::size_t i = 0; i < d; ++i) x[i] = w[static_cast<std::size_t>(p.sigma[static_cast<int>(i)])];
            return x;
          },
          [&](const node::GlueProduct& g) -> Point {
            Point x = draw(g.left, rng, budget);
            const Point y = draw(g.right, rng, budget);
            x.insert(x.end(), y.begin(), y.end());
            return x;
          },
          [&](const node::Mixture& m) -> Point {
            double r = uniform01(rng);
            std::size_t i = 0;
            while (i + 1 < m.parts.size() && r >= m.parts[i].second) {
              r -= m.parts[i].second;
              ++i;
            }
            return draw(m.parts[i].first, rng, budget);
          },
          [&](const node::Refuted& r) -> Point {
            const Point zero(d, 0.0);
            const Point one(d, 1.0);
            if (uniform01(rng) >= 2.0 * r.p) {
              // Outside both corner boxes; the boxes overlap at most in a point.
              while (true) {
                Point x = draw_restricted(r.inner, rng, budget, zero, r.a, false);
                if (!inside(x, r.b, one)) return x;
                if (--budget < 0) throw UnsupportedRepresentation("rejection sampler exceeded its attempt cap");
              }
            }
            const Point xa = draw_restricted(r.inner, rng, budget, zero, r.a, true);
            const Point xb = draw_restricted(r.inner, rng, budget, r.b, one, true);
            // First coordinate from one corner, the rest from the other.
            const bool first_from_a = uniform01(rng) < 0.5;
            Point x = first_from_a ? xb : xa;
            x[0] = first_from_a ? xa[0] : xb[0];
            return x;
          },
      },
      c.node().payload);
}

}  // namespace

// ---------------------------------------------------------------------------
// Evaluation

namespace detail {

double cdf(const Copula& c, PointView u) {
  const std::size_t d = u.size();
  return std::visit(
      Overloaded{
          [&](const CheckerboardPtr& cb) { return cb->cdf(u); },
          [&](const SegmentPtr& sc) { return sc->cdf(u); },
          [&](const node::UpperFrechet&) { return *std::min_element(u.begin(), u.end()); },
          [&](const node::LowerFrechet&) { return std::max(u[0] + u[1] - 1.0, 0.0); },
          [&](const node::Product&) {
            double v = 1.0;
            for (double x : u) v *= x;
            return v;
          },
          [&](const node::ClaytonExtreme& n) {
            const double e = n.dim - 1.0;
            double s = -e;
            for (double x : u) {
              if (x == 0.0) return 0.0;
              s += std::pow(x, 1.0 / e);
            }
            return s > 0.0 ? std::pow(s, e) : 0.0;
          },
          [&](const node::Reflected& r) {
            // Q^inner of the box with [1 - u_k, 1] on K and [0, u_k] elsewhere.
            Point lo(d, 0.0);
            Point hi(u.begin(), u.end());
            for (int k : r.k.zero_based()) {
              const auto kk = static_cast<std::size_t>(k);
              lo[kk] = 1.0 - u[kk];
              hi[kk] = 1.0;
            }
            return box(r.inner, lo, hi);
          },
          [&](const node::Permuted& p) {
            Point w(d);
            for (std::size_t i = 0; i < d; ++i) w[static_cast<std::size_t>(p.sigma[static_cast<int>(i)])] = u[i];
            return detail::cdf(p.inner, w);
          },
          [&](const node::GlueProduct& g) {
            const auto dl = static_cast<std::size_t>(g.left.dim());
            const double left = detail::cdf(g.left, u.first(dl));
            return left == 0.0 ? 0.0 : left * detail::cdf(g.right, u.subspan(dl));
          },
          [&](const node::Mixture& m) {
            double v = 0.0;
            for (const auto& [part, w] : m.parts) v += w * detail::cdf(part, u);
            return v;
          },
          [&](const node::Refuted& r) {
            const Point zero(d, 0.0);
            return refuted_box(r, zero, u);
          },
      },
      c.node().payload);
}

double box(const Copula& c, PointView lo, PointView hi) {
  const std::size_t d = lo.size();
  return std::visit(
      Overloaded{
          [&](const CheckerboardPtr& cb) { return cb->box_mass(lo, hi); },
          [&](const SegmentPtr& sc) { return sc->box_mass(lo, hi); },
          [&](const node::UpperFrechet&) {
            const double t0 = *std::max_element(lo.begin(), lo.end());
            const double t1 = *std::min_element(hi.begin(), hi.end());
            return std::max(t1 - t0, 0.0);
          },
          [&](const node::LowerFrechet&) {
            const double t0 = std::max(lo[0], 1.0 - hi[1]);
            const double t1 = std::min(hi[0], 1.0 - lo[1]);
            return std::max(t1 - t0, 0.0);
          },
          [&](const node::Product&) {
            double v = 1.0;
            for (std::size_t k = 0; k < d; ++k) v *= hi[k] - lo[k];
            return v;
          },
          [&](const node::ClaytonExtreme&) { return box_by_corners(c, lo, hi); },
          [&](const node::Reflected& r) {
            Point l(lo.begin(), lo.end());
            Point h(hi.begin(), hi.end());
            for (int k : r.k.zero_based()) {
              const auto kk = static_cast<std::size_t>(k);
              l[kk] = 1.0 - hi[kk];
              h[kk] = 1.0 - lo[kk];
            }
            return box(r.inner, l, h);
          },
          [&](const node::Permuted& p) {
            Point l(d);
            Point h(d);
            for (std::size_t i = 0; i < d; ++i) {
              const auto j = static_cast<std::size_t>(p.sigma[static_cast<int>(i)]);
              l[j] = lo[i];
              h[j] = hi[i];
            }
            return box(p.inner, l, h);
          },
          [&](const node::GlueProduct& g) {
            const auto dl = static_cast<std::size_t>(g.left.dim());
            const double left = box(g.left, lo.first(dl), hi.first(dl));
            return left == 0.0 ? 0.0 : left * box(g.right, lo.subspan(dl), hi.subspan(dl));
          },
          [&](const node::Mixture& m) {
            double v = 0.0;
            for (const auto& [part, w] : m.parts) v += w * box(part, lo, hi);
            return v;
          },
          [&](const node::Refuted& r) { return refuted_box(r, lo, hi); },
      },
      c.node().payload);
}

}  // namespace detail

double cdf(const Copula& c, PointView u) {
  check_unit_point(u, c.dim());
  return detail::cdf(c, u);
}

double box_mass(const Copula& c, PointView lo, PointView hi) {
  check_unit_point(lo, c.dim(), "lower corner");
  check_unit_point(hi, c.dim(), "upper corner");
  for (std::size_t k = 0; k < lo.size(); ++k) {
    if (lo[k] > hi[k]) throw InputError("box lower corner exceeds upper corner on axis " + std::to_string(k + 1));
  }
  return detail::box(c, lo, hi);
}

double survival_value(const Copula& c, PointView u) {
  check_unit_point(u, c.dim());
  Point lo(u.size());
  for (std::size_t k = 0; k < u.size(); ++k) lo[k] = 1.0 - u[k];
  const Point one(u.size(), 1.0);
  return detail::box(c, lo, one);
}

// ---------------------------------------------------------------------------
// Moments

AffineProduct AffineProduct::constant(int dim) {
  const auto d = static_cast<std::size_t>(dim);
  return {std::vector<double>(d, 1.0), std::vector<double>(d, 0.0)};
}

AffineProduct AffineProduct::coordinates(int dim) {
  const auto d = static_cast<std::size_t>(dim);
  return {std::vector<double>(d, 0.0), std::vector<double>(d, 1.0)};
}

AffineProduct AffineProduct::complements(int dim) {
  const auto d = static_cast<std::size_t>(dim);
  return {std::vector<double>(d, 1.0), std::vector<double>(d, -1.0)};
}

std::optional<double> restricted_moment(const Copula& c, const AffineProduct& f, PointView lo,
                                        PointView hi, int gauss_points) {
  if (f.dim() != c.dim() || f.beta.size() != f.alpha.size()) {
    throw InputError("affine product dimension does not match the copula");
  }
  check_unit_point(lo, c.dim(), "lower corner");
  check_unit_point(hi, c.dim(), "upper corner");
  return moment_impl(c, f, lo, hi, gauss_points);
}

std::optional<double> moment(const Copula& c, const AffineProduct& f, int gauss_points) {
  const Point zero(static_cast<std::size_t>(c.dim()), 0.0);
  const Point one(static_cast<std::size_t>(c.dim()), 1.0);
  return restricted_moment(c, f, zero, one, gauss_points);
}

// ---------------------------------------------------------------------------
// Sampling

bool is_samplable(const Copula& c) {
  return std::visit(
      Overloaded{
          [](const node::Reflected& r) { return is_samplable(r.inner); },
          [](const node::Permuted& p) { return is_samplable(p.inner); },
          [](const node::GlueProduct& g) { return is_samplable(g.left) && is_samplable(g.right); },
          [](const node::Mixture& m) {
            return std::all_of(m.parts.begin(), m.parts.end(),
                               [](const auto& part) { return is_samplable(part.first); });
          },
          [](const node::Refuted& r) { return is_samplable(r.inner); },
          [](const auto&) { return true; },
      },
      c.node().payload);
}

std::vector<Point> sample(const Copula& c, std::uint64_t seed, std::size_t n) {
  if (!is_samplable(c)) {
    throw UnsupportedRepresentation("no sampler for a " + c.kind_name() + " copula");
  }
  Engine rng(seed);
  long budget = kRejectionCap;
  std::vector<Point> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(draw(c, rng, budget));
  return out;
}

// ---------------------------------------------------------------------------
// Validation

ValidationReport validate(const Copula& c, int resolution, double tolerance) {
  if (resolution < 1) throw InputError("validation resolution must be positive");
  ValidationReport report;
  report.resolution = resolution;
  report.tolerance = tolerance;
  GridSpec spec;
  spec.vertices_per_axis = resolution + 1;
  const Axes axes = evaluation_axes(c.dim(), spec, {&c});
  const std::vector<double> table = cdf_table(c, axes);

  const std::size_t d = axes.size();
  std::vector<std::size_t> stride(d, 1);
  for (std::size_t k = d - 1; k > 0; --k) stride[k - 1] = stride[k] * axes[k].size();
  for (std::size_t v = 0; v < table.size(); ++v) {
    int zeros = 0;
    int ones = 0;
    std::size_t free_axis = 0;
    for (std::size_t k = 0; k < d; ++k) {
      const std::size_t i = (v / stride[k]) % axes[k].size();
      if (i == 0) ++zeros;
      if (i + 1 == axes[k].size()) {
        ++ones;
      } else {
        free_axis = k;
      }
    }
    if (zeros > 0) report.grounding_defect = std::max(report.grounding_defect, std::abs(table[v]));
    if (ones == static_cast<int>(d)) {
      report.margin_defect = std::max(report.margin_defect, std::abs(table[v] - 1.0));
    } else if (ones + 1 == static_cast<int>(d)) {
      const double x = axes[free_axis][(v / stride[free_axis]) % axes[free_axis].size()];
      report.margin_defect = std::max(report.margin_defect, std::abs(table[v] - x));
    }
  }
  for (double m : difference_table(table, axes)) report.worst_negative_mass = std::min(report.worst_negative_mass, m);
  report.pass = -report.worst_negative_mass <= tolerance && report.margin_defect <= tolerance &&
                report.grounding_defect <= tolerance;
  return report;
}

}  // namespace mincop

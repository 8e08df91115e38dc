#include "mincop/negdep.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "mincop/errors.hpp"
#include "mincop/transforms.hpp"

namespace mincop {

namespace {

// Slack for deciding that a sum of map values sits on the level exactly.
constexpr double kLevelSlack = 1e-12;

struct DefectScan {
  double defect = -1.0;
  Point worst;
  double lower = 0.0;  // C(worst)
  double upper = 0.0;  // Q^C[[worst, 1]]
  Axes axes;
};

DefectScan scan_defect(const Copula& c, const GridSpec& grid) {
  DefectScan s;
  s.axes = evaluation_axes(c.dim(), grid, {&c});
  const Point one(static_cast<std::size_t>(c.dim()), 1.0);
  s.defect = 0.0;
  s.worst.assign(one.size(), 0.5);
  for_each_vertex(s.axes, [&](const Point& u) {
    for (double x : u)
      if (x <= 0.0 || x >= 1.0) return;
    const double lower = detail::cdf(c, u);
    if (lower <= s.defect) return;
    const double upper = detail::box(c, u, one);
    const double m = std::min(lower, upper);
    // Strict improvement keeps the lexicographically first maximiser.
    if (m > s.defect) {
      s.defect = m;
      s.worst = u;
      s.lower = lower;
      s.upper = upper;
    }
  });
  return s;
}

// Smallest alpha in (0,1] with f(alpha) >= 0 for a continuous nondecreasing f
// with f(0) < 0 <= f(1), bisected to adjacent doubles.
double bisect(const std::function<double(double)>& f) {
  double lo = 0.0;
  double hi = 1.0;
  for (int i = 0; i < 2000; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (f(mid) >= 0.0 ? hi : lo) = mid;
  }
  return hi;
}

struct Term {
  std::size_t axis;
  MonotoneMap g;
};

double level_sum(const std::vector<Term>& terms, PointView x) {
  double h = 0.0;
  for (const auto& t : terms) h += t.g(x[t.axis]);
  return h;
}

bool all_affine(const std::vector<Term>& terms) {
  return std::all_of(terms.begin(), terms.end(),
                     [](const Term& t) { return t.g.form == MonotoneMap::Form::affine; });
}

// Fraction of the segment's parameter range inside the band.
double segment_fraction(const Segment& s, const std::vector<Term>& terms, double c, double eps) {
  auto h = [&](double t) { return level_sum(terms, s.at(t)) - c; };
  if (all_affine(terms)) {
    const double h0 = h(0.0);
    const double h1 = h(1.0) - h0;
    if (std::abs(h1) <= kLevelSlack) return std::abs(h0) <= eps + kLevelSlack ? 1.0 : 0.0;
    double t0 = (-eps - h0) / h1;
    double t1 = (eps - h0) / h1;
    if (t0 > t1) std::swap(t0, t1);
    return std::max(0.0, std::min(t1, 1.0) - std::max(t0, 0.0));
  }
  // Power maps: h is analytic in t, so unless it is constant its level sets
  // are finite and only eps > 0 bands carry mass.
  constexpr int kProbe = 64;
  const double h0 = h(0.0);
  bool constant = true;
  for (int i = 1; i <= kProbe && constant; ++i) constant = std::abs(h(double(i) / kProbe) - h0) <= kLevelSlack;
  if (constant) return std::abs(h0) <= eps + kLevelSlack ? 1.0 : 0.0;
  if (eps <= 0.0) return 0.0;
  constexpr int kPieces = 4096;
  auto inside = [&](double t) { return std::abs(h(t)) <= eps; };
  double total = 0.0;
  for (int i = 0; i < kPieces; ++i) {
    const double t0 = double(i) / kPieces;
    const double t1 = double(i + 1) / kPieces;
    const bool in0 = inside(t0);
    const bool in1 = inside(t1);
    if (in0 && in1) {
      total += t1 - t0;
    } else if (in0 != in1) {
      double lo = t0;
      double hi = t1;
      for (int k = 0; k < 60; ++k) {
        const double mid = 0.5 * (lo + hi);
        (inside(mid) == in0 ? lo : hi) = mid;
      }
      total += in0 ? lo - t0 : t1 - hi;
    }
  }
  return total;
}

double inverse(const MonotoneMap& g, double y) {
  if (g.form == MonotoneMap::Form::affine) return (y - g.beta) / g.alpha;
  if (y <= 0.0) return 0.0;
  return std::pow(y, 1.0 / g.gamma);
}

// Constant value of the level sum under Q^C, when it is almost surely constant
// and this is decidable from the representation.
std::optional<double> constant_level(const Copula& c, const std::vector<Term>& terms) {
  if (terms.empty()) return 0.0;
  if (auto sc = as_segments(c)) {
    std::optional<double> level;
    for (const auto& s : sc->segments()) {
      const double h0 = level_sum(terms, s.start);
      for (int i = 1; i <= 16; ++i) {
        if (std::abs(level_sum(terms, s.at(i / 16.0)) - h0) > kLevelSlack) return std::nullopt;
      }
      if (level && std::abs(*level - h0) > kLevelSlack) return std::nullopt;
      level = h0;
    }
    return level;
  }
  if (auto g = std::get_if<node::GlueProduct>(&c.node().payload)) {
    const auto dl = static_cast<std::size_t>(g->left.dim());
    std::vector<Term> left;
    std::vector<Term> right;
    for (const auto& t : terms) (t.axis < dl ? left : right).push_back(t.axis < dl ? t : Term{t.axis - dl, t.g});
    auto l = constant_level(g->left, left);
    auto r = constant_level(g->right, right);
    if (l && r) return *l + *r;
  }
  return std::nullopt;
}

std::optional<double> exact_band_mass(const Copula& c, const std::vector<Term>& terms, double level,
                                      double eps) {
  if (terms.empty()) return std::abs(level) <= eps + kLevelSlack ? 1.0 : 0.0;
  if (auto sc = as_segments(c)) {
    double mass = 0.0;
    for (const auto& s : sc->segments()) mass += s.mass * segment_fraction(s, terms, level, eps);
    return mass;
  }
  const Node& n = c.node();
  if (std::holds_alternative<node::Product>(n.payload) && terms.size() == 1) {
    const auto& g = terms.front().g;
    const double lo = std::clamp(inverse(g, level - eps), 0.0, 1.0);
    const double hi = std::clamp(inverse(g, level + eps), 0.0, 1.0);
    return std::max(0.0, hi - lo);
  }
  if (auto g = std::get_if<node::GlueProduct>(&n.payload)) {
    const auto dl = static_cast<std::size_t>(g->left.dim());
    std::vector<Term> left;
    std::vector<Term> right;
    for (const auto& t : terms) (t.axis < dl ? left : right).push_back(t.axis < dl ? t : Term{t.axis - dl, t.g});
    // With one part on a fixed level the band condition moves to the other.
    if (auto l = constant_level(g->left, left)) return exact_band_mass(g->right, right, level - *l, eps);
    if (auto r = constant_level(g->right, right)) return exact_band_mass(g->left, left, level - *r, eps);
  }
  return std::nullopt;
}

}  // namespace

// ---------------------------------------------------------------------------

TauCmCertificate tau_cm_defect(const Copula& c, const GridSpec& grid, double tolerance) {
  const DefectScan s = scan_defect(c, grid);
  return TauCmCertificate{describe_axes(s.axes), s.defect, s.worst, tolerance};
}

MonotoneMap MonotoneMap::affine(double alpha, double beta) {
  MonotoneMap g;
  g.form = Form::affine;
  g.alpha = alpha;
  g.beta = beta;
  g.check();
  return g;
}

MonotoneMap MonotoneMap::power(double gamma) {
  MonotoneMap g;
  g.form = Form::power;
  g.gamma = gamma;
  g.check();
  return g;
}

double MonotoneMap::operator()(double u) const {
  return form == Form::affine ? alpha * u + beta : std::pow(u, gamma);
}

void MonotoneMap::check() const {
  if (form == Form::affine && !(alpha > 0.0 && std::isfinite(alpha) && std::isfinite(beta))) {
    throw InputError("affine map needs a positive finite slope");
  }
  if (form == Form::power && !(gamma > 0.0 && std::isfinite(gamma))) {
    throw InputError("power map needs a positive finite exponent");
  }
}

HyperplaneMass hyperplane_mass(const Copula& c, const HyperplaneSpec& spec, double epsilon,
                               const HyperplaneOptions& options) {
  const int d = c.dim();
  if (spec.k.size() < 2) throw InputError("hyperplane index set K needs at least two coordinates");
  if (spec.g.size() != spec.k.size()) throw InputError("one map is required per coordinate in K");
  if (!(epsilon >= 0.0)) throw InputError("band half-width must be nonnegative");
  std::vector<Term> terms;
  std::vector<bool> seen(static_cast<std::size_t>(d), false);
  for (std::size_t i = 0; i < spec.k.size(); ++i) {
    const int axis = spec.k[i] - 1;
    if (axis < 0 || axis >= d || seen[static_cast<std::size_t>(axis)]) {
      throw InputError("hyperplane index set K must hold distinct coordinates in 1..d");
    }
    seen[static_cast<std::size_t>(axis)] = true;
    spec.g[i].check();
    terms.push_back({static_cast<std::size_t>(axis), spec.g[i]});
  }

  HyperplaneMass out;
  out.epsilon = epsilon;
  out.tolerance = options.tolerance;
  if (auto exact = exact_band_mass(c, terms, spec.c, epsilon)) {
    out.lower = out.upper = *exact;
    out.method = "exact";
    return out;
  }
  if (auto cb = as_checkerboard(c)) {
    // The level sum is monotone in every coordinate, so its range on a cell
    // is spanned by the lower and upper corners.
    const auto& shape = cb->shape();
    const auto& strides = cb->cell_strides();
    for (std::size_t cell = 0; cell < cb->cell_count(); ++cell) {
      const double m = cb->masses()[cell];
      if (m == 0.0) continue;
      double lo = 0.0;
      double hi = 0.0;
      for (const auto& t : terms) {
        const std::size_t j = (cell / strides[t.axis]) % shape[t.axis];
        lo += t.g(cb->cuts()[t.axis][j]);
        hi += t.g(cb->cuts()[t.axis][j + 1]);
      }
      if (lo >= spec.c - epsilon && hi <= spec.c + epsilon) out.lower += m;
      if (hi >= spec.c - epsilon && lo <= spec.c + epsilon) out.upper += m;
    }
    out.method = "checkerboard cell bounds";
    return out;
  }
  if (!is_samplable(c)) {
    throw UnsupportedRepresentation("no hyperplane-mass route for a " + c.kind_name() + " copula");
  }
  // Sampled points carry rounding error, so membership uses at least the
  // level slack.
  const double band = std::max(epsilon, 1e-10);
  long long hits = 0;
  for (const auto& x : sample(c, options.seed, static_cast<std::size_t>(options.samples))) {
    if (std::abs(level_sum(terms, x) - spec.c) <= band) ++hits;
  }
  const double n = static_cast<double>(options.samples);
  const double phat = static_cast<double>(hits) / n;
  const double half = 3.0 * std::sqrt(phat * (1.0 - phat) / n);
  out.lower = std::max(0.0, phat - half);
  out.upper = std::min(1.0, phat + half);
  out.method = "monte_carlo";
  out.samples = options.samples;
  out.seed = options.seed;
  return out;
}

std::optional<CornerPair> find_corner_pair(const Copula& c, const GridSpec& grid, double tolerance) {
  const DefectScan s = scan_defect(c, grid);
  if (s.defect <= tolerance) return std::nullopt;
  const auto d = static_cast<std::size_t>(c.dim());
  const Point one(d, 1.0);
  const Point zero(d, 0.0);
  CornerPair pair;
  pair.witness = s.worst;
  pair.defect = s.defect;
  const Point& u = s.worst;
  Point x(d);
  if (s.upper <= s.lower) {
    // p = Q[[u,1]]; shrink u towards 0 until C(alpha u) = p.
    pair.p = s.upper;
    pair.b = u;
    auto f = [&](double alpha) {
      for (std::size_t k = 0; k < d; ++k) x[k] = alpha * u[k];
      return detail::cdf(c, x) - pair.p;
    };
    const double alpha = bisect(f);
    pair.a.resize(d);
    for (std::size_t k = 0; k < d; ++k) pair.a[k] = alpha * u[k];
  } else {
    // The same on the survival side: p = C(u), push u towards 1 until
    // Q[[b,1]] = p.
    pair.p = s.lower;
    pair.a = u;
    auto f = [&](double alpha) {
      for (std::size_t k = 0; k < d; ++k) x[k] = 1.0 - alpha * (1.0 - u[k]);
      return detail::box(c, x, one) - pair.p;
    };
    const double alpha = bisect(f);
    pair.b.resize(d);
    for (std::size_t k = 0; k < d; ++k) pair.b[k] = 1.0 - alpha * (1.0 - u[k]);
  }
  const double mass_a = detail::box(c, zero, pair.a);
  const double mass_b = detail::box(c, pair.b, one);
  if (std::abs(mass_a - pair.p) > 1e-12 || std::abs(mass_b - pair.p) > 1e-12) {
    throw InternalConsistencyError("corner-pair bisection did not reach the corner mass");
  }
  return pair;
}

Refutation refute_minimality(const Copula& c, const RefuteOptions& options) {
  auto pair = find_corner_pair(c, options.grid, options.tolerance);
  if (!pair) return tau_cm_defect(c, options.grid, options.tolerance);

  const auto dim = static_cast<std::size_t>(c.dim());
  const Point zero(dim, 0.0);
  const Point one(dim, 1.0);
  Copula d = Copula::refuted(c, pair->a, pair->b, pair->p);

  int resolution = options.validation_resolution;
  if (resolution <= 0) resolution = default_vertices(c.dim()) - 1;
  const ValidationReport validation = validate(d, resolution);
  OrderOptions order;
  order.grid = options.grid;
  order.tolerance = options.tolerance;
  const OrderResult order_check = concordance_leq(d, c, order);
  const double mass_a = detail::box(c, zero, pair->a);
  const double mass_b = detail::box(c, pair->b, one);
  const double strict_gap = detail::cdf(c, pair->a) - detail::cdf(d, pair->a);
  const double rho_c = spearman_rho(c, options.concordance).estimate.value;
  const double rho_d = spearman_rho(d, options.concordance).estimate.value;

  if (!validation.pass) {
    throw InternalConsistencyError("constructed copula fails validation");
  }
  if (order_check.relation != Relation::strictly_below) {
    throw InternalConsistencyError("constructed copula is not strictly below the input (" +
                                   to_string(order_check.relation) + ")");
  }
  if (std::abs(mass_a - pair->p) > 1e-9 || std::abs(mass_b - pair->p) > 1e-9) {
    throw InternalConsistencyError("corner masses do not match p");
  }
  if (!(strict_gap > options.tolerance)) {
    throw InternalConsistencyError("D(a) is not strictly below C(a)");
  }
  if (!(rho_c - rho_d > 0.0)) {
    throw InternalConsistencyError("Spearman's rho did not drop");
  }
  return RefutationCertificate{.a = pair->a,
                               .b = pair->b,
                               .p = pair->p,
                               .witness = pair->witness,
                               .d = d,
                               .order_check = order_check,
                               .validation = validation,
                               .margin_defect = validation.margin_defect,
                               .corner_mass_a = mass_a,
                               .corner_mass_b = mass_b,
                               .strict_gap = strict_gap,
                               .rho_c = rho_c,
                               .rho_d = rho_d,
                               .rho_drop = rho_c - rho_d};
}

std::string to_string(DescendResult::Status s) {
  switch (s) {
    case DescendResult::Status::converged:
      return "converged";
    case DescendResult::Status::max_iterations:
      return "max_iterations";
    case DescendResult::Status::stalled:
      return "stalled";
  }
  return "unknown";
}

namespace {

// Merges the adjacent pair of slabs on `axis` with the smallest combined
// width. Slab sums stay equal to slab widths, so margins stay uniform.
CheckerboardCopula merge_narrowest(const CheckerboardCopula& cb, std::size_t axis) {
  const auto& cut = cb.cuts()[axis];
  std::size_t best = 0;
  for (std::size_t j = 1; j + 2 < cut.size(); ++j)
    if (cut[j + 2] - cut[j] < cut[best + 2] - cut[best]) best = j;
  Axes cuts = cb.cuts();
  cuts[axis].erase(cuts[axis].begin() + static_cast<long>(best) + 1);
  std::vector<std::size_t> shape = cb.shape();
  --shape[axis];
  std::vector<std::size_t> strides(shape.size(), 1);
  for (std::size_t k = shape.size() - 1; k > 0; --k) strides[k - 1] = strides[k] * shape[k];
  std::vector<double> masses(cb.cell_count() / cb.shape()[axis] * shape[axis], 0.0);
  for (std::size_t cell = 0; cell < cb.cell_count(); ++cell) {
    std::size_t target = 0;
    for (std::size_t k = 0; k < shape.size(); ++k) {
      std::size_t j = (cell / cb.cell_strides()[k]) % cb.shape()[k];
      if (k == axis && j > best) --j;
      target += j * strides[k];
    }
    masses[target] += cb.masses()[cell];
  }
  return CheckerboardCopula::make_unchecked(std::move(cuts), std::move(masses));
}

}  // namespace

DescendResult descend(const Copula& c, const DescendOptions& options) {
  if (options.n < 4) throw InputError("descend needs a resolution of at least 4");
  if (options.max_iter < 1) throw InputError("descend needs at least one iteration");
  const auto cap = static_cast<std::size_t>(4 * options.n);
  CheckerboardCopula current = discretize(c, options.n);
  std::vector<DescendStep> trace;
  GridSpec vertices;
  vertices.breakpoints_only = true;
  RefuteOptions refute;
  refute.grid = vertices;
  refute.tolerance = options.tolerance;

  for (int iteration = 0;; ++iteration) {
    const Copula cur(current);
    DescendStep row;
    row.iteration = iteration;
    row.kendall_integral = kendall_integral(cur).value;
    row.kendall_tau = kendall_tau(cur).estimate.value;
    row.rho = spearman_rho(cur).estimate.value;
    row.defect = tau_cm_defect(cur, vertices, options.tolerance).defect;
    row.cuts_per_axis = current.cuts().front().size() - 1;
    if (row.defect <= options.tolerance) {
      trace.push_back(row);
      return DescendResult{current, std::move(trace), DescendResult::Status::converged};
    }
    if (iteration >= options.max_iter) {
      trace.push_back(row);
      return DescendResult{current, std::move(trace), DescendResult::Status::max_iterations};
    }
    const auto refutation = refute_minimality(cur, refute);
    const auto* cert = std::get_if<RefutationCertificate>(&refutation);
    if (!cert) {
      throw InternalConsistencyError("refuter found no corner pair although the defect is positive");
    }
    row.p = cert->p;
    trace.push_back(row);

    Axes cuts = current.cuts();
    for (std::size_t k = 0; k < cuts.size(); ++k) cuts[k] = merge_axis(cuts[k], {cert->a[k], cert->b[k]});
    CheckerboardCopula next = discretize(cert->d, cuts);
    for (std::size_t k = 0; k < cuts.size(); ++k) {
      while (next.shape()[k] > cap) next = merge_narrowest(next, k);
    }
    const double next_rho = spearman_rho(Copula(next)).estimate.value;
    if (!(next_rho < row.rho)) {
      return DescendResult{current, std::move(trace), DescendResult::Status::stalled};
    }
    current = std::move(next);
  }
}

}  // namespace mincop

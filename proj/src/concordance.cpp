#include "mincop/concordance.hpp"

#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <variant>

#include "mincop/core.hpp"
#include "mincop/errors.hpp"
#include "mincop/transforms.hpp"
#include "quadrature.hpp"

namespace mincop {

namespace {

using Kind = MeasureEstimate::Kind;

int rank(Kind k) {
  switch (k) {
    case Kind::exact:
      return 0;
    case Kind::quadrature:
      return 1;
    case Kind::monte_carlo:
      return 2;
  }
  return 2;
}

// Mean and 3-sigma half-width, accumulated in draw order.
class RunningMean {
 public:
  void add(double x) {
    ++n_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (x - mean_);
  }
  double mean() const { return mean_; }
  double half_width() const {
    if (n_ < 2) return 0.0;
    const double var = m2_ / static_cast<double>(n_ - 1);
    return 3.0 * std::sqrt(var / static_cast<double>(n_));
  }

 private:
  long long n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

// Sum over cells of weight(cell) * mean of table over the cell's corners.
template <class Table, class Weight>
double corner_average_sum(const CheckerboardCopula& cb, Table&& table, Weight&& weight) {
  const std::size_t d = cb.shape().size();
  const auto& vs = cb.vertex_strides();
  const auto& cs = cb.cell_strides();
  const std::size_t corners = std::size_t{1} << d;
  std::vector<std::size_t> offsets(corners, 0);
  for (std::size_t mask = 0; mask < corners; ++mask)
    for (std::size_t k = 0; k < d; ++k)
      if (mask & (std::size_t{1} << k)) offsets[mask] += vs[k];
  double sum = 0.0;
  for (std::size_t cell = 0; cell < cb.cell_count(); ++cell) {
    const double w = weight(cell);
    if (w == 0.0) continue;
    std::size_t base = 0;
    for (std::size_t k = 0; k < d; ++k) base += ((cell / cs[k]) % cb.shape()[k]) * vs[k];
    double avg = 0.0;
    for (std::size_t off : offsets) avg += table(base + off);
    sum += w * avg / static_cast<double>(corners);
  }
  return sum;
}

double cell_volume(const CheckerboardCopula& cb, std::size_t cell) {
  double v = 1.0;
  for (std::size_t k = 0; k < cb.shape().size(); ++k) {
    const std::size_t j = (cell / cb.cell_strides()[k]) % cb.shape()[k];
    v *= cb.cuts()[k][j + 1] - cb.cuts()[k][j];
  }
  return v;
}

MeasureEstimate kendall_checkerboard(const CheckerboardCopula& cb) {
  MeasureEstimate e;
  e.value = corner_average_sum(
      cb, [&](std::size_t v) { return cb.vertex_cdf(v); },
      [&](std::size_t cell) { return cb.masses()[cell]; });
  e.kind = Kind::exact;
  e.samples_or_nodes = static_cast<long long>(cb.cell_count());
  e.route = "checkerboard corner average";
  return e;
}

double simpson(const std::function<double(double)>& f, int panels) {
  const double h = 1.0 / panels;
  double sum = f(0.0) + f(1.0);
  for (int i = 1; i < panels; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(i * h);
  return sum * h / 3.0;
}

MeasureEstimate kendall_segments(const SegmentCopula& sc, int panels) {
  if (panels < 4 || panels % 2) throw InputError("Simpson panel count must be even and at least 4");
  MeasureEstimate e;
  e.kind = Kind::quadrature;
  e.route = "composite Simpson along segments";
  for (const auto& s : sc.segments()) {
    Point x(s.start.size());
    auto f = [&](double t) {
      for (std::size_t k = 0; k < x.size(); ++k) x[k] = s.start[k] + t * (s.end[k] - s.start[k]);
      return sc.cdf(x);
    };
    const double fine = simpson(f, panels);
    const double coarse = simpson(f, panels / 2);
    e.value += s.mass * fine;
    e.error_bound += s.mass * std::abs(fine - coarse);
  }
  e.samples_or_nodes = static_cast<long long>(panels) * static_cast<long long>(sc.segments().size());
  return e;
}

MeasureEstimate kendall_monte_carlo(const Copula& c, const ConcordanceOptions& o) {
  if (!is_samplable(c)) throw UnsupportedRepresentation("no sampler for a " + c.kind_name() + " copula");
  const auto draws = sample(c, o.seed, static_cast<std::size_t>(o.samples));
  RunningMean acc;
  for (const auto& x : draws) acc.add(detail::cdf(c, x));
  MeasureEstimate e;
  e.value = acc.mean();
  e.kind = Kind::monte_carlo;
  e.error_bound = acc.half_width();
  e.samples_or_nodes = o.samples;
  e.seed = o.seed;
  e.route = "sample mean of C under Q^C";
  return e;
}

MeasureEstimate combine_product(const MeasureEstimate& a, const MeasureEstimate& b) {
  MeasureEstimate e;
  e.value = a.value * b.value;
  e.error_bound = std::abs(a.value) * b.error_bound + std::abs(b.value) * a.error_bound +
                  a.error_bound * b.error_bound;
  e.kind = rank(a.kind) >= rank(b.kind) ? a.kind : b.kind;
  e.samples_or_nodes = a.samples_or_nodes + b.samples_or_nodes;
  e.seed = a.seed ? a.seed : b.seed;
  e.route = "product over glued parts (" + a.route + "; " + b.route + ")";
  return e;
}

MeasureEstimate kendall_auto(const Copula& c, const ConcordanceOptions& o) {
  if (auto cb = c.as_checkerboard_ptr()) return kendall_checkerboard(*cb);
  if (auto sc = c.as_segments_ptr()) return kendall_segments(*sc, o.simpson_panels);
  if (auto g = std::get_if<node::GlueProduct>(&c.node().payload)) {
    // E = C(u) D(v) under Q^C x Q^D factorises.
    return combine_product(kendall_auto(g->left, o), kendall_auto(g->right, o));
  }
  if (auto cb = as_checkerboard(c)) return kendall_checkerboard(*cb);
  if (auto sc = as_segments(c)) return kendall_segments(*sc, o.simpson_panels);
  if (is_samplable(c)) return kendall_monte_carlo(c, o);
  throw UnsupportedRepresentation("no Kendall integral route for a " + c.kind_name() + " copula");
}

MeasureEstimate spearman_checkerboard(const CheckerboardCopula& cb) {
  auto vol = [&](std::size_t cell) { return cell_volume(cb, cell); };
  const double lower = corner_average_sum(cb, [&](std::size_t v) { return cb.vertex_cdf(v); }, vol);
  const double upper =
      corner_average_sum(cb, [&](std::size_t v) { return cb.vertex_survival(v); }, vol);
  MeasureEstimate e;
  e.value = 0.5 * (lower + upper);
  e.kind = Kind::exact;
  e.samples_or_nodes = static_cast<long long>(cb.cell_count());
  e.route = "checkerboard corner average";
  return e;
}

// int C dPi = E prod (1 - U_k) and int tau C dPi = E prod U_k.
std::optional<MeasureEstimate> spearman_moments(const Copula& c) {
  const int d = c.dim();
  const auto lo16 = moment(c, AffineProduct::complements(d), 16);
  const auto hi16 = moment(c, AffineProduct::coordinates(d), 16);
  if (!lo16 || !hi16) return std::nullopt;
  const auto lo12 = moment(c, AffineProduct::complements(d), 12);
  const auto hi12 = moment(c, AffineProduct::coordinates(d), 12);
  MeasureEstimate e;
  e.value = 0.5 * (*lo16 + *hi16);
  e.error_bound = std::abs(e.value - 0.5 * (*lo12 + *hi12));
  e.kind = c.kind() == Copula::Kind::product ? Kind::exact : Kind::quadrature;
  if (e.kind == Kind::exact) e.error_bound = 0.0;
  e.samples_or_nodes = 16;
  e.route = "product moments of Q^C (Gauss-Legendre along segments)";
  return e;
}

double rho_integrand(const Copula& c, const Point& u, Point& scratch) {
  const Point one(u.size(), 1.0);
  for (std::size_t k = 0; k < u.size(); ++k) scratch[k] = 1.0 - u[k];
  return 0.5 * (detail::cdf(c, u) + detail::box(c, scratch, one));
}

double cube_rule(const Copula& c, int panels) {
  const auto& rule = detail::gauss_legendre(4);
  const auto d = static_cast<std::size_t>(c.dim());
  std::vector<double> x;
  std::vector<double> w;
  for (int p = 0; p < panels; ++p) {
    for (std::size_t q = 0; q < rule.x.size(); ++q) {
      x.push_back((p + rule.x[q]) / panels);
      w.push_back(rule.w[q] / panels);
    }
  }
  const std::size_t m = x.size();
  std::vector<std::size_t> idx(d, 0);
  Point u(d);
  Point scratch(d);
  double sum = 0.0;
  while (true) {
    double weight = 1.0;
    for (std::size_t k = 0; k < d; ++k) {
      u[k] = x[idx[k]];
      weight *= w[idx[k]];
    }
    sum += weight * rho_integrand(c, u, scratch);
    std::size_t k = d;
    while (k > 0) {
      --k;
      if (++idx[k] < m) break;
      idx[k] = 0;
      if (k == 0) return sum;
    }
  }
}

int cube_panels(int dim) {
  switch (dim) {
    case 1:
    case 2:
      return 64;
    case 3:
      return 16;
    case 4:
      return 8;
    default:
      return 4;
  }
}

MeasureEstimate spearman_cube(const Copula& c) {
  const int panels = cube_panels(c.dim());
  MeasureEstimate e;
  e.value = cube_rule(c, panels);
  e.error_bound = std::abs(e.value - cube_rule(c, panels / 2));
  e.kind = Kind::quadrature;
  e.samples_or_nodes = static_cast<long long>(std::pow(4.0 * panels, c.dim()));
  e.route = "composite tensor Gauss-Legendre on the cube";
  return e;
}

MeasureEstimate spearman_monte_carlo(const Copula& c, const ConcordanceOptions& o) {
  RunningMean acc;
  MeasureEstimate e;
  if (is_samplable(c)) {
    for (const auto& x : sample(c, o.seed, static_cast<std::size_t>(o.samples))) {
      double lower = 1.0;
      double upper = 1.0;
      for (double v : x) {
        lower *= 1.0 - v;
        upper *= v;
      }
      acc.add(0.5 * (lower + upper));
    }
    e.route = "sample mean of (prod U + prod (1-U))/2 under Q^C";
  } else {
    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const auto d = static_cast<std::size_t>(c.dim());
    Point u(d);
    Point scratch(d);
    for (long long i = 0; i < o.samples; ++i) {
      for (auto& v : u) v = unit(rng);
      acc.add(rho_integrand(c, u, scratch));
    }
    e.route = "uniform draws on the cube";
  }
  e.value = acc.mean();
  e.error_bound = acc.half_width();
  e.kind = Kind::monte_carlo;
  e.samples_or_nodes = o.samples;
  e.seed = o.seed;
  return e;
}

FunctionalReport normalise(const std::string& name, int dim, const MeasureEstimate& integral,
                           double normalization, double offset) {
  FunctionalReport r;
  r.name = name;
  r.dim = dim;
  r.integral = integral;
  r.normalization = normalization;
  r.offset = offset;
  r.estimate = integral;
  r.estimate.value = normalization * (integral.value - offset);
  r.estimate.error_bound = std::abs(normalization) * integral.error_bound;
  return r;
}

}  // namespace

std::string to_string(Method m) {
  switch (m) {
    case Method::automatic:
      return "auto";
    case Method::exact_checkerboard:
      return "exact_checkerboard";
    case Method::segment_quadrature:
      return "segment_quadrature";
    case Method::cube_quadrature:
      return "cube_quadrature";
    case Method::monte_carlo:
      return "monte_carlo";
  }
  return "auto";
}

Method method_from_string(const std::string& name) {
  for (Method m : {Method::automatic, Method::exact_checkerboard, Method::segment_quadrature,
                   Method::cube_quadrature, Method::monte_carlo}) {
    if (to_string(m) == name) return m;
  }
  if (name == "automatic") return Method::automatic;
  throw InputError("unknown method '" + name + "'");
}

std::string to_string(MeasureEstimate::Kind k) {
  switch (k) {
    case Kind::exact:
      return "exact";
    case Kind::quadrature:
      return "quadrature";
    case Kind::monte_carlo:
      return "monte_carlo";
  }
  return "exact";
}

double kendall_normalization(int dim) {
  return std::ldexp(1.0, dim) / (std::ldexp(1.0, dim - 1) - 1.0);
}

double spearman_normalization(int dim) {
  return std::ldexp(1.0, dim) * (dim + 1) / (std::ldexp(1.0, dim) - (dim + 1));
}

MeasureEstimate kendall_integral(const Copula& c, const ConcordanceOptions& o) {
  switch (o.method) {
    case Method::automatic:
      return kendall_auto(c, o);
    case Method::exact_checkerboard:
      if (auto cb = as_checkerboard(c)) return kendall_checkerboard(*cb);
      throw UnsupportedRepresentation("no exact checkerboard form for a " + c.kind_name() + " copula");
    case Method::segment_quadrature:
      if (auto sc = as_segments(c)) return kendall_segments(*sc, o.simpson_panels);
      throw UnsupportedRepresentation("no segment form for a " + c.kind_name() + " copula");
    case Method::cube_quadrature:
      throw UnsupportedRepresentation("Kendall's tau integrates against Q^C, not the cube");
    case Method::monte_carlo:
      return kendall_monte_carlo(c, o);
  }
  throw InputError("unknown method");
}

MeasureEstimate spearman_integral(const Copula& c, const ConcordanceOptions& o) {
  switch (o.method) {
    case Method::automatic: {
      if (auto cb = c.as_checkerboard_ptr()) return spearman_checkerboard(*cb);
      if (auto m = spearman_moments(c)) return *m;
      if (c.dim() <= 4) return spearman_cube(c);
      return spearman_monte_carlo(c, o);
    }
    case Method::exact_checkerboard:
      if (auto cb = as_checkerboard(c)) return spearman_checkerboard(*cb);
      throw UnsupportedRepresentation("no exact checkerboard form for a " + c.kind_name() + " copula");
    case Method::segment_quadrature:
      if (auto m = spearman_moments(c)) return *m;
      throw UnsupportedRepresentation("no segment moment route for a " + c.kind_name() + " copula");
    case Method::cube_quadrature:
      return spearman_cube(c);
    case Method::monte_carlo:
      return spearman_monte_carlo(c, o);
  }
  throw InputError("unknown method");
}

FunctionalReport kendall_tau(const Copula& c, const ConcordanceOptions& o) {
  const int d = c.dim();
  return normalise("kendall_tau", d, kendall_integral(c, o), kendall_normalization(d), std::ldexp(1.0, -d));
}

FunctionalReport spearman_rho(const Copula& c, const ConcordanceOptions& o) {
  const int d = c.dim();
  return normalise("spearman_rho", d, spearman_integral(c, o), spearman_normalization(d),
                   std::ldexp(1.0, -d));
}

FunctionalReport pi_integral(const Copula& c, const ConcordanceOptions& o) {
  const int d = c.dim();
  MeasureEstimate e;
  std::optional<double> exact;
  if (o.method != Method::monte_carlo) exact = moment(c, AffineProduct::coordinates(d), 16);
  if (exact) {
    e.value = *exact;
    const bool closed = c.representation() == Copula::Representation::checkerboard ||
                        c.kind() == Copula::Kind::product;
    e.kind = closed ? Kind::exact : Kind::quadrature;
    if (!closed) e.error_bound = std::abs(*exact - *moment(c, AffineProduct::coordinates(d), 12));
    e.samples_or_nodes = 16;
    e.route = closed ? "closed-form cell moments" : "Gauss-Legendre along segments";
  } else {
    if (!is_samplable(c)) {
      throw UnsupportedRepresentation("no Pi-integral route for a " + c.kind_name() + " copula");
    }
    RunningMean acc;
    for (const auto& x : sample(c, o.seed, static_cast<std::size_t>(o.samples))) {
      double v = 1.0;
      for (double xi : x) v *= xi;
      acc.add(v);
    }
    e.value = acc.mean();
    e.error_bound = acc.half_width();
    e.kind = Kind::monte_carlo;
    e.samples_or_nodes = o.samples;
    e.seed = o.seed;
    e.route = "sample mean of prod U under Q^C";
  }
  return normalise("pi_integral", d, e, 1.0, 0.0);
}

double reflection_sum(Functional f, const Copula& c, const ConcordanceOptions& o) {
  const int d = c.dim();
  double sum = 0.0;
  for (int mask = 0; mask < (1 << d); ++mask) {
    std::vector<int> axes;
    for (int k = 0; k < d; ++k)
      if (mask & (1 << k)) axes.push_back(k);
    const Copula r = reflect(c, ReflectionSet::from_zero_based(d, axes));
    sum += (f == Functional::kendall_tau ? kendall_tau(r, o) : spearman_rho(r, o)).estimate.value;
  }
  return sum;
}

}  // namespace mincop

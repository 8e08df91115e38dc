#include "mincop/copula.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <sstream>

#include "mincop/errors.hpp"

namespace mincop {

namespace {

std::atomic<int> g_dimension_cap{6};

constexpr double kStructureTol = 1e-12;

void check_dim(int dim, int min_dim) {
  if (dim < min_dim) {
    throw DomainError("dimension " + std::to_string(dim) + " is below the minimum " +
                      std::to_string(min_dim));
  }
  if (dim > dimension_cap()) {
    throw DomainError("dimension " + std::to_string(dim) + " exceeds the dimension cap " +
                      std::to_string(dimension_cap()));
  }
}

void check_cuts(const Axes& cuts) {
  for (std::size_t k = 0; k < cuts.size(); ++k) {
    const auto& c = cuts[k];
    if (c.size() < 2 || c.front() != 0.0 || c.back() != 1.0) {
      throw InputError("cuts on axis " + std::to_string(k + 1) + " must start at 0 and end at 1");
    }
    for (std::size_t j = 1; j < c.size(); ++j) {
      if (!(c[j] > c[j - 1])) {
        throw InputError("cuts on axis " + std::to_string(k + 1) + " must be strictly increasing");
      }
    }
  }
}

}  // namespace

int dimension_cap() { return g_dimension_cap.load(); }

void set_dimension_cap(int cap) {
  if (cap < 2 || cap > 20) throw InputError("dimension cap must lie in [2, 20]");
  g_dimension_cap.store(cap);
}

void check_unit_point(PointView u, int dim, const char* what) {
  if (static_cast<int>(u.size()) != dim) {
    throw InputError(std::string(what) + " has " + std::to_string(u.size()) +
                     " coordinates, expected " + std::to_string(dim));
  }
  for (double x : u) {
    if (!(x >= 0.0 && x <= 1.0)) {
      throw InputError(std::string(what) + " has a coordinate outside [0,1]");
    }
  }
}

// ---------------------------------------------------------------------------
// ReflectionSet / Permutation

ReflectionSet::ReflectionSet(int dim) : mask_(static_cast<std::size_t>(dim), false) {}

ReflectionSet ReflectionSet::from_zero_based(int dim, std::span<const int> axes) {
  ReflectionSet r(dim);
  for (int a : axes) {
    if (a < 0 || a >= dim) throw InputError("reflection axis out of range");
    r.mask_[static_cast<std::size_t>(a)] = true;
  }
  return r;
}

ReflectionSet ReflectionSet::from_one_based(int dim, std::span<const int> axes) {
  std::vector<int> zero(axes.begin(), axes.end());
  for (int& a : zero) --a;
  return from_zero_based(dim, zero);
}

ReflectionSet ReflectionSet::all(int dim) {
  ReflectionSet r(dim);
  r.mask_.assign(static_cast<std::size_t>(dim), true);
  return r;
}

int ReflectionSet::size() const {
  return static_cast<int>(std::count(mask_.begin(), mask_.end(), true));
}

std::vector<int> ReflectionSet::zero_based() const {
  std::vector<int> out;
  for (int k = 0; k < dim(); ++k)
    if (contains(k)) out.push_back(k);
  return out;
}

std::vector<int> ReflectionSet::one_based() const {
  auto out = zero_based();
  for (int& k : out) ++k;
  return out;
}

ReflectionSet ReflectionSet::symmetric_difference(const ReflectionSet& other) const {
  if (other.dim() != dim()) throw InputError("reflection sets of different dimension");
  ReflectionSet r(dim());
  for (std::size_t k = 0; k < mask_.size(); ++k) r.mask_[k] = mask_[k] != other.mask_[k];
  return r;
}

Permutation Permutation::from_zero_based(std::vector<int> image) {
  std::vector<bool> seen(image.size(), false);
  for (int i : image) {
    if (i < 0 || i >= static_cast<int>(image.size()) || seen[static_cast<std::size_t>(i)]) {
      throw InputError("permutation is not a bijection");
    }
    seen[static_cast<std::size_t>(i)] = true;
  }
  Permutation p;
  p.image_ = std::move(image);
  return p;
}

Permutation Permutation::from_one_based(std::span<const int> image) {
  std::vector<int> zero(image.begin(), image.end());
  for (int& i : zero) --i;
  return from_zero_based(std::move(zero));
}

Permutation Permutation::identity(int dim) {
  std::vector<int> id(static_cast<std::size_t>(dim));
  std::iota(id.begin(), id.end(), 0);
  return from_zero_based(std::move(id));
}

Permutation Permutation::swap(int dim, int i, int j) {
  auto p = identity(dim);
  std::swap(p.image_.at(static_cast<std::size_t>(i)), p.image_.at(static_cast<std::size_t>(j)));
  return p;
}

bool Permutation::is_identity() const {
  for (int i = 0; i < dim(); ++i)
    if ((*this)[i] != i) return false;
  return true;
}

Permutation Permutation::after(const Permutation& inner) const {
  if (inner.dim() != dim()) throw InputError("permutations of different dimension");
  // Result axis i = (this result axis i) = inner-result axis image(i)
  //               = original axis inner.image(image(i)).
  std::vector<int> out(image_.size());
  for (std::size_t i = 0; i < image_.size(); ++i) out[i] = inner[image_[i]];
  return from_zero_based(std::move(out));
}

std::vector<int> Permutation::one_based() const {
  auto out = image_;
  for (int& i : out) ++i;
  return out;
}

// ---------------------------------------------------------------------------
// CheckerboardCopula

Axes CheckerboardCopula::uniform_cuts(int dim, int n) {
  if (n < 1) throw InputError("grid resolution must be positive");
  std::vector<double> axis(static_cast<std::size_t>(n) + 1);
  for (int j = 0; j <= n; ++j) axis[static_cast<std::size_t>(j)] = static_cast<double>(j) / n;
  axis.back() = 1.0;
  return Axes(static_cast<std::size_t>(dim), axis);
}

CheckerboardCopula CheckerboardCopula::make_unchecked(Axes cuts, std::vector<double> masses) {
  if (cuts.empty()) throw InputError("checkerboard needs at least one axis");
  check_cuts(cuts);
  check_dim(static_cast<int>(cuts.size()), 1);
  CheckerboardCopula cb;
  cb.cuts_ = std::move(cuts);
  std::size_t cells = 1;
  for (const auto& c : cb.cuts_) {
    cb.shape_.push_back(c.size() - 1);
    cells *= c.size() - 1;
  }
  if (masses.size() != cells) {
    throw InputError("checkerboard has " + std::to_string(masses.size()) + " masses, grid has " +
                     std::to_string(cells) + " cells");
  }
  cb.masses_ = std::move(masses);
  cb.tabulate();
  return cb;
}

CheckerboardCopula CheckerboardCopula::make(Axes cuts, std::vector<double> masses) {
  auto cb = make_unchecked(std::move(cuts), std::move(masses));
  for (double m : cb.masses_) {
    if (!(m >= 0.0)) throw DomainError("checkerboard mass is negative");
  }
  const double total = cb.lower_.back();
  if (std::abs(total - 1.0) > kStructureTol) {
    throw DomainError("checkerboard total mass is " + std::to_string(total));
  }
  const int d = cb.dim();
  for (int k = 0; k < d; ++k) {
    std::vector<double> slab(cb.shape_[static_cast<std::size_t>(k)], 0.0);
    const std::size_t stride = cb.cstrides_[static_cast<std::size_t>(k)];
    const std::size_t n = cb.shape_[static_cast<std::size_t>(k)];
    for (std::size_t i = 0; i < cb.masses_.size(); ++i) slab[(i / stride) % n] += cb.masses_[i];
    const auto& c = cb.cuts_[static_cast<std::size_t>(k)];
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(slab[j] - (c[j + 1] - c[j])) > kStructureTol) {
        std::ostringstream msg;
        msg << "checkerboard margin " << (k + 1) << " is not uniform on slab " << j << " (mass "
            << slab[j] << ", width " << (c[j + 1] - c[j]) << ")";
        throw DomainError(msg.str());
      }
    }
  }
  return cb;
}

void CheckerboardCopula::tabulate() {
  const std::size_t d = cuts_.size();
  cstrides_.assign(d, 1);
  vstrides_.assign(d, 1);
  for (std::size_t k = d - 1; k > 0; --k) {
    cstrides_[k - 1] = cstrides_[k] * shape_[k];
    vstrides_[k - 1] = vstrides_[k] * (shape_[k] + 1);
  }
  const std::size_t nv = vstrides_[0] * (shape_[0] + 1);
  lower_.assign(nv, 0.0);
  upper_.assign(nv, 0.0);
  std::vector<std::size_t> idx(d, 0);
  for (std::size_t c = 0; c < masses_.size(); ++c) {
    std::size_t v = 0;
    for (std::size_t k = 0; k < d; ++k) {
      idx[k] = (c / cstrides_[k]) % shape_[k];
      v += idx[k] * vstrides_[k];
    }
    upper_[v] = masses_[c];
    std::size_t vp = v;
    for (std::size_t k = 0; k < d; ++k) vp += vstrides_[k];
    lower_[vp] = masses_[c];
  }
  for (std::size_t k = 0; k < d; ++k) {
    const std::size_t s = vstrides_[k];
    const std::size_t n = shape_[k] + 1;
    for (std::size_t v = 0; v < nv; ++v)
      if ((v / s) % n >= 1) lower_[v] += lower_[v - s];
    for (std::size_t v = nv; v-- > 0;)
      if ((v / s) % n + 1 < n) upper_[v] += upper_[v + s];
  }
  running_.resize(masses_.size());
  std::partial_sum(masses_.begin(), masses_.end(), running_.begin());
}

std::size_t CheckerboardCopula::cell_index(std::span<const std::size_t> cell) const {
  std::size_t i = 0;
  for (std::size_t k = 0; k < cell.size(); ++k) i += cell[k] * cstrides_[k];
  return i;
}

std::size_t CheckerboardCopula::vertex_index(std::span<const std::size_t> vertex) const {
  std::size_t i = 0;
  for (std::size_t k = 0; k < vertex.size(); ++k) i += vertex[k] * vstrides_[k];
  return i;
}

double CheckerboardCopula::cdf(PointView u) const {
  const std::size_t d = cuts_.size();
  std::size_t base = 0;
  double w[32];
  std::size_t stride[32];
  std::size_t active = 0;
  for (std::size_t k = 0; k < d; ++k) {
    const auto& c = cuts_[k];
    const double x = u[k];
    std::size_t j =
        static_cast<std::size_t>(std::upper_bound(c.begin(), c.end(), x) - c.begin());
    j = j == 0 ? 0 : j - 1;
    if (j >= shape_[k]) j = shape_[k] - 1;
    double t = (x - c[j]) / (c[j + 1] - c[j]);
    t = std::clamp(t, 0.0, 1.0);
    if (t == 1.0) {
      base += (j + 1) * vstrides_[k];
    } else {
      base += j * vstrides_[k];
      if (t > 0.0) {
        w[active] = t;
        stride[active] = vstrides_[k];
        ++active;
      }
    }
  }
  if (active == 0) return lower_[base];
  double sum = 0.0;
  const std::size_t corners = std::size_t{1} << active;
  for (std::size_t mask = 0; mask < corners; ++mask) {
    double weight = 1.0;
    std::size_t v = base;
    for (std::size_t a = 0; a < active; ++a) {
      if (mask & (std::size_t{1} << a)) {
        weight *= w[a];
        v += stride[a];
      } else {
        weight *= 1.0 - w[a];
      }
    }
    sum += weight * lower_[v];
  }
  return sum;
}

double CheckerboardCopula::box_mass(PointView lo, PointView hi) const {
  const std::size_t d = cuts_.size();
  double corner[32];
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
        if (lo[k] == 0.0) zero = true;
      }
    }
    if (zero) continue;
    const double v = cdf(PointView(corner, d));
    sum += (lows % 2 == 0) ? v : -v;
  }
  return sum;
}

// ---------------------------------------------------------------------------
// SegmentCopula

Point Segment::at(double t) const {
  Point p(start.size());
  for (std::size_t k = 0; k < p.size(); ++k) p[k] = start[k] + t * (end[k] - start[k]);
  return p;
}

std::pair<double, double> SegmentCopula::parameter_window(const Segment& s, PointView lo,
                                                          PointView hi) {
  double t0 = 0.0;
  double t1 = 1.0;
  for (std::size_t k = 0; k < s.start.size(); ++k) {
    const double delta = s.end[k] - s.start[k];
    double a = (lo[k] - s.start[k]) / delta;
    double b = (hi[k] - s.start[k]) / delta;
    if (delta < 0.0) std::swap(a, b);
    t0 = std::max(t0, a);
    t1 = std::min(t1, b);
    if (t0 >= t1) return {t0, t0};
  }
  return {t0, t1};
}

SegmentCopula SegmentCopula::make(int dim, std::vector<Segment> segments) {
  check_dim(dim, 1);
  if (segments.empty()) throw InputError("segment copula needs at least one segment");
  double total = 0.0;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const auto& s = segments[i];
    check_unit_point(s.start, dim, "segment start");
    check_unit_point(s.end, dim, "segment end");
    if (!(s.mass > 0.0)) throw InputError("segment " + std::to_string(i) + " has nonpositive mass");
    for (int k = 0; k < dim; ++k) {
      if (std::abs(s.end[static_cast<std::size_t>(k)] - s.start[static_cast<std::size_t>(k)]) <
          1e-14) {
        throw DomainError("segment " + std::to_string(i) + " is constant in coordinate " +
                          std::to_string(k + 1) + " (axis-parallel or zero-length)");
      }
    }
    total += s.mass;
  }
  if (std::abs(total - 1.0) > kStructureTol) {
    throw DomainError("segment masses sum to " + std::to_string(total));
  }
  SegmentCopula sc;
  sc.dim_ = dim;
  sc.segments_ = std::move(segments);

  // Each margin is piecewise linear with kinks at endpoint coordinates, so
  // checking at the kinks and a uniform grid covers it.
  for (int k = 0; k < dim; ++k) {
    std::vector<double> probes;
    for (int j = 0; j <= 64; ++j) probes.push_back(j / 64.0);
    for (const auto& s : sc.segments_) {
      probes.push_back(s.start[static_cast<std::size_t>(k)]);
      probes.push_back(s.end[static_cast<std::size_t>(k)]);
    }
    Point lo(static_cast<std::size_t>(dim), 0.0);
    Point hi(static_cast<std::size_t>(dim), 1.0);
    for (double x : probes) {
      hi[static_cast<std::size_t>(k)] = x;
      const double m = sc.box_mass(lo, hi);
      if (std::abs(m - x) > kStructureTol) {
        std::ostringstream msg;
        msg << "segment copula margin " << (k + 1) << " is not uniform at " << x << " (mass " << m
            << ")";
        throw DomainError(msg.str());
      }
    }
  }
  return sc;
}

double SegmentCopula::cdf(PointView u) const {
  Point zero(u.size(), 0.0);
  return box_mass(zero, u);
}

double SegmentCopula::box_mass(PointView lo, PointView hi) const {
  double sum = 0.0;
  for (const auto& s : segments_) {
    const auto [t0, t1] = parameter_window(s, lo, hi);
    if (t1 > t0) sum += s.mass * (t1 - t0);
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Copula

Copula::Copula(CheckerboardCopula cb)
    : node_(std::make_shared<const Node>(
          Node{cb.dim(), std::make_shared<const CheckerboardCopula>(std::move(cb))})) {}

Copula::Copula(SegmentCopula seg)
    : node_(std::make_shared<const Node>(
          Node{seg.dim(), std::make_shared<const SegmentCopula>(std::move(seg))})) {}

Copula Copula::upper_frechet(int dim) {
  check_dim(dim, 1);
  return Copula(std::make_shared<const Node>(Node{dim, node::UpperFrechet{dim}}));
}

Copula Copula::lower_frechet() {
  return Copula(std::make_shared<const Node>(Node{2, node::LowerFrechet{}}));
}

Copula Copula::product(int dim) {
  check_dim(dim, 1);
  return Copula(std::make_shared<const Node>(Node{dim, node::Product{dim}}));
}

Copula Copula::clayton_extreme(int dim) {
  check_dim(dim, 2);
  return Copula(std::make_shared<const Node>(Node{dim, node::ClaytonExtreme{dim}}));
}

Copula Copula::reflected(Copula inner, ReflectionSet k) {
  const int d = inner.dim();
  if (k.dim() != d) throw InputError("reflection set dimension does not match the copula");
  return Copula(std::make_shared<const Node>(Node{d, node::Reflected{std::move(inner), std::move(k)}}));
}

Copula Copula::permuted(Copula inner, Permutation sigma) {
  const int d = inner.dim();
  if (sigma.dim() != d) throw InputError("permutation dimension does not match the copula");
  return Copula(
      std::make_shared<const Node>(Node{d, node::Permuted{std::move(inner), std::move(sigma)}}));
}

Copula Copula::glue_product(Copula left, Copula right) {
  const int d = left.dim() + right.dim();
  check_dim(d, 2);
  return Copula(
      std::make_shared<const Node>(Node{d, node::GlueProduct{std::move(left), std::move(right)}}));
}

Copula Copula::mixture(std::vector<std::pair<Copula, double>> parts) {
  if (parts.empty()) throw DomainError("mixture needs at least one part");
  const int d = parts.front().first.dim();
  double total = 0.0;
  for (const auto& [c, w] : parts) {
    if (c.dim() != d) throw InputError("mixture parts have different dimensions");
    if (!(w > 0.0)) throw DomainError("mixture weights must be positive");
    total += w;
  }
  if (std::abs(total - 1.0) > kStructureTol) {
    throw DomainError("mixture weights sum to " + std::to_string(total));
  }
  return Copula(std::make_shared<const Node>(Node{d, node::Mixture{std::move(parts)}}));
}

Copula Copula::refuted(Copula inner, Point a, Point b, double p) {
  const int d = inner.dim();
  check_unit_point(a, d, "corner a");
  check_unit_point(b, d, "corner b");
  for (int k = 0; k < d; ++k) {
    const double ak = a[static_cast<std::size_t>(k)];
    const double bk = b[static_cast<std::size_t>(k)];
    if (!(ak > 0.0 && bk < 1.0 && ak <= bk)) {
      throw DomainError("corner points must satisfy 0 < a <= b < 1");
    }
  }
  if (!(p > 0.0 && p <= 0.5)) throw DomainError("corner mass p must lie in (0, 0.5]");
  return Copula(std::make_shared<const Node>(
      Node{d, node::Refuted{std::move(inner), std::move(a), std::move(b), p}}));
}

int Copula::dim() const { return node_->dim; }

Copula::Kind Copula::kind() const { return static_cast<Kind>(node_->payload.index()); }

Copula::Representation Copula::representation() const {
  switch (kind()) {
    case Kind::checkerboard:
      return Representation::checkerboard;
    case Kind::segments:
      return Representation::segments;
    default:
      return Representation::analytic;
  }
}

std::string Copula::kind_name() const {
  switch (kind()) {
    case Kind::checkerboard:
      return "checkerboard";
    case Kind::segments:
      return "segments";
    case Kind::upper_frechet:
      return "upper_frechet";
    case Kind::lower_frechet:
      return "lower_frechet";
    case Kind::product:
      return "product";
    case Kind::clayton_extreme:
      return "clayton_extreme";
    case Kind::reflected:
      return "reflected";
    case Kind::permuted:
      return "permuted";
    case Kind::glue_product:
      return "glue_product";
    case Kind::mixture:
      return "mixture";
    case Kind::refuted:
      return "refuted";
  }
  return "unknown";
}

const CheckerboardCopula* Copula::as_checkerboard_ptr() const {
  auto p = std::get_if<std::shared_ptr<const CheckerboardCopula>>(&node_->payload);
  return p ? p->get() : nullptr;
}

const SegmentCopula* Copula::as_segments_ptr() const {
  auto p = std::get_if<std::shared_ptr<const SegmentCopula>>(&node_->payload);
  return p ? p->get() : nullptr;
}

}  // namespace mincop

#include <doctest.h>

#include "mincop/catalog.hpp"
#include "mincop/core.hpp"
#include "mincop/errors.hpp"
#include "mincop/transforms.hpp"
#include "oracles.hpp"

using namespace mincop;

namespace {

Copula M(int d) { return make_basic(BasicKind::upper_frechet, d); }
Copula W() { return make_basic(BasicKind::lower_frechet_2d, 2); }
Copula Pi(int d) { return make_basic(BasicKind::product, d); }

std::vector<Copula> zoo() {
  return {M(2),
          M(3),
          W(),
          Pi(2),
          Pi(3),
          make_basic(BasicKind::clayton_extreme, 3),
          Copula(make_triangle_3d()),
          Copula(shuffle_a()),
          Copula(make_reflected_upper(3, {1})),
          reflect(Pi(3), ReflectionSet::from_one_based(3, std::vector<int>{2})),
          make_glue_product(W(), Pi(1)),
          make_mixture({{M(2), 0.3}, {W(), 0.7}}),
          Copula(random_checkerboard(2, 5, 11)),
          Copula(random_checkerboard(3, 4, 12)),
          Copula::refuted(Pi(2), {0.5, 0.5}, {0.5, 0.5}, 0.25)};
}

}  // namespace

TEST_CASE("cdf reference values") {
  CHECK(cdf(M(2), Point{0.3, 0.7}) == 0.3);
  CHECK(cdf(make_basic(BasicKind::clayton_extreme, 2), Point{0.6, 0.6}) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(cdf(Copula(make_triangle_3d()), Point{1, 1, 0.25}) == doctest::Approx(0.25).epsilon(1e-15));
  const Copula nu1 = reflect(M(2), ReflectionSet::from_one_based(2, std::vector<int>{1}));
  CHECK(std::abs(cdf(nu1, Point{0.3, 0.5})) <= 1e-15);
}

TEST_CASE("box masses") {
  CHECK(box_mass(Pi(2), Point{0, 0}, Point{0.5, 0.5}) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(box_mass(M(2), Point{0.25, 0.5}, Point{0.75, 1}) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(std::abs(box_mass(Copula(make_reflected_upper(2, {1})), Point{0, 0}, Point{0.5, 0.4})) <= 1e-15);
  CHECK_THROWS_AS(box_mass(Pi(2), Point{0.6, 0}, Point{0.5, 1}), InputError);
}

TEST_CASE("survival values") {
  for (const auto& u : oracle::random_points(3, 50, 3)) {
    CHECK(survival_value(M(3), u) == doctest::Approx(oracle::upper_frechet(u)).epsilon(1e-12));
  }
  CHECK(survival_value(Pi(3), Point{0.5, 0.5, 0.5}) == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(survival_value(W(), Point{0.3, 0.8}) == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(cdf(Pi(2), Point{0.5}), InputError);
  CHECK_THROWS_AS(cdf(Pi(2), Point{0.5, 1.5}), InputError);
  CHECK_THROWS_AS(cdf(Pi(2), Point{0.5, std::nan("")}), InputError);
  CHECK_THROWS_AS(CheckerboardCopula::make({{0, 0.5, 1}, {0, 1}}, {0.5, 0.4}), DomainError);
  CHECK_THROWS_AS(CheckerboardCopula::make({{0, 0.5, 0.5, 1}, {0, 1}}, {0.5, 0.0, 0.5}), InputError);
  CHECK_THROWS_AS(Copula::refuted(Pi(2), {0.6, 0.5}, {0.5, 0.5}, 0.25), DomainError);
}

TEST_CASE("dimension cap") {
  const int saved = dimension_cap();
  set_dimension_cap(3);
  CHECK_THROWS_AS(Pi(4), DomainError);
  set_dimension_cap(saved);
  CHECK(Pi(4).dim() == 4);
  CHECK_THROWS_AS(set_dimension_cap(1), InputError);
}

TEST_CASE("closed forms agree with independent formulas") {
  const Copula clayton3 = make_basic(BasicKind::clayton_extreme, 3);
  const Copula clayton4 = make_basic(BasicKind::clayton_extreme, 4);
  for (const auto& u : oracle::random_points(3, 200, 5)) {
    CHECK(cdf(M(3), u) == doctest::Approx(oracle::upper_frechet(u)).epsilon(1e-14));
    CHECK(cdf(Pi(3), u) == doctest::Approx(oracle::product(u)).epsilon(1e-14));
    CHECK(cdf(clayton3, u) == doctest::Approx(oracle::clayton_extreme(u)).epsilon(1e-12));
  }
  for (const auto& u : oracle::random_points(4, 200, 6)) {
    CHECK(cdf(clayton4, u) == doctest::Approx(oracle::clayton_extreme(u)).epsilon(1e-12));
  }
}

TEST_CASE("checkerboard cdf equals cell-overlap sums") {
  for (int d : {2, 3}) {
    const auto cb = random_checkerboard(d, 5, 40 + d);
    const Copula c(cb);
    for (const auto& u : oracle::random_points(d, 300, 7)) {
      CHECK(cdf(c, u) == doctest::Approx(oracle::checkerboard_cdf(cb, u)).epsilon(1e-12));
    }
    // Vertex values are cumulative cell sums.
    for (const auto& v : oracle::uniform_grid(d, 5)) {
      CHECK(cdf(c, v) == doctest::Approx(oracle::checkerboard_cdf(cb, v)).epsilon(1e-13));
    }
  }
}

TEST_CASE("segment cdf equals parameter-interval lengths") {
  for (const auto& seg : {make_triangle_3d(), make_reflected_upper(3, {2}), make_upper_frechet_segment(3)}) {
    const Copula c(seg);
    for (const auto& u : oracle::random_points(3, 300, 8)) {
      CHECK(cdf(c, u) == doctest::Approx(oracle::segment_cdf(seg.segments(), u)).epsilon(1e-12));
    }
  }
}

TEST_CASE("surgery on M gives the off-diagonal checkerboard") {
  const Copula d = Copula::refuted(M(2), {0.5, 0.5}, {0.5, 0.5}, 0.5);
  const auto expected = CheckerboardCopula::make({{0, 0.5, 1}, {0, 0.5, 1}}, {0, 0.5, 0.5, 0});
  for (const auto& u : oracle::random_points(2, 300, 9)) {
    CHECK(cdf(d, u) == doctest::Approx(oracle::checkerboard_cdf(expected, u)).epsilon(1e-12));
  }
}

TEST_CASE("copula properties on a zoo") {
  for (const auto& c : zoo()) {
    CAPTURE(c.kind_name());
    const int d = c.dim();
    const Point zero(static_cast<std::size_t>(d), 0.0);
    const Point one(static_cast<std::size_t>(d), 1.0);
    for (const auto& u : oracle::random_points(d, 80, 10 + d)) {
      const double v = cdf(c, u);
      // Frechet-Hoeffding bounds.
      CHECK(v <= oracle::upper_frechet(u) + 1e-12);
      CHECK(v >= oracle::lower_frechet_bound(u) - 1e-12);
      CHECK(box_mass(c, zero, u) == doctest::Approx(v).epsilon(1e-12));
      Point flipped(u.size());
      for (std::size_t k = 0; k < u.size(); ++k) flipped[k] = 1.0 - u[k];
      CHECK(survival_value(c, flipped) == doctest::Approx(box_mass(c, u, one)).epsilon(1e-12));
      // Margins and grounding.
      for (std::size_t k = 0; k < u.size(); ++k) {
        Point m = one;
        m[k] = u[k];
        CHECK(cdf(c, m) == doctest::Approx(u[k]).epsilon(1e-12));
        Point g = u;
        g[k] = 0.0;
        CHECK(std::abs(cdf(c, g)) <= 1e-12);
      }
    }
    const auto report = validate(c, d == 2 ? 16 : 8);
    CHECK(report.pass);
  }
}

TEST_CASE("validation reports") {
  const auto r = validate(Copula(discretize(M(2), 4)), 4);
  CHECK(r.pass);
  CHECK(r.margin_defect == 0.0);
  CHECK(r.worst_negative_mass == 0.0);
  CHECK(r.grounding_defect == 0.0);

  const auto bad = CheckerboardCopula::make_unchecked({{0, 0.5, 1}, {0, 0.5, 1}}, {1, 0, 0, 0});
  const auto rb = validate(Copula(bad), 4);
  CHECK_FALSE(rb.pass);
  CHECK(rb.margin_defect == doctest::Approx(0.5));

  const auto rd = validate(Copula::refuted(Pi(2), {0.5, 0.5}, {0.5, 0.5}, 0.25), 32);
  CHECK(rd.pass);
  CHECK(rd.margin_defect <= 1e-9);
}

TEST_CASE("sampling") {
  for (const auto& p : sample(Copula(make_upper_frechet_segment(2)), 1, 3)) CHECK(p[0] == doctest::Approx(p[1]));

  const auto pi = sample(Pi(2), 2, 100000);
  double m0 = 0, m1 = 0;
  for (const auto& p : pi) {
    m0 += p[0];
    m1 += p[1];
  }
  CHECK(std::abs(m0 / 1e5 - 0.5) <= 0.005);
  CHECK(std::abs(m1 / 1e5 - 0.5) <= 0.005);

  for (const auto& p : sample(Copula(make_triangle_3d()), 3, 100000)) {
    CHECK(std::abs(p[0] + p[1] + p[2] - 1.5) <= 1e-12);
  }
  for (const auto& p : sample(make_basic(BasicKind::clayton_extreme, 3), 4, 10000)) {
    CHECK(std::abs(std::sqrt(p[0]) + std::sqrt(p[1]) + std::sqrt(p[2]) - 2.0) <= 1e-12);
  }
  CHECK(sample(Pi(3), 9, 10) == sample(Pi(3), 9, 10));
}

TEST_CASE("empirical box frequencies match box masses") {
  const std::size_t n = 200000;
  for (const auto& c : zoo()) {
    CAPTURE(c.kind_name());
    const int d = c.dim();
    const auto pts = sample(c, 77, n);
    const auto corners = oracle::random_points(d, 6, 100 + d);
    for (std::size_t i = 0; i + 1 < corners.size(); i += 2) {
      Point lo(corners[i].size()), hi(corners[i].size());
      for (std::size_t k = 0; k < lo.size(); ++k) {
        lo[k] = std::min(corners[i][k], corners[i + 1][k]);
        hi[k] = std::max(corners[i][k], corners[i + 1][k]);
      }
      const double q = box_mass(c, lo, hi);
      std::size_t hits = 0;
      for (const auto& p : pts) {
        bool in = true;
        for (std::size_t k = 0; k < lo.size() && in; ++k) in = p[k] >= lo[k] && p[k] <= hi[k];
        hits += in;
      }
      const double freq = static_cast<double>(hits) / static_cast<double>(n);
      const double sigma = std::sqrt(std::max(q * (1 - q), 1e-12) / static_cast<double>(n));
      CHECK(std::abs(freq - q) <= 3 * sigma + 1e-12);
    }
  }
}

TEST_CASE("moments") {
  CHECK(*moment(M(2), AffineProduct::coordinates(2)) == doctest::Approx(1.0 / 3).epsilon(1e-14));
  CHECK(*moment(W(), AffineProduct::coordinates(2)) == doctest::Approx(1.0 / 6).epsilon(1e-14));
  CHECK(*moment(Pi(3), AffineProduct::coordinates(3)) == doctest::Approx(0.125).epsilon(1e-14));
  const Copula d = Copula::refuted(M(2), {0.5, 0.5}, {0.5, 0.5}, 0.5);
  CHECK(*moment(d, AffineProduct::coordinates(2)) == doctest::Approx(3.0 / 16).epsilon(1e-14));
  CHECK_FALSE(moment(make_basic(BasicKind::clayton_extreme, 3), AffineProduct::coordinates(3)).has_value());
  const auto cb = random_checkerboard(3, 4, 5);
  // Uniform cells: E[prod U_k] = sum mass * prod of cell midpoints.
  double expected = 0.0;
  for (std::size_t cell = 0; cell < cb.cell_count(); ++cell) {
    double m = cb.masses()[cell];
    std::size_t rest = cell;
    for (std::size_t k = 3; k-- > 0;) {
      const std::size_t j = rest % cb.shape()[k];
      rest /= cb.shape()[k];
      m *= 0.5 * (cb.cuts()[k][j] + cb.cuts()[k][j + 1]);
    }
    expected += m;
  }
  CHECK(*moment(Copula(cb), AffineProduct::coordinates(3)) == doctest::Approx(expected).epsilon(1e-13));
}

#include <doctest.h>

#include "mincop/catalog.hpp"
#include "mincop/core.hpp"
#include "mincop/errors.hpp"
#include "mincop/transforms.hpp"
#include "oracles.hpp"

using namespace mincop;

TEST_CASE("basic copulas") {
  CHECK(cdf(make_basic(BasicKind::product, 3), Point{0.5, 0.5, 0.5}) == doctest::Approx(0.125).epsilon(1e-15));
  const Copula w = make_basic(BasicKind::lower_frechet_2d, 2);
  const Copula clayton2 = make_basic(BasicKind::clayton_extreme, 2);
  for (const auto& u : oracle::uniform_grid(2, 16)) {
    CHECK(std::abs(cdf(clayton2, u) - cdf(w, u)) <= 1e-15);
    CHECK(cdf(w, u) == doctest::Approx(oracle::lower_frechet_bound(u)).epsilon(1e-15));
  }
  CHECK_THROWS_AS(make_basic(BasicKind::lower_frechet_2d, 3), DomainError);
  CHECK_THROWS_AS(make_basic(BasicKind::product, 0), DomainError);
}

TEST_CASE("reflected upper bound") {
  const auto s = make_reflected_upper(2, {1});
  REQUIRE(s.segments().size() == 1);
  CHECK(s.segments()[0].start == Point{1, 0});
  CHECK(s.segments()[0].end == Point{0, 1});
  const Copula w = make_basic(BasicKind::lower_frechet_2d, 2);
  for (const auto& u : oracle::uniform_grid(2, 16)) CHECK(cdf(Copula(s), u) == doctest::Approx(cdf(w, u)));

  for (const auto& p : sample(Copula(make_reflected_upper(3, {1})), 5, 20000)) {
    CHECK(std::abs(p[0] + 0.5 * (p[1] + p[2]) - 1.0) <= 1e-12);
  }
  const Copula nu12(make_reflected_upper(3, {1, 2}));
  for (double t : {0.0, 0.1, 0.55, 1.0}) CHECK(cdf(nu12, Point{1, 1, t}) == doctest::Approx(t).epsilon(1e-15));

  CHECK_THROWS_AS(make_reflected_upper(3, {}), DomainError);
  CHECK_THROWS_AS(make_reflected_upper(3, {1, 2, 3}), DomainError);
}

TEST_CASE("segment and analytic reflections agree") {
  for (int d : {2, 3, 4}) {
    for (const auto& k : std::vector<std::vector<int>>{{1}, {2}, {1, 2}, {d}}) {
      if (static_cast<int>(k.size()) >= d) continue;
      const Copula seg(make_reflected_upper(d, k));
      const Copula raw = Copula::reflected(make_basic(BasicKind::upper_frechet, d), ReflectionSet::from_one_based(d, k));
      for (const auto& u : oracle::random_points(d, 200, 20 + d)) {
        CHECK(cdf(seg, u) == doctest::Approx(cdf(raw, u)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("triangle copula") {
  const auto t = make_triangle_3d();
  REQUIRE(t.segments().size() == 3);
  for (const auto& s : t.segments()) CHECK(s.mass == doctest::Approx(1.0 / 3));
  CHECK(validate(Copula(t), 32).pass);
}

TEST_CASE("shuffles") {
  const Copula a(shuffle_a());
  const Copula b(shuffle_b());
  CHECK(std::abs(cdf(a, Point{0.5, 0.5})) <= 1e-15);
  // The whole first segment of B lies in [0,1/2]^2.
  CHECK(cdf(b, Point{0.5, 0.5}) == doctest::Approx(0.5).epsilon(1e-15));
  for (const auto& u : oracle::uniform_grid(2, 32)) CHECK(cdf(a, u) <= cdf(b, u) + 1e-15);
  CHECK(validate(a, 32).pass);
  CHECK(validate(b, 32).pass);
  ShuffleSpec overlap{{{0.0, 0.0, 0.6, 1}, {0.5, 0.5, 0.5, -1}}};
  CHECK_THROWS_AS(make_shuffle(overlap), DomainError);
  ShuffleSpec bad_slope{{{0.0, 0.0, 1.0, 2}}};
  CHECK_THROWS_AS(make_shuffle(bad_slope), DomainError);
}

TEST_CASE("glue products") {
  const Copula w = make_basic(BasicKind::lower_frechet_2d, 2);
  const Copula m2 = make_basic(BasicKind::upper_frechet, 2);
  const Copula g3 = make_glue_product(w, make_basic(BasicKind::product, 1));
  CHECK(std::abs(cdf(g3, Point{0.5, 0.5, 0.5})) <= 1e-15);
  const Copula g4 = make_glue_product(w, m2);
  for (double t : {0.1, 0.4, 0.9}) CHECK(cdf(g4, Point{1, 1, t, t}) == doctest::Approx(t).epsilon(1e-15));
  CHECK(box_mass(g4, Point{0.5, 0, 0, 0}, Point{1, 0.5, 1, 1}) == doctest::Approx(0.5).epsilon(1e-15));
  // Box masses factorise over the split.
  const auto pts = oracle::random_points(4, 40, 31);
  for (std::size_t i = 0; i + 1 < pts.size(); i += 2) {
    Point lo(4), hi(4);
    for (std::size_t k = 0; k < 4; ++k) {
      lo[k] = std::min(pts[i][k], pts[i + 1][k]);
      hi[k] = std::max(pts[i][k], pts[i + 1][k]);
    }
    const double left = box_mass(w, Point{lo[0], lo[1]}, Point{hi[0], hi[1]});
    const double right = box_mass(m2, Point{lo[2], lo[3]}, Point{hi[2], hi[3]});
    CHECK(box_mass(g4, lo, hi) == doctest::Approx(left * right).epsilon(1e-13));
  }
  CHECK_THROWS_AS(make_glue_product(make_basic(BasicKind::product, 1), make_basic(BasicKind::product, 1)),
                  DomainError);
}

TEST_CASE("mixtures") {
  const Copula mix =
      make_mixture({{make_basic(BasicKind::upper_frechet, 2), 0.5}, {make_basic(BasicKind::lower_frechet_2d, 2), 0.5}});
  CHECK(cdf(mix, Point{0.5, 0.5}) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK_THROWS_AS(make_mixture({{make_basic(BasicKind::product, 2), 0.7}}), DomainError);
  CHECK_THROWS_AS(make_mixture({{make_basic(BasicKind::product, 2), 1.2}, {make_basic(BasicKind::product, 2), -0.2}}),
                  DomainError);

  const Copula all = mixture_all_reflections(3);
  // Oracle: average of the six nu_K(M) cdfs.
  for (const auto& u : oracle::random_points(3, 100, 32)) {
    double sum = 0.0;
    for (const auto& k : std::vector<std::vector<int>>{{1}, {2}, {3}, {1, 2}, {1, 3}, {2, 3}}) {
      sum += oracle::segment_cdf(make_reflected_upper(3, k).segments(), u);
    }
    CHECK(cdf(all, u) == doctest::Approx(sum / 6).epsilon(1e-12));
  }
}

TEST_CASE("every catalog copula validates at resolution 32") {
  std::vector<Copula> cs = {make_basic(BasicKind::upper_frechet, 2), make_basic(BasicKind::upper_frechet, 3),
                            make_basic(BasicKind::lower_frechet_2d, 2), make_basic(BasicKind::product, 3),
                            make_basic(BasicKind::clayton_extreme, 3), Copula(make_triangle_3d()),
                            Copula(shuffle_a()), Copula(shuffle_b()), Copula(make_reflected_upper(3, {2})),
                            mixture_all_reflections(3),
                            make_glue_product(make_basic(BasicKind::lower_frechet_2d, 2),
                                              make_basic(BasicKind::upper_frechet, 2))};
  for (const auto& c : cs) {
    CAPTURE(c.kind_name());
    const auto r = validate(c, c.dim() <= 3 ? 32 : 16);
    CHECK(r.pass);
    CHECK(r.margin_defect <= 1e-9);
  }
}

TEST_CASE("random checkerboards") {
  const auto a = random_checkerboard(3, 8, 7);
  const auto b = random_checkerboard(3, 8, 7);
  CHECK(a.masses() == b.masses());
  CHECK(a.masses() != random_checkerboard(3, 8, 8).masses());
  CHECK(validate(Copula(a), 8).pass);
}

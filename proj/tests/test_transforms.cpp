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

ReflectionSet K(int d, std::vector<int> k) { return ReflectionSet::from_one_based(d, k); }

// Brute-force reflection: inclusion-exclusion of C over the box
// prod_{k in K} [1 - u_k, 1] x prod_{k not in K} [0, u_k].
double reflected_oracle(const Copula& c, const std::vector<int>& k, const Point& u) {
  Point lo(u.size(), 0.0), hi = u;
  for (int i : k) {
    lo[static_cast<std::size_t>(i - 1)] = 1.0 - u[static_cast<std::size_t>(i - 1)];
    hi[static_cast<std::size_t>(i - 1)] = 1.0;
  }
  return oracle::box_from_cdf([&](const Point& x) { return cdf(c, x); }, lo, hi);
}

std::vector<Copula> samples_of_each_representation(int d) {
  std::vector<Copula> cs = {Copula(random_checkerboard(d, 4, 50 + d)), Pi(d), M(d),
                            make_basic(BasicKind::clayton_extreme, d), Copula(make_reflected_upper(d, {1}))};
  if (d == 3) cs.push_back(Copula(make_triangle_3d()));
  if (d == 2) cs.push_back(Copula(shuffle_a()));
  return cs;
}

}  // namespace

TEST_CASE("reflection reference values") {
  const Copula nu = reflect(M(2), K(2, {1}));
  for (const auto& u : oracle::uniform_grid(2, 32)) CHECK(cdf(nu, u) == doctest::Approx(cdf(W(), u)).epsilon(1e-15));
  for (const auto& k : std::vector<std::vector<int>>{{1}, {2}, {1, 3}, {1, 2, 3}}) {
    const Copula r = reflect(Pi(3), K(3, k));
    for (const auto& u : oracle::random_points(3, 50, 2)) CHECK(cdf(r, u) == doctest::Approx(oracle::product(u)));
  }
}

TEST_CASE("reflections match the inclusion-exclusion oracle") {
  for (int d : {2, 3}) {
    for (const auto& c : samples_of_each_representation(d)) {
      CAPTURE(c.kind_name());
      for (const auto& k : std::vector<std::vector<int>>{{1}, {d}, {1, 2}}) {
        const Copula r = reflect(c, K(d, k));
        for (const auto& u : oracle::random_points(d, 60, 3)) {
          CHECK(cdf(r, u) == doctest::Approx(reflected_oracle(c, k, u)).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("involution and group relations") {
  for (int d : {2, 3}) {
    for (const auto& c : samples_of_each_representation(d)) {
      CAPTURE(c.kind_name());
      const auto pts = oracle::random_points(d, 60, 4);
      const Copula twice = reflect(reflect(c, K(d, {1})), K(d, {1}));
      const Copula surv2 = survival(survival(c));
      const Copula split = reflect(reflect(c, K(d, {1})), K(d, {2}));
      const Copula joint = reflect(c, K(d, {1, 2}));
      for (const auto& u : pts) {
        const double v = cdf(c, u);
        CHECK(cdf(twice, u) == doctest::Approx(v).epsilon(1e-12));
        CHECK(cdf(surv2, u) == doctest::Approx(v).epsilon(1e-12));
        CHECK(cdf(split, u) == doctest::Approx(cdf(joint, u)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("survival copulas") {
  for (const auto& u : oracle::random_points(3, 50, 5)) CHECK(cdf(survival(M(3)), u) == doctest::Approx(cdf(M(3), u)));
  for (const auto& u : oracle::uniform_grid(2, 16)) {
    CHECK(cdf(survival(W()), u) == doctest::Approx(cdf(W(), u)).epsilon(1e-14));
    CHECK(cdf(survival(Copula(shuffle_a())), u) == doctest::Approx(cdf(Copula(shuffle_a()), u)).epsilon(1e-14));
  }
  const Copula c(random_checkerboard(3, 4, 6));
  for (const auto& u : oracle::random_points(3, 50, 7)) {
    CHECK(cdf(survival(c), u) == doctest::Approx(survival_value(c, u)).epsilon(1e-12));
  }
}

TEST_CASE("permutations") {
  for (const auto& u : oracle::random_points(3, 50, 8)) {
    CHECK(cdf(permute(M(3), Permutation::from_one_based(std::vector<int>{3, 1, 2})), u) ==
          doctest::Approx(oracle::upper_frechet(u)));
  }
  // Result axis i carries inner axis sigma(i).
  const Copula g = make_glue_product(W(), M(2));
  const Copula p = permute(g, Permutation::swap(4, 0, 2));
  const Point u{0.2, 0.9, 0.4, 0.9};
  CHECK(cdf(p, u) == doctest::Approx(cdf(g, Point{0.4, 0.9, 0.2, 0.9})).epsilon(1e-15));

  const auto cb = random_checkerboard(3, 4, 9);
  const auto sigma = Permutation::from_one_based(std::vector<int>{2, 3, 1});
  const CheckerboardCopula moved = permute(cb, sigma);
  const Copula node = Copula::permuted(Copula(cb), sigma);
  for (const auto& v : oracle::random_points(3, 60, 10)) {
    CHECK(cdf(Copula(moved), v) == doctest::Approx(cdf(node, v)).epsilon(1e-12));
    Point w(3);
    for (int i = 0; i < 3; ++i) w[static_cast<std::size_t>(sigma.zero_based()[static_cast<std::size_t>(i)])] = v[static_cast<std::size_t>(i)];
    CHECK(cdf(Copula(moved), v) == doctest::Approx(oracle::checkerboard_cdf(cb, w)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(Permutation::from_one_based(std::vector<int>{1, 1, 2}), InputError);
}

TEST_CASE("discretization") {
  const auto m2 = discretize(M(2), 2);
  CHECK(m2.masses() == std::vector<double>{0.5, 0.0, 0.0, 0.5});
  const auto pi4 = discretize(Pi(2), 4);
  for (double m : pi4.masses()) CHECK(m == doctest::Approx(1.0 / 16).epsilon(1e-15));
  const auto tri = discretize(Copula(make_triangle_3d()), 8);
  double total = 0.0;
  for (double m : tri.masses()) total += m;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(validate(Copula(tri), 8).margin_defect <= 1e-12);

  // Vertex values are preserved exactly for every representation.
  for (int d : {2, 3}) {
    for (const auto& c : samples_of_each_representation(d)) {
      CAPTURE(c.kind_name());
      const auto cb = discretize(c, 6);
      for (const auto& v : oracle::uniform_grid(d, 6)) CHECK(cdf(Copula(cb), v) == doctest::Approx(cdf(c, v)).epsilon(1e-12));
    }
  }

  // Non-uniform cuts and commutation with reflection on mirrored cuts.
  const Axes cuts = {{0.0, 0.2, 0.5, 0.8, 1.0}, {0.0, 0.3, 0.7, 1.0}};
  const Copula c(random_checkerboard(2, 3, 11));
  const auto lhs = discretize(reflect(c, K(2, {1})), cuts);
  const auto rhs = reflect(discretize(c, cuts), K(2, {1}));
  REQUIRE(lhs.masses().size() == rhs.masses().size());
  for (std::size_t i = 0; i < lhs.masses().size(); ++i) CHECK(lhs.masses()[i] == doctest::Approx(rhs.masses()[i]).epsilon(1e-12));

  CHECK_THROWS_AS(discretize(Pi(2), Axes{{0.0, 0.6, 0.5, 1.0}, {0.0, 1.0}}), InputError);
  CHECK_THROWS_AS(discretize(Pi(2), Axes{{0.1, 1.0}, {0.0, 1.0}}), InputError);
}

TEST_CASE("representation conversions") {
  CHECK(as_segments(M(3)).has_value());
  CHECK(as_segments(W()).has_value());
  CHECK_FALSE(as_segments(Pi(2)).has_value());
  CHECK(as_checkerboard(Pi(3)).has_value());
  const auto glued = as_checkerboard(make_glue_product(Copula(random_checkerboard(2, 3, 1)), Pi(1)));
  REQUIRE(glued.has_value());
  CHECK(validate(Copula(*glued), 6).pass);
  CHECK_FALSE(as_checkerboard(make_basic(BasicKind::clayton_extreme, 3)).has_value());
}

#include <doctest.h>

#include "mincop/catalog.hpp"
#include "mincop/concordance.hpp"
#include "mincop/errors.hpp"
#include "mincop/order.hpp"
#include "mincop/transforms.hpp"
#include "oracles.hpp"

using namespace mincop;

namespace {

Copula M(int d) { return make_basic(BasicKind::upper_frechet, d); }
Copula W() { return make_basic(BasicKind::lower_frechet_2d, 2); }
Copula Pi(int d) { return make_basic(BasicKind::product, d); }

std::vector<Copula> zoo2() {
  return {M(2), W(), Pi(2), Copula(shuffle_a()), Copula(shuffle_b()), Copula(random_checkerboard(2, 5, 3)),
          make_mixture({{M(2), 0.3}, {W(), 0.7}})};
}

}  // namespace

TEST_CASE("Frechet bounds bracket every catalog copula") {
  for (const auto& c : zoo2()) {
    CAPTURE(c.kind_name());
    CHECK(pointwise_leq(W(), c).leq());
    CHECK(pointwise_leq(c, M(2)).leq());
  }
  for (const auto& c : {Pi(3), Copula(make_triangle_3d()), make_basic(BasicKind::clayton_extreme, 3)}) {
    CHECK(pointwise_leq(c, M(3)).leq());
  }
}

TEST_CASE("shuffles are strictly ordered") {
  const auto r = pointwise_leq(Copula(shuffle_a()), Copula(shuffle_b()));
  CHECK(r.relation == Relation::strictly_below);
  REQUIRE_FALSE(r.witnesses.empty());
  CHECK(r.witnesses.front().point == Point{0.5, 0.5});
  CHECK(r.witnesses.front().gap == doctest::Approx(-0.5));
  CHECK(pointwise_leq(Copula(shuffle_b()), Copula(shuffle_a())).relation == Relation::strictly_above);
}

TEST_CASE("glue products are strictly ordered in concordance") {
  const auto r = concordance_leq(make_glue_product(W(), Pi(2)), make_glue_product(W(), M(2)));
  CHECK(r.relation == Relation::strictly_below);
  CHECK(r.max_violation <= 1e-9);
}

TEST_CASE("reflexivity and antisymmetry") {
  for (const auto& c : zoo2()) {
    CAPTURE(c.kind_name());
    const auto r = concordance_leq(c, c);
    CHECK(r.relation == Relation::equal);
    CHECK(r.witnesses.empty());
  }
  const auto x = concordance_leq(Pi(2), M(2));
  const auto y = concordance_leq(M(2), Pi(2));
  CHECK(x.relation == Relation::strictly_below);
  CHECK(y.relation == Relation::strictly_above);
}

TEST_CASE("incomparable pairs report both witnesses") {
  const auto r = pointwise_leq(Copula(random_checkerboard(2, 4, 1)), Copula(random_checkerboard(2, 4, 2)));
  if (r.relation == Relation::incomparable) {
    CHECK(r.witnesses.size() == 2);
    CHECK(r.max_violation > 0);
    CHECK(r.max_reverse > 0);
  }
  const auto t = concordance_leq(Copula(shuffle_a()), Copula(shuffle_b()));
  // A <= B pointwise but the survival functions order the other way round.
  CHECK(t.relation == Relation::strictly_below);
}

TEST_CASE("checkerboard comparisons are exact") {
  const Copula a(random_checkerboard(3, 4, 5));
  const Copula b(discretize(M(3), 4));
  const auto r = pointwise_leq(a, b);
  CHECK(r.exact);
  CHECK(r.leq());
  CHECK_FALSE(pointwise_leq(a, M(3)).exact);
}

TEST_CASE("concordance order implies Kendall and Spearman order") {
  const auto pts = zoo2();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = 0; j < pts.size(); ++j) {
      const auto r = concordance_leq(pts[i], pts[j]);
      if (!r.leq()) continue;
      CAPTURE(pts[i].kind_name());
      CAPTURE(pts[j].kind_name());
      CHECK(kendall_tau(pts[i]).estimate.value <= kendall_tau(pts[j]).estimate.value + 1e-6);
      CHECK(spearman_rho(pts[i]).estimate.value <= spearman_rho(pts[j]).estimate.value + 1e-6);
    }
  }
}

TEST_CASE("nu_1(M) against Pi in three dimensions") {
  // Frozen from a grid run: neither function dominates the other, since
  // nu_1(M)(1,t,t) = t exceeds t^2 while nu_1(M) vanishes near the origin.
  const auto r = concordance_leq(reflect(M(3), ReflectionSet::from_one_based(3, std::vector<int>{1})), Pi(3));
  CHECK(r.relation == Relation::incomparable);
  CHECK(r.max_violation > 0.1);
  CHECK(r.max_reverse > 0.1);
}

TEST_CASE("order errors") {
  CHECK_THROWS_AS(pointwise_leq(Pi(2), Pi(3)), InputError);
  CHECK_THROWS_AS(concordance_leq(M(2), M(3)), InputError);
}

#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "mincop/catalog.hpp"
#include "mincop/errors.hpp"
#include "mincop/io.hpp"
#include "mincop/negdep.hpp"
#include "mincop/transforms.hpp"
#include "oracles.hpp"

using namespace mincop;

namespace {

Copula M(int d) { return make_basic(BasicKind::upper_frechet, d); }
Copula W() { return make_basic(BasicKind::lower_frechet_2d, 2); }
Copula Pi(int d) { return make_basic(BasicKind::product, d); }

std::string error_of(const std::string& text) {
  try {
    io::copula_from_json(io::parse_text(text));
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("round trips preserve the cdf") {
  const std::vector<Copula> cs = {
      M(3),
      W(),
      Pi(4),
      make_basic(BasicKind::clayton_extreme, 3),
      Copula(make_triangle_3d()),
      Copula(shuffle_a()),
      Copula(random_checkerboard(3, 4, 2)),
      reflect(Copula(random_checkerboard(2, 3, 1)), ReflectionSet::from_one_based(2, std::vector<int>{1})),
      permute(make_basic(BasicKind::clayton_extreme, 3), Permutation::from_one_based(std::vector<int>{2, 3, 1})),
      make_glue_product(W(), M(2)),
      make_mixture({{M(2), 0.25}, {W(), 0.75}}),
      mixture_all_reflections(3),
      std::get<RefutationCertificate>(refute_minimality(Pi(2))).d,
  };
  for (const auto& c : cs) {
    CAPTURE(c.kind_name());
    const io::Json j = io::to_json(c);
    CHECK(j["schema_version"] == io::kSchemaVersion);
    const Copula back = io::copula_from_json(io::parse_text(j.dump()));
    REQUIRE(back.dim() == c.dim());
    for (const auto& u : oracle::random_points(c.dim(), 50, 5)) CHECK(cdf(back, u) == doctest::Approx(cdf(c, u)).epsilon(1e-12));
  }
}

TEST_CASE("documents accepted by the reader") {
  const Copula cb = io::copula_from_json(io::parse_text(
      R"({"kind":"checkerboard","dim":2,"cuts":[[0,0.5,1],[0,0.5,1]],"masses":[0,0.5,0.5,0]})"));
  CHECK(cdf(cb, Point{0.5, 0.5}) == 0.0);
  const Copula cat = io::copula_from_json(io::parse_text(R"({"kind":"catalog","name":"shuffle_b","dim":2})"));
  CHECK(cdf(cat, Point{0.5, 0.5}) == doctest::Approx(0.5));
  const Copula nu = io::copula_from_json(io::parse_text(
      R"({"kind":"reflected","dim":3,"K":[1],"inner":{"kind":"upper_frechet","dim":3}})"));
  CHECK(cdf(nu, Point{1, 0.5, 0.5}) == doctest::Approx(0.5));
}

TEST_CASE("errors carry a location") {
  const std::string syntax = error_of("{\"kind\": \"product\",\n \"dim\": 2,,}");
  CHECK(syntax.find("<input>:2:") != std::string::npos);

  CHECK(error_of(R"({"dim":2})").find("$") != std::string::npos);
  CHECK(error_of(R"({"kind":"product","dim":1})").find("dim") != std::string::npos);
  CHECK(error_of(R"({"kind":"wobbly","dim":2})").find("$.kind") != std::string::npos);
  const std::string mix = error_of(
      R"({"kind":"mixture","dim":2,"parts":[{"weight":0.5,"copula":{"kind":"product","dim":2}},{"weight":0.5}]})");
  CHECK(mix.find("$.parts[1]") != std::string::npos);
  CHECK(mix.find("copula") != std::string::npos);
  CHECK_FALSE(error_of(R"({"kind":"checkerboard","dim":2,"cuts":[[0,1],[0,1]],"masses":[0.7]})").empty());
  CHECK_FALSE(error_of(R"({"kind":"product","dim":2,"schema_version":7})").empty());
  CHECK_FALSE(error_of(R"({"kind":"reflected","dim":2,"K":[3],"inner":{"kind":"product","dim":2}})").empty());
  CHECK_FALSE(error_of(R"({"kind":"permuted","dim":2,"sigma":[1,1],"inner":{"kind":"product","dim":2}})").empty());
  CHECK_THROWS_AS(io::read_copula_file("/nonexistent/copula.json"), InputError);
}

TEST_CASE("file errors name the file") {
  const std::string path = "test_io_bad.json";
  {
    std::ofstream out(path);
    out << "{\"kind\": \"product\", \"dim\": 2";
  }
  try {
    io::read_copula_file(path);
    FAIL("expected an error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find(path) != std::string::npos);
  }
  std::remove(path.c_str());
}

TEST_CASE("hyperplane documents") {
  const auto spec = io::hyperplane_from_json(io::parse_text(
      R"({"K":[1,2,3],"g":[{"form":"affine","alpha":1},{"form":"affine","alpha":0.5},{"form":"power","gamma":1}],"c":1})"));
  CHECK(spec.k == std::vector<int>{1, 2, 3});
  CHECK(spec.g[2].form == MonotoneMap::Form::power);
  CHECK(spec.c == 1.0);
  const auto ident = io::hyperplane_from_json(io::parse_text(R"({"K":[1,2],"c":1})"));
  CHECK(ident.g.size() == 2);
  CHECK_THROWS_AS(io::hyperplane_from_json(io::parse_text(R"({"K":[1,2],"g":[{"form":"affine","alpha":1}],"c":1})")),
                  InputError);
  CHECK_THROWS_AS(io::hyperplane_from_json(io::parse_text(R"({"K":[1,2],"g":[{"form":"log"},{"form":"log"}],"c":1})")),
                  InputError);
}

TEST_CASE("reports and CSV") {
  const auto r = io::to_json(tau_cm_defect(Pi(2)));
  CHECK(r["defect"] == doctest::Approx(0.25));
  const auto trace = io::descend_trace_csv(descend(Pi(2), {.n = 4, .max_iter = 2}));
  CHECK(trace.rfind("# schema_version=1 status=", 0) == 0);
  const auto pts = io::points_csv({{0.25, 0.5}, {0.75, 1.0}}, 2);
  CHECK(pts.rfind("# schema_version=1\n", 0) == 0);
  CHECK(pts.find("0.25") != std::string::npos);
}

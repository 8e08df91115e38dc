#include "mincop/reproduce.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "mincop/catalog.hpp"
#include "mincop/concordance.hpp"
#include "mincop/io.hpp"
#include "mincop/negdep.hpp"
#include "mincop/order.hpp"
#include "mincop/transforms.hpp"

namespace mincop {

namespace {

double kendall_min(int d) { return -1.0 / (std::pow(2.0, d - 1) - 1.0); }

double rho_nu1(int d) {
  const double p = std::pow(2.0, d);
  return (p - d * (d + 1.0)) / (d * (p - (d + 1.0)));
}

double rho_nu12(int d) {
  const double p = std::pow(2.0, d);
  return (2.0 * p - (d - 1.0) * d * (d + 1.0)) / ((d - 1.0) * d * (p - (d + 1.0)));
}

class Table {
 public:
  void value(std::string q, int d, double published, const MeasureEstimate& e, double tol) {
    add(std::move(q), d, published, e.value, e.route, tol);
  }
  void add(std::string q, int d, double published, double computed, std::string method, double tol) {
    const double err = std::abs(computed - published);
    rows_.push_back({std::move(q), d, published, computed, err, std::move(method), tol, err <= tol});
  }
  void check(std::string q, int d, bool ok, std::string method) {
    rows_.push_back({std::move(q), d, 1.0, ok ? 1.0 : 0.0, ok ? 0.0 : 1.0, std::move(method), 0.0, ok});
  }
  std::vector<PaperRow> take() { return std::move(rows_); }

 private:
  std::vector<PaperRow> rows_;
};

Copula upper(int d) { return make_basic(BasicKind::upper_frechet, d); }
Copula product(int d) { return make_basic(BasicKind::product, d); }
Copula lower() { return make_basic(BasicKind::lower_frechet_2d, 2); }
Copula nu(int d, std::vector<int> k) { return reflect(upper(d), ReflectionSet::from_one_based(d, k)); }

void functional_values(Table& t) {
  for (int d : {2, 3, 4}) {
    t.value("kendall_tau(M)", d, 1.0, kendall_tau(upper(d)).estimate, 1e-6);
    t.value("spearman_rho(M)", d, 1.0, spearman_rho(upper(d)).estimate, 1e-6);
  }
  t.value("kendall_tau(W)", 2, -1.0, kendall_tau(lower()).estimate, 1e-9);
  t.value("spearman_rho(W)", 2, -1.0, spearman_rho(lower()).estimate, 1e-9);
  for (int d : {2, 3, 4, 5}) t.value("kendall_tau(nu_1(M))", d, kendall_min(d), kendall_tau(nu(d, {1})).estimate, 1e-6);
  for (auto [d, n] : {std::pair{3, 64}, std::pair{4, 24}}) {
    const Copula c = make_basic(BasicKind::clayton_extreme, d);
    t.value("kendall_tau(discretize(clayton_extreme, " + std::to_string(n) + "))", d, kendall_min(d),
            kendall_tau(Copula(discretize(c, n))).estimate, 5e-2);
    t.add("tau_cm_defect(clayton_extreme)", d, 0.0, tau_cm_defect(c).defect, "grid scan", 1e-9);
  }
  const Copula triangle(make_triangle_3d());
  t.value("spearman_rho(triangle)", 3, -0.5, spearman_rho(triangle).estimate, 2e-3);
  t.value("kendall_tau(triangle)", 3, -1.0 / 3.0, kendall_tau(triangle).estimate, 1e-3);
  for (int d : {3, 4, 5}) {
    const auto r1 = spearman_rho(nu(d, {1})).estimate;
    const auto r12 = spearman_rho(nu(d, {1, 2})).estimate;
    t.value("spearman_rho(nu_1(M))", d, rho_nu1(d), r1, 1e-3);
    t.value("spearman_rho(nu_12(M))", d, rho_nu12(d), r12, 1e-3);
    // nu_12(M) is a coordinate permutation of nu_1(M) when d = 3.
    if (d >= 4) t.check("spearman_rho(nu_12(M)) < spearman_rho(nu_1(M))", d, r12.value < r1.value, r12.route);
  }
}

void shuffle_values(Table& t) {
  const Copula a(shuffle_a());
  const Copula b(shuffle_b());
  const double ka = kendall_tau(a).estimate.value;
  const double kb = kendall_tau(b).estimate.value;
  t.add("kendall_tau(shuffle_A) - kendall_tau(shuffle_B)", 2, 0.0, ka - kb, "segment quadrature", 1e-9);
  t.check("pointwise_leq(shuffle_A, shuffle_B) = strictly_below", 2,
          pointwise_leq(a, b).relation == Relation::strictly_below, "grid scan");
  const Copula ga = make_glue_product(a, product(1));
  const Copula gb = make_glue_product(b, product(1));
  t.add("kendall_tau(glue(shuffle_A, Pi_1)) - kendall_tau(glue(shuffle_B, Pi_1))", 3, 0.0,
        kendall_tau(ga).estimate.value - kendall_tau(gb).estimate.value, "glue product", 1e-9);
  const Copula wp = make_glue_product(lower(), product(2));
  const Copula wm = make_glue_product(lower(), upper(2));
  t.check("concordance_leq(glue(W, Pi_2), glue(W, M_2)) = strictly_below", 4,
          concordance_leq(wp, wm).relation == Relation::strictly_below, "grid scan");
  t.add("tau_cm_defect(glue(W, M_2))", 4, 0.0, tau_cm_defect(wm).defect, "grid scan", 1e-9);
}

void refuter_values(Table& t) {
  std::vector<std::pair<std::string, Copula>> nonminimal = {
      {"Pi", product(2)},
      {"Pi", product(3)},
      {"M", upper(2)},
      {"M", upper(3)},
      {"mixture(M, Pi)", make_mixture({{upper(2), 0.5}, {product(2), 0.5}})},
  };
  for (int d : {2, 3}) {
    for (std::uint64_t s = 1; s <= 5; ++s) {
      nonminimal.emplace_back("random_checkerboard(8, seed " + std::to_string(s) + ")",
                              Copula(random_checkerboard(d, 8, s)));
    }
  }
  for (const auto& [name, c] : nonminimal) {
    bool ok = false;
    try {
      const auto r = refute_minimality(c);
      const auto* cert = std::get_if<RefutationCertificate>(&r);
      ok = cert && cert->validation.pass && cert->order_check.relation == Relation::strictly_below &&
           cert->rho_drop > 0.0;
    } catch (const std::exception&) {
      ok = false;
    }
    t.check("refute_minimality(" + name + ") certificate sound", c.dim(), ok, "surgery + grid verification");
  }
  std::vector<std::pair<std::string, Copula>> minimal = {
      {"W", lower()},
      {"clayton_extreme", make_basic(BasicKind::clayton_extreme, 3)},
      {"triangle", Copula(make_triangle_3d())},
      {"glue(W, Pi_1)", make_glue_product(lower(), product(1))},
  };
  for (const auto& k : std::vector<std::vector<int>>{{1}, {2}, {3}, {1, 2}, {1, 3}, {2, 3}}) {
    std::string name = "nu_";
    for (int i : k) name += std::to_string(i);
    minimal.emplace_back(name + "(M)", nu(3, k));
  }
  for (const auto& [name, c] : minimal) {
    const auto r = refute_minimality(c);
    t.check("refute_minimality(" + name + ") returns a tau-CM certificate", c.dim(),
            std::holds_alternative<TauCmCertificate>(r), "grid scan");
  }

  const auto r = refute_minimality(upper(2));
  const auto& cert = std::get<RefutationCertificate>(r);
  const auto d16 = discretize(cert.d, 16);
  const auto a16 = discretize(Copula(shuffle_a()), 16);
  double diff = 0.0;
  for (std::size_t i = 0; i < d16.cell_count(); ++i) diff = std::max(diff, std::abs(d16.masses()[i] - a16.masses()[i]));
  t.add("max cell gap discretize(refute(M).D, 16) vs discretize(shuffle_A, 16)", 2, 0.0, diff, "exact cell masses",
        1e-9);
  // The surgery on M spreads the two corner masses uniformly over the
  // off-diagonal squares.
  const auto expected = CheckerboardCopula::make({{0.0, 0.5, 1.0}, {0.0, 0.5, 1.0}}, {0.0, 0.5, 0.5, 0.0});
  const auto e16 = discretize(Copula(expected), 16);
  double gap = 0.0;
  for (std::size_t i = 0; i < d16.cell_count(); ++i) gap = std::max(gap, std::abs(d16.masses()[i] - e16.masses()[i]));
  t.add("max cell gap discretize(refute(M).D, 16) vs uniform off-diagonal squares", 2, 0.0, gap, "exact cell masses", 1e-9);
}

void hierarchy_values(Table& t) {
  struct Entry {
    std::string name;
    Copula c;
    HyperplaneSpec spec;
  };
  auto identity = [](std::vector<int> k, double c) {
    return HyperplaneSpec{k, std::vector<MonotoneMap>(k.size(), MonotoneMap::affine(1.0)), c};
  };
  auto nu_spec = [](int d, const std::vector<int>& k) {
    HyperplaneSpec s;
    s.c = 1.0;
    const double in = static_cast<double>(k.size());
    for (int i = 1; i <= d; ++i) {
      const bool flipped = std::find(k.begin(), k.end(), i) != k.end();
      s.k.push_back(i);
      s.g.push_back(MonotoneMap::affine(1.0 / (flipped ? in : d - in)));
    }
    return s;
  };
  std::vector<Entry> entries;
  for (const auto& k : std::vector<std::vector<int>>{{1}, {2}, {3}, {1, 2}, {1, 3}, {2, 3}}) {
    std::string name = "nu_";
    for (int i : k) name += std::to_string(i);
    entries.push_back({name + "(M)", nu(3, k), nu_spec(3, k)});
  }
  entries.push_back({"nu_1(M)", nu(4, {1}), nu_spec(4, {1})});
  entries.push_back({"nu_12(M)", nu(4, {1, 2}), nu_spec(4, {1, 2})});
  entries.push_back({"triangle", Copula(make_triangle_3d()), identity({1, 2, 3}, 1.5)});
  entries.push_back({"W", lower(), identity({1, 2}, 1.0)});
  entries.push_back({"glue(W, Pi_1)", make_glue_product(lower(), product(1)), identity({1, 2}, 1.0)});
  entries.push_back({"glue(W, W)", make_glue_product(lower(), lower()), identity({1, 2, 3, 4}, 2.0)});
  entries.push_back({"glue(clayton_extreme(2), clayton_extreme(2))",
                     make_glue_product(make_basic(BasicKind::clayton_extreme, 2),
                                       make_basic(BasicKind::clayton_extreme, 2)),
                     identity({1, 2, 3, 4}, 2.0)});
  for (const auto& e : entries) {
    const int d = e.c.dim();
    const auto mass = hyperplane_mass(e.c, e.spec, 0.0);
    t.check("hyperplane_mass(" + e.name + ") = 1", d, mass.method == "exact" && mass.certified(), mass.method);
    t.add("tau_cm_defect(" + e.name + ")", d, 0.0, tau_cm_defect(e.c).defect, "grid scan", 1e-9);
    const auto k = kendall_tau(e.c).estimate;
    t.add("kendall_tau(" + e.name + ")", d, kendall_min(d), k.value, k.route, std::max(1e-9, k.error_bound));
  }
  // Extreme Clayton has no segment form; its hyperplane is checked on samples.
  const Copula clayton = make_basic(BasicKind::clayton_extreme, 3);
  HyperplaneSpec root{{1, 2, 3}, std::vector<MonotoneMap>(3, MonotoneMap::power(0.5)), 2.0};
  const auto mass = hyperplane_mass(clayton, root, 0.0);
  t.check("hyperplane_mass(clayton_extreme) = 1 on samples", 3, mass.certified(), mass.method);
}

void axiom_values(Table& t) {
  for (int d : {2, 3}) {
    double sum_tau = 0.0;
    double sum_rho = 0.0;
    double invariance = 0.0;
    for (std::uint64_t s = 1; s <= 10; ++s) {
      const Copula c(random_checkerboard(d, 4, 1000 + s));
      sum_tau = std::max(sum_tau, std::abs(reflection_sum(Functional::kendall_tau, c)));
      sum_rho = std::max(sum_rho, std::abs(reflection_sum(Functional::spearman_rho, c)));
      const Copula moved = permute(c, Permutation::swap(d, 0, d - 1));
      const Copula tau = survival(c);
      for (auto f : {kendall_tau, spearman_rho}) {
        const double v = f(c, {}).estimate.value;
        invariance = std::max({invariance, std::abs(f(moved, {}).estimate.value - v),
                               std::abs(f(tau, {}).estimate.value - v)});
      }
    }
    t.add("max |reflection_sum(kendall_tau)| over 10 random checkerboards", d, 0.0, sum_tau, "exact checkerboard",
          1e-9);
    t.add("max |reflection_sum(spearman_rho)| over 10 random checkerboards", d, 0.0, sum_rho, "exact checkerboard",
          1e-9);
    t.add("max permutation/survival change over 10 random checkerboards", d, 0.0, invariance, "exact checkerboard",
          1e-9);
  }
}

void descend_values(Table& t) {
  const auto r = descend(product(2));
  const Copula final_copula(r.final_copula);
  // Inside a charged cell both corner masses are positive, so a checkerboard
  // is checked on its own cut vertices.
  GridSpec vertices;
  vertices.breakpoints_only = true;
  t.add("tau_cm_defect(descend(Pi, n=16)) on the cut vertices", 2, 0.0, tau_cm_defect(final_copula, vertices).defect,
        "descend " + to_string(r.status), 1e-9);
  // -1 is the value at W; the grid keeps the descent within 0.15 of it.
  t.add("kendall_tau(descend(Pi, n=16))", 2, -1.0, kendall_tau(final_copula).estimate.value,
        "descend " + to_string(r.status), 0.15);
}

}  // namespace

std::vector<PaperRow> paper_values() {
  Table t;
  functional_values(t);
  shuffle_values(t);
  refuter_values(t);
  hierarchy_values(t);
  axiom_values(t);
  descend_values(t);
  return t.take();
}

std::string paper_values_csv(const std::vector<PaperRow>& rows) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "# schema_version=" << io::kSchemaVersion << '\n';
  out << "quantity,d,paper_value,computed,error,method,tolerance,pass\n";
  auto quoted = [](const std::string& s) {
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
  };
  for (const auto& r : rows) {
    out << quoted(r.quantity) << ',' << r.dim << ',' << r.paper_value << ',' << r.computed << ',' << r.error << ','
        << quoted(r.method) << ',' << r.tolerance << ',' << (r.pass ? "true" : "false") << '\n';
  }
  return out.str();
}

}  // namespace mincop

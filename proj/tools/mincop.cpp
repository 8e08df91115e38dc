// mincop: command-line front end to the copula library.
//
// Exit status: 0 success, 1 a check failed or no route exists, 2 usage or
// malformed input.

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "mincop/catalog.hpp"
#include "mincop/concordance.hpp"
#include "mincop/core.hpp"
#include "mincop/errors.hpp"
#include "mincop/grid.hpp"
#include "mincop/io.hpp"
#include "mincop/negdep.hpp"
#include "mincop/order.hpp"
#include "mincop/reproduce.hpp"
#include "mincop/transforms.hpp"

namespace {

using mincop::Copula;
using mincop::io::Json;

struct Common {
  int grid = 0;
  double tol = 1e-9;
  std::uint64_t seed = 20240601;
  long long samples = 1'000'000;
  std::string method = "auto";
  std::string out;
  /// Empty picks the verb's natural format.
  std::string format;
};

void emit(const Common& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw mincop::InputError(o.out + ": cannot open for writing");
  f << text;
}

void emit(const Common& o, const Json& j) { emit(o, j.dump(2) + "\n"); }

std::vector<double> parse_reals(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw mincop::InputError(what + ": '" + item + "' is not a number");
    }
  }
  return out;
}

std::vector<int> parse_ints(const std::string& text, const std::string& what) {
  std::vector<int> out;
  for (double v : parse_reals(text, what)) {
    if (v != static_cast<int>(v)) throw mincop::InputError(what + ": expected integers");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

mincop::GridSpec grid_spec(const Common& o) {
  mincop::GridSpec g;
  if (o.grid < 0) throw mincop::InputError("--grid must be positive");
  if (o.grid > 0) g.vertices_per_axis = o.grid + 1;
  return g;
}

mincop::ConcordanceOptions concordance_options(const Common& o) {
  mincop::ConcordanceOptions c;
  c.method = mincop::method_from_string(o.method);
  if (o.samples < 1) throw mincop::InputError("--samples must be positive");
  c.samples = o.samples;
  c.seed = o.seed;
  return c;
}

void check_format(const Common& o) {
  if (!o.format.empty() && o.format != "json" && o.format != "csv") {
    throw mincop::InputError("--format must be json or csv");
  }
}

std::string csv_row(const std::vector<double>& values) {
  std::ostringstream out;
  out << std::setprecision(17);
  for (std::size_t i = 0; i < values.size(); ++i) out << (i ? "," : "") << values[i];
  return out.str();
}

int run_eval(const Common& o, const std::string& path, const std::vector<std::string>& at) {
  const Copula c = mincop::io::read_copula_file(path);
  std::vector<mincop::Point> points;
  for (const auto& a : at) points.push_back(parse_reals(a, "--at"));
  if (points.empty()) {
    const auto axes = mincop::evaluation_axes(c.dim(), grid_spec(o), {});
    mincop::for_each_vertex(axes, [&](const mincop::Point& u) { points.push_back(u); });
  }
  if (o.format == "csv") {
    std::ostringstream out;
    out << "# schema_version=" << mincop::io::kSchemaVersion << '\n';
    for (int k = 1; k <= c.dim(); ++k) out << 'u' << k << ',';
    out << "cdf,survival\n";
    for (const auto& u : points) {
      auto row = u;
      row.push_back(mincop::cdf(c, u));
      row.push_back(mincop::survival_value(c, u));
      out << csv_row(row) << '\n';
    }
    emit(o, out.str());
    return 0;
  }
  Json rows = Json::array();
  for (const auto& u : points) {
    rows.push_back({{"u", u}, {"cdf", mincop::cdf(c, u)}, {"survival", mincop::survival_value(c, u)}});
  }
  emit(o, Json{{"schema_version", mincop::io::kSchemaVersion}, {"dim", c.dim()}, {"points", rows}});
  return 0;
}

int run_measure(const Common& o, const std::string& path, bool tau, bool rho, bool pi) {
  const Copula c = mincop::io::read_copula_file(path);
  const auto options = concordance_options(o);
  if (!tau && !rho && !pi) tau = rho = pi = true;
  std::vector<mincop::FunctionalReport> reports;
  if (tau) reports.push_back(mincop::kendall_tau(c, options));
  if (rho) reports.push_back(mincop::spearman_rho(c, options));
  if (pi) reports.push_back(mincop::pi_integral(c, options));
  if (o.format == "csv") {
    std::ostringstream out;
    out << std::setprecision(17) << "# schema_version=" << mincop::io::kSchemaVersion << '\n';
    out << "functional,d,value,error_bound,kind,route,samples_or_nodes,seed\n";
    for (const auto& r : reports) {
      out << r.name << ',' << r.dim << ',' << r.estimate.value << ',' << r.estimate.error_bound << ','
          << mincop::to_string(r.estimate.kind) << ",\"" << r.estimate.route << "\","
          << r.estimate.samples_or_nodes << ',' << r.estimate.seed << '\n';
    }
    emit(o, out.str());
    return 0;
  }
  if (reports.size() == 1) {
    Json j = mincop::io::to_json(reports.front());
    j["seed"] = o.seed;
    emit(o, j);
    return 0;
  }
  Json arr = Json::array();
  for (const auto& r : reports) {
    Json j = mincop::io::to_json(r);
    j.erase("schema_version");
    arr.push_back(std::move(j));
  }
  emit(o, Json{{"schema_version", mincop::io::kSchemaVersion}, {"seed", o.seed}, {"reports", arr}});
  return 0;
}

int run_order(const Common& o, const std::string& first, const std::string& second, bool pointwise) {
  const Copula c = mincop::io::read_copula_file(first);
  const Copula d = mincop::io::read_copula_file(second);
  mincop::OrderOptions options;
  options.grid = grid_spec(o);
  options.tolerance = o.tol;
  const auto r = pointwise ? mincop::pointwise_leq(c, d, options) : mincop::concordance_leq(c, d, options);
  Json j = mincop::io::to_json(r);
  j["order"] = pointwise ? "pointwise" : "concordance";
  emit(o, j);
  return 0;
}

int run_transform(const Common& o, const std::string& path, const std::string& reflect_k,
                  const std::string& permute_sigma, bool to_survival, int discretize_n) {
  Copula c = mincop::io::read_copula_file(path);
  if (!reflect_k.empty()) {
    const auto k = parse_ints(reflect_k, "--reflect");
    c = mincop::reflect(c, mincop::ReflectionSet::from_one_based(c.dim(), k));
  }
  if (!permute_sigma.empty()) {
    const auto sigma = parse_ints(permute_sigma, "--permute");
    if (static_cast<int>(sigma.size()) != c.dim()) throw mincop::InputError("--permute needs d entries");
    c = mincop::permute(c, mincop::Permutation::from_one_based(sigma));
  }
  if (to_survival) c = mincop::survival(c);
  if (discretize_n > 0) c = Copula(mincop::discretize(c, discretize_n));
  emit(o, mincop::io::to_json(c));
  return 0;
}

int run_refute(const Common& o, const std::string& path) {
  const Copula c = mincop::io::read_copula_file(path);
  mincop::RefuteOptions options;
  options.grid = grid_spec(o);
  options.tolerance = o.tol;
  options.concordance = concordance_options(o);
  const auto r = mincop::refute_minimality(c, options);
  std::visit([&](const auto& cert) { emit(o, mincop::io::to_json(cert)); }, r);
  return 0;
}

int run_descend(const Common& o, const std::string& path, int n, int max_iter, const std::string& trace) {
  const Copula c = mincop::io::read_copula_file(path);
  mincop::DescendOptions options;
  options.n = n;
  options.max_iter = max_iter;
  options.tolerance = o.tol;
  const auto r = mincop::descend(c, options);
  if (!trace.empty()) {
    std::ofstream f(trace);
    if (!f) throw mincop::InputError(trace + ": cannot open for writing");
    f << mincop::io::descend_trace_csv(r);
  }
  if (o.format == "csv") {
    emit(o, mincop::io::descend_trace_csv(r));
  } else {
    emit(o, mincop::io::to_json(r));
  }
  return 0;
}

int run_certify(const Common& o, const std::string& path, bool tau_cm, const std::string& k_cm, double epsilon) {
  if (!tau_cm && k_cm.empty()) throw mincop::InputError("certify needs --tau-cm and/or --k-cm <spec.json>");
  const Copula c = mincop::io::read_copula_file(path);
  Json j = {{"schema_version", mincop::io::kSchemaVersion}};
  bool ok = true;
  if (tau_cm) {
    const auto cert = mincop::tau_cm_defect(c, grid_spec(o), o.tol);
    Json t = mincop::io::to_json(cert);
    t.erase("schema_version");
    j["tau_cm"] = std::move(t);
    ok = ok && cert.certified();
  }
  if (!k_cm.empty()) {
    const Json spec_json = mincop::io::read_json_file(k_cm);
    mincop::HyperplaneSpec spec;
    try {
      spec = mincop::io::hyperplane_from_json(spec_json);
    } catch (const mincop::InputError& e) {
      throw mincop::InputError(k_cm + ": " + e.what());
    }
    mincop::HyperplaneOptions options;
    options.tolerance = o.tol;
    options.seed = o.seed;
    options.samples = o.samples;
    const auto mass = mincop::hyperplane_mass(c, spec, epsilon, options);
    Json k = mincop::io::to_json(mass);
    k.erase("schema_version");
    k["evidence_only"] = mass.method != "exact";
    j["k_cm"] = std::move(k);
    ok = ok && mass.certified();
  }
  j["certified"] = ok;
  emit(o, j);
  return ok ? 0 : 1;
}

int run_reproduce(const Common& o) {
  const auto rows = mincop::paper_values();
  bool ok = true;
  for (const auto& r : rows) ok = ok && r.pass;
  if (o.format == "json") {
    Json arr = Json::array();
    for (const auto& r : rows) {
      arr.push_back({{"quantity", r.quantity},
                     {"d", r.dim},
                     {"paper_value", r.paper_value},
                     {"computed", r.computed},
                     {"error", r.error},
                     {"method", r.method},
                     {"tolerance", r.tolerance},
                     {"pass", r.pass}});
    }
    emit(o, Json{{"schema_version", mincop::io::kSchemaVersion}, {"all_pass", ok}, {"rows", arr}});
  } else {
    emit(o, mincop::paper_values_csv(rows));
  }
  return ok ? 0 : 1;
}

int run_validate(const Common& o, const std::string& path) {
  const Copula c = mincop::io::read_copula_file(path);
  const int resolution = o.grid > 0 ? o.grid : mincop::default_vertices(c.dim()) - 1;
  const auto r = mincop::validate(c, resolution, o.tol);
  emit(o, mincop::io::to_json(r));
  return r.pass ? 0 : 1;
}

int run_support(const Common& o, const std::string& path, bool samples_given) {
  const Copula c = mincop::io::read_copula_file(path);
  if (!mincop::is_samplable(c)) throw mincop::UnsupportedRepresentation("copula is not samplable");
  const long long n = samples_given ? o.samples : 1000;
  if (n < 1) throw mincop::InputError("--samples must be positive");
  const auto points = mincop::sample(c, o.seed, static_cast<std::size_t>(n));
  if (o.format == "json") {
    emit(o, Json{{"schema_version", mincop::io::kSchemaVersion}, {"seed", o.seed}, {"points", points}});
  } else {
    std::string csv = mincop::io::points_csv(points, c.dim());
    csv.insert(csv.find('\n'), " seed=" + std::to_string(o.seed));
    emit(o, csv);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Copulas, concordance functionals and extreme negative dependence", "mincop"};
  app.require_subcommand(1);
  app.fallthrough();
  Common o;
  app.add_option("--grid", o.grid, "Cells per axis for grid scans and validation");
  app.add_option("--tol", o.tol, "Tolerance for order, certificate and validation checks");
  app.add_option("--seed", o.seed, "Seed for sampling");
  auto* samples_opt = app.add_option("--samples", o.samples, "Monte Carlo draws or support points");
  app.add_option("--method", o.method, "auto, exact_checkerboard, segment_quadrature, cube_quadrature, monte_carlo");
  app.add_option("--out", o.out, "Write the report here instead of standard output");
  app.add_option("--format", o.format, "json or csv (default: csv for support and reproduce, json otherwise)");

  std::string spec;
  std::string spec2;
  std::vector<std::string> at;
  bool tau = false, rho = false, pi = false, pointwise = false, to_survival = false, tau_cm = false;
  std::string reflect_k, permute_sigma, k_cm, trace, table;
  int discretize_n = 0, n = 16, max_iter = 50;
  double epsilon = 0.0;

  auto* eval = app.add_subcommand("eval", "Evaluate C and its survival copula at points");
  eval->add_option("spec", spec, "Copula JSON")->required();
  eval->add_option("--at", at, "Point as comma-separated coordinates (repeatable); default: the grid");

  auto* measure = app.add_subcommand("measure", "Kendall's tau, Spearman's rho, Pi-integral");
  measure->add_option("spec", spec, "Copula JSON")->required();
  measure->add_flag("--tau", tau, "Kendall's tau");
  measure->add_flag("--rho", rho, "Spearman's rho");
  measure->add_flag("--pi", pi, "Integral of Pi against the copula measure");

  auto* order = app.add_subcommand("order", "Compare two copulas in concordance (or pointwise) order");
  order->add_option("first", spec, "Copula JSON")->required();
  order->add_option("second", spec2, "Copula JSON")->required();
  order->add_flag("--pointwise", pointwise, "Compare distribution functions only");

  auto* transform = app.add_subcommand("transform", "Reflect, permute, take survival, discretize");
  transform->add_option("spec", spec, "Copula JSON")->required();
  transform->add_option("--reflect", reflect_k, "Comma-separated 1-based coordinates to flip");
  transform->add_option("--permute", permute_sigma, "Comma-separated 1-based permutation");
  transform->add_flag("--survival", to_survival, "Survival copula");
  transform->add_option("--discretize", discretize_n, "Checkerboard with n cells per axis");

  auto* refute = app.add_subcommand("refute", "Construct a strictly concordance-smaller copula");
  refute->add_option("spec", spec, "Copula JSON")->required();

  auto* descend = app.add_subcommand("descend", "Iterated surgery on a checkerboard grid");
  descend->add_option("spec", spec, "Copula JSON")->required();
  descend->add_option("--n", n, "Cells per axis")->check(CLI::Range(4, 1 << 20));
  descend->add_option("--max-iter", max_iter, "Iteration limit")->check(CLI::Range(1, 1 << 30));
  descend->add_option("--trace", trace, "Also write the CSV trace here");

  auto* certify = app.add_subcommand("certify", "tau-CM certificate and K-CM hyperplane evidence");
  certify->add_option("spec", spec, "Copula JSON")->required();
  certify->add_flag("--tau-cm", tau_cm, "Grid tau-CM defect");
  certify->add_option("--k-cm", k_cm, "Hyperplane JSON {K, g, c}");
  certify->add_option("--epsilon", epsilon, "Band half-width for --k-cm");

  auto* reproduce = app.add_subcommand("reproduce", "Published values next to computed ones");
  reproduce->add_option("table", table, "Table name")->required()->check(CLI::IsMember({"paper-values"}));

  auto* validate = app.add_subcommand("validate", "Check the copula axioms on a grid");
  validate->add_option("spec", spec, "Copula JSON")->required();

  auto* support = app.add_subcommand("support", "Sampled support points as CSV");
  support->add_option("spec", spec, "Copula JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    check_format(o);
    if (*eval) return run_eval(o, spec, at);
    if (*measure) return run_measure(o, spec, tau, rho, pi);
    if (*order) return run_order(o, spec, spec2, pointwise);
    if (*transform) return run_transform(o, spec, reflect_k, permute_sigma, to_survival, discretize_n);
    if (*refute) return run_refute(o, spec);
    if (*descend) return run_descend(o, spec, n, max_iter, trace);
    if (*certify) return run_certify(o, spec, tau_cm, k_cm, epsilon);
    if (*reproduce) return run_reproduce(o);
    if (*validate) return run_validate(o, spec);
    if (*support) return run_support(o, spec, samples_opt->count() > 0);
  } catch (const mincop::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const mincop::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

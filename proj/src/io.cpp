#include "mincop/io.hpp"

#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>

#include "mincop/catalog.hpp"
#include "mincop/errors.hpp"
#include "mincop/transforms.hpp"

namespace mincop::io {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) { throw InputError(path + ": " + msg); }

// Runs a constructor and rewrites its domain or input error with the path of
// the object being built.
template <class F>
auto guarded(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const InputError& e) {
    fail(path, e.what());
  } catch (const DomainError& e) {
    fail(path, e.what());
  } catch (const ValidationError& e) {
    fail(path, e.what());
  }
}

const Json& field(const Json& j, const std::string& path, const char* key) {
  if (!j.contains(key)) fail(path, std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::string sub(const std::string& path, const char* key) { return path + "." + key; }
std::string sub(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

double number(const Json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

int integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

const Json& array(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

std::vector<double> numbers(const Json& j, const std::string& path) {
  std::vector<double> out;
  for (std::size_t i = 0; i < array(j, path).size(); ++i) out.push_back(number(j[i], sub(path, i)));
  return out;
}

std::vector<int> integers(const Json& j, const std::string& path) {
  std::vector<int> out;
  for (std::size_t i = 0; i < array(j, path).size(); ++i) out.push_back(integer(j[i], sub(path, i)));
  return out;
}

Copula parse(const Json& j, const std::string& path, bool top);

Copula child(const Json& j, const std::string& path, const char* key) {
  return parse(field(j, path, key), sub(path, key), false);
}

int declared_dim(const Json& j, const std::string& path, bool required) {
  if (!j.contains("dim")) {
    if (required) fail(path, "missing field \"dim\"");
    return 0;
  }
  const int d = integer(j["dim"], sub(path, "dim"));
  if (d < 1 || d > dimension_cap()) {
    fail(sub(path, "dim"), "must lie in 1.." + std::to_string(dimension_cap()));
  }
  return d;
}

Copula parse_catalog(const Json& j, const std::string& path, int dim) {
  const Json& name_j = field(j, path, "name");
  if (!name_j.is_string()) fail(sub(path, "name"), "expected a string");
  const std::string name = name_j.get<std::string>();
  if (name == "triangle") return guarded(path, [] { return Copula(make_triangle_3d()); });
  if (name == "shuffle_a") return guarded(path, [] { return Copula(shuffle_a()); });
  if (name == "shuffle_b") return guarded(path, [] { return Copula(shuffle_b()); });
  if (name == "mixture_all_reflections") {
    if (dim == 0) fail(path, "missing field \"dim\"");
    return guarded(path, [&] { return mixture_all_reflections(dim); });
  }
  if (name == "reflected_upper") {
    if (dim == 0) fail(path, "missing field \"dim\"");
    auto k = integers(field(j, path, "K"), sub(path, "K"));
    return guarded(path, [&] { return Copula(make_reflected_upper(dim, k)); });
  }
  fail(sub(path, "name"), "unknown catalog copula \"" + name + "\"");
}

Copula parse_checkerboard(const Json& j, const std::string& path) {
  const std::string cuts_path = sub(path, "cuts");
  const Json& cuts_j = array(field(j, path, "cuts"), cuts_path);
  Axes cuts;
  for (std::size_t k = 0; k < cuts_j.size(); ++k) cuts.push_back(numbers(cuts_j[k], sub(cuts_path, k)));
  auto masses = numbers(field(j, path, "masses"), sub(path, "masses"));
  if (j.contains("shape")) {
    auto shape = integers(j["shape"], sub(path, "shape"));
    if (shape.size() != cuts.size()) fail(sub(path, "shape"), "length differs from the number of cut axes");
    for (std::size_t k = 0; k < shape.size(); ++k) {
      if (static_cast<std::size_t>(shape[k]) + 1 != cuts[k].size()) {
        fail(sub(sub(path, "shape"), k), "does not match the cuts on that axis");
      }
    }
  }
  return guarded(path, [&] { return Copula(CheckerboardCopula::make(cuts, masses)); });
}

Copula parse_segments(const Json& j, const std::string& path, int dim) {
  const std::string seg_path = sub(path, "segments");
  const Json& segs = array(field(j, path, "segments"), seg_path);
  std::vector<Segment> out;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const std::string p = sub(seg_path, i);
    Segment s;
    s.start = numbers(field(segs[i], p, "start"), sub(p, "start"));
    s.end = numbers(field(segs[i], p, "end"), sub(p, "end"));
    s.mass = number(field(segs[i], p, "mass"), sub(p, "mass"));
    if (dim == 0) dim = static_cast<int>(s.start.size());
    out.push_back(std::move(s));
  }
  return guarded(path, [&] { return Copula(SegmentCopula::make(dim, out)); });
}

Copula parse(const Json& j, const std::string& path, bool top) {
  if (!j.is_object()) fail(path, "expected an object");
  if (j.contains("schema_version")) {
    if (integer(j["schema_version"], sub(path, "schema_version")) != kSchemaVersion) {
      fail(sub(path, "schema_version"), "unsupported version, expected " + std::to_string(kSchemaVersion));
    }
  }
  const Json& kind_j = field(j, path, "kind");
  if (!kind_j.is_string()) fail(sub(path, "kind"), "expected a string");
  const std::string kind = kind_j.get<std::string>();
  const bool dim_required = top || kind == "upper_frechet" || kind == "lower_frechet" || kind == "product" ||
                            kind == "clayton_extreme";
  const int dim = declared_dim(j, path, dim_required);

  std::optional<Copula> c;
  if (kind == "upper_frechet") {
    c = guarded(path, [&] { return make_basic(BasicKind::upper_frechet, dim); });
  } else if (kind == "lower_frechet") {
    c = guarded(path, [&] { return make_basic(BasicKind::lower_frechet_2d, dim); });
  } else if (kind == "product") {
    c = guarded(path, [&] { return make_basic(BasicKind::product, dim); });
  } else if (kind == "clayton_extreme") {
    c = guarded(path, [&] { return make_basic(BasicKind::clayton_extreme, dim); });
  } else if (kind == "reflected") {
    Copula inner = child(j, path, "inner");
    auto k = integers(field(j, path, "K"), sub(path, "K"));
    c = guarded(path, [&] { return reflect(inner, ReflectionSet::from_one_based(inner.dim(), k)); });
  } else if (kind == "permuted") {
    Copula inner = child(j, path, "inner");
    auto sigma = integers(field(j, path, "sigma"), sub(path, "sigma"));
    if (static_cast<int>(sigma.size()) != inner.dim()) fail(sub(path, "sigma"), "length differs from the dimension");
    c = guarded(path, [&] { return permute(inner, Permutation::from_one_based(sigma)); });
  } else if (kind == "glue_product") {
    Copula left = child(j, path, "left");
    Copula right = child(j, path, "right");
    c = guarded(path, [&] { return make_glue_product(left, right); });
  } else if (kind == "mixture") {
    const std::string parts_path = sub(path, "parts");
    const Json& parts_j = array(field(j, path, "parts"), parts_path);
    std::vector<std::pair<Copula, double>> parts;
    for (std::size_t i = 0; i < parts_j.size(); ++i) {
      const std::string p = sub(parts_path, i);
      if (!parts_j[i].is_object()) fail(p, "expected an object");
      const double w = number(field(parts_j[i], p, "weight"), sub(p, "weight"));
      parts.emplace_back(child(parts_j[i], p, "copula"), w);
    }
    c = guarded(path, [&] { return make_mixture(parts); });
  } else if (kind == "checkerboard") {
    c = parse_checkerboard(j, path);
  } else if (kind == "segments") {
    c = parse_segments(j, path, dim);
  } else if (kind == "refuted") {
    Copula inner = child(j, path, "inner");
    auto a = numbers(field(j, path, "a"), sub(path, "a"));
    auto b = numbers(field(j, path, "b"), sub(path, "b"));
    const double p = number(field(j, path, "p"), sub(path, "p"));
    c = guarded(path, [&] {
      check_unit_point(a, inner.dim(), "a");
      check_unit_point(b, inner.dim(), "b");
      return Copula::refuted(inner, a, b, p);
    });
  } else if (kind == "catalog") {
    c = parse_catalog(j, path, dim);
  } else if (kind == "shuffle") {
    const std::string pieces_path = sub(path, "pieces");
    const Json& pieces_j = array(field(j, path, "pieces"), pieces_path);
    ShuffleSpec spec;
    for (std::size_t i = 0; i < pieces_j.size(); ++i) {
      const std::string p = sub(pieces_path, i);
      spec.pieces.push_back({number(field(pieces_j[i], p, "lo_x"), sub(p, "lo_x")),
                             number(field(pieces_j[i], p, "lo_y"), sub(p, "lo_y")),
                             number(field(pieces_j[i], p, "side"), sub(p, "side")),
                             integer(field(pieces_j[i], p, "slope"), sub(p, "slope"))});
    }
    c = guarded(path, [&] { return Copula(make_shuffle(spec)); });
  } else {
    fail(sub(path, "kind"), "unknown kind \"" + kind + "\"");
  }
  if (dim != 0 && c->dim() != dim) {
    fail(sub(path, "dim"), "declared " + std::to_string(dim) + " but the copula has dimension " +
                               std::to_string(c->dim()));
  }
  return *c;
}

Json point_json(const Point& p) { return Json(p); }

Json structure(const Copula& c) {
  Json j;
  j["dim"] = c.dim();
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, std::shared_ptr<const CheckerboardCopula>>) {
          j["kind"] = "checkerboard";
          j["cuts"] = p->cuts();
          j["shape"] = p->shape();
          j["masses"] = p->masses();
        } else if constexpr (std::is_same_v<T, std::shared_ptr<const SegmentCopula>>) {
          j["kind"] = "segments";
          Json segs = Json::array();
          for (const auto& s : p->segments()) segs.push_back({{"start", s.start}, {"end", s.end}, {"mass", s.mass}});
          j["segments"] = std::move(segs);
        } else if constexpr (std::is_same_v<T, node::UpperFrechet>) {
          j["kind"] = "upper_frechet";
        } else if constexpr (std::is_same_v<T, node::LowerFrechet>) {
          j["kind"] = "lower_frechet";
        } else if constexpr (std::is_same_v<T, node::Product>) {
          j["kind"] = "product";
        } else if constexpr (std::is_same_v<T, node::ClaytonExtreme>) {
          j["kind"] = "clayton_extreme";
        } else if constexpr (std::is_same_v<T, node::Reflected>) {
          j["kind"] = "reflected";
          j["K"] = p.k.one_based();
          j["inner"] = structure(p.inner);
        } else if constexpr (std::is_same_v<T, node::Permuted>) {
          j["kind"] = "permuted";
          j["sigma"] = p.sigma.one_based();
          j["inner"] = structure(p.inner);
        } else if constexpr (std::is_same_v<T, node::GlueProduct>) {
          j["kind"] = "glue_product";
          j["left"] = structure(p.left);
          j["right"] = structure(p.right);
        } else if constexpr (std::is_same_v<T, node::Mixture>) {
          j["kind"] = "mixture";
          Json parts = Json::array();
          for (const auto& [part, w] : p.parts) parts.push_back({{"weight", w}, {"copula", structure(part)}});
          j["parts"] = std::move(parts);
        } else if constexpr (std::is_same_v<T, node::Refuted>) {
          j["kind"] = "refuted";
          j["a"] = p.a;
          j["b"] = p.b;
          j["p"] = p.p;
          j["inner"] = structure(p.inner);
        }
      },
      c.node().payload);
  return j;
}

}  // namespace

Json parse_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw InputError(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str(), path);
}

Copula copula_from_json(const Json& j) {
  Copula c = parse(j, "$", true);
  if (c.dim() < 2) fail("$.dim", "a top-level copula needs dimension at least 2");
  return c;
}

Copula read_copula_file(const std::string& path) {
  const Json j = read_json_file(path);
  try {
    return copula_from_json(j);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

Json to_json(const Copula& c) {
  Json j = structure(c);
  j["schema_version"] = kSchemaVersion;
  return j;
}

HyperplaneSpec hyperplane_from_json(const Json& j) {
  const std::string path = "$";
  if (!j.is_object()) fail(path, "expected an object");
  HyperplaneSpec spec;
  spec.k = integers(field(j, path, "K"), sub(path, "K"));
  spec.c = number(field(j, path, "c"), sub(path, "c"));
  if (!j.contains("g")) {
    spec.g.assign(spec.k.size(), MonotoneMap::affine(1.0, 0.0));
    return spec;
  }
  const std::string g_path = sub(path, "g");
  const Json& gs = array(j["g"], g_path);
  if (gs.size() != spec.k.size()) fail(g_path, "needs one map per entry of K");
  for (std::size_t i = 0; i < gs.size(); ++i) {
    const std::string p = sub(g_path, i);
    if (!gs[i].is_object()) fail(p, "expected an object");
    const Json& form_j = field(gs[i], p, "form");
    const std::string form = form_j.is_string() ? form_j.get<std::string>() : "";
    if (form == "affine") {
      const double alpha = gs[i].contains("alpha") ? number(gs[i]["alpha"], sub(p, "alpha")) : 1.0;
      const double beta = gs[i].contains("beta") ? number(gs[i]["beta"], sub(p, "beta")) : 0.0;
      spec.g.push_back(guarded(p, [&] { return MonotoneMap::affine(alpha, beta); }));
    } else if (form == "power") {
      const double gamma = number(field(gs[i], p, "gamma"), sub(p, "gamma"));
      spec.g.push_back(guarded(p, [&] { return MonotoneMap::power(gamma); }));
    } else {
      fail(sub(p, "form"), "unsupported map form; use \"affine\" or \"power\"");
    }
  }
  return spec;
}

Json to_json(const MeasureEstimate& e) {
  return {{"value", e.value},
          {"kind", to_string(e.kind)},
          {"error_bound", e.error_bound},
          {"samples_or_nodes", e.samples_or_nodes},
          {"seed", e.seed},
          {"route", e.route}};
}

Json to_json(const FunctionalReport& r) {
  return {{"schema_version", kSchemaVersion},
          {"functional", r.name},
          {"dim", r.dim},
          {"value", r.estimate.value},
          {"estimate", to_json(r.estimate)},
          {"integral", to_json(r.integral)},
          {"normalization", r.normalization},
          {"offset", r.offset}};
}

Json to_json(const OrderResult& r) {
  Json witnesses = Json::array();
  for (const auto& w : r.witnesses) {
    witnesses.push_back({{"point", point_json(w.point)}, {"function", w.function}, {"gap", w.gap}});
  }
  return {{"schema_version", kSchemaVersion},
          {"relation", to_string(r.relation)},
          {"leq", r.leq()},
          {"witnesses", std::move(witnesses)},
          {"max_violation", r.max_violation},
          {"max_reverse", r.max_reverse},
          {"tolerance", r.tolerance},
          {"grid", r.grid_used},
          {"exact", r.exact}};
}

Json to_json(const ValidationReport& r) {
  return {{"schema_version", kSchemaVersion},
          {"pass", r.pass},
          {"worst_negative_mass", r.worst_negative_mass},
          {"margin_defect", r.margin_defect},
          {"grounding_defect", r.grounding_defect},
          {"resolution", r.resolution},
          {"tolerance", r.tolerance}};
}

Json to_json(const TauCmCertificate& c) {
  return {{"schema_version", kSchemaVersion},
          {"certificate", "tau_cm"},
          {"certified", c.certified()},
          {"defect", c.defect},
          {"worst_point", point_json(c.worst_point)},
          {"grid", c.grid},
          {"tolerance", c.tolerance}};
}

Json to_json(const RefutationCertificate& c) {
  Json order = to_json(c.order_check);
  order.erase("schema_version");
  Json validation = to_json(c.validation);
  validation.erase("schema_version");
  return {{"schema_version", kSchemaVersion},
          {"certificate", "refutation"},
          {"a", point_json(c.a)},
          {"b", point_json(c.b)},
          {"p", c.p},
          {"witness", point_json(c.witness)},
          {"corner_mass_a", c.corner_mass_a},
          {"corner_mass_b", c.corner_mass_b},
          {"strict_gap", c.strict_gap},
          {"margin_defect", c.margin_defect},
          {"rho_c", c.rho_c},
          {"rho_d", c.rho_d},
          {"rho_drop", c.rho_drop},
          {"order_check", std::move(order)},
          {"validation", std::move(validation)},
          {"D", to_json(c.d)}};
}

Json to_json(const HyperplaneMass& m) {
  Json j = {{"schema_version", kSchemaVersion},
            {"certificate", "k_cm_evidence"},
            {"certified", m.certified()},
            {"lower", m.lower},
            {"upper", m.upper},
            {"epsilon", m.epsilon},
            {"method", m.method},
            {"tolerance", m.tolerance}};
  if (m.method == "monte_carlo") {
    j["samples"] = m.samples;
    j["seed"] = m.seed;
  }
  return j;
}

Json to_json(const DescendResult& r) {
  Json trace = Json::array();
  for (const auto& s : r.trace) {
    trace.push_back({{"iteration", s.iteration},
                     {"kendall_integral", s.kendall_integral},
                     {"kendall_tau", s.kendall_tau},
                     {"rho", s.rho},
                     {"defect", s.defect},
                     {"p", s.p},
                     {"cuts_per_axis", s.cuts_per_axis}});
  }
  return {{"schema_version", kSchemaVersion},
          {"status", to_string(r.status)},
          {"iterations", r.trace.empty() ? 0 : r.trace.back().iteration},
          {"trace", std::move(trace)},
          {"final", to_json(Copula(r.final_copula))}};
}

std::string descend_trace_csv(const DescendResult& r) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "# schema_version=" << kSchemaVersion << " status=" << to_string(r.status) << '\n';
  out << "iteration,kendall_integral,kendall_tau,rho,defect,p,cuts_per_axis\n";
  for (const auto& s : r.trace) {
    out << s.iteration << ',' << s.kendall_integral << ',' << s.kendall_tau << ',' << s.rho << ',' << s.defect
        << ',' << s.p << ',' << s.cuts_per_axis << '\n';
  }
  return out.str();
}

std::string points_csv(const std::vector<Point>& points, int dim) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "# schema_version=" << kSchemaVersion << '\n';
  for (int k = 1; k <= dim; ++k) out << (k > 1 ? "," : "") << 'u' << k;
  out << '\n';
  for (const auto& p : points) {
    for (std::size_t k = 0; k < p.size(); ++k) out << (k > 0 ? "," : "") << p[k];
    out << '\n';
  }
  return out.str();
}

}  // namespace mincop::io

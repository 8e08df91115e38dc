#pragma once

// JSON copula documents and JSON/CSV reports.
//
// A copula document is an object {"schema_version": 1, "dim": d, "kind": ..., ...}; see
// README.md for every kind. Parse errors are InputError with a JSON path
// ("$.parts[1].copula.K") or a line/column position for syntax errors.

#include <string>

#include <json.hpp>

#include "mincop/concordance.hpp"
#include "mincop/copula.hpp"
#include "mincop/core.hpp"
#include "mincop/negdep.hpp"
#include "mincop/order.hpp"

namespace mincop::io {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

Json parse_text(const std::string& text, const std::string& source = "<input>");
Json read_json_file(const std::string& path);

Copula copula_from_json(const Json& j);
Copula read_copula_file(const std::string& path);
/// Structural serialisation; catalog shorthands come back as their
/// underlying representation.
Json to_json(const Copula& c);

/// {"K": [1-based], "g": [{"form": "affine", "alpha", "beta"} |
/// {"form": "power", "gamma"}], "c": level}; "g" may be omitted for the
/// identity maps.
HyperplaneSpec hyperplane_from_json(const Json& j);

Json to_json(const MeasureEstimate& e);
Json to_json(const FunctionalReport& r);
Json to_json(const OrderResult& r);
Json to_json(const ValidationReport& r);
Json to_json(const TauCmCertificate& c);
Json to_json(const RefutationCertificate& c);
Json to_json(const HyperplaneMass& m);
Json to_json(const DescendResult& r);

/// iteration,kendall_integral,kendall_tau,rho,defect,p,cuts_per_axis
std::string descend_trace_csv(const DescendResult& r);
/// Header u1..ud, one point per row.
std::string points_csv(const std::vector<Point>& points, int dim);

}  // namespace mincop::io

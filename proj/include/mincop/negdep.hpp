#pragma once

// Extreme negative dependence: the tau-CM defect, hyperplane masses for K-CM
// evidence, the corner-pair surgery that produces a strictly smaller copula,
// and the descent loop built on it.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mincop/concordance.hpp"
#include "mincop/copula.hpp"
#include "mincop/core.hpp"
#include "mincop/grid.hpp"
#include "mincop/order.hpp"

namespace mincop {

struct TauCmCertificate {
  std::string grid;
  /// max over the grid of min{ C(u), Q^C[[u,1]] }.
  double defect = 0.0;
  Point worst_point;
  double tolerance = 1e-9;
  bool certified() const { return defect <= tolerance; }
};

TauCmCertificate tau_cm_defect(const Copula& c, const GridSpec& grid = {}, double tolerance = 1e-9);

/// Strictly increasing map on [0,1]: alpha u + beta (alpha > 0) or u^gamma
/// (gamma > 0).
struct MonotoneMap {
  enum class Form { affine, power };
  Form form = Form::affine;
  double alpha = 1.0;
  double beta = 0.0;
  double gamma = 1.0;

  static MonotoneMap affine(double alpha, double beta = 0.0);
  static MonotoneMap power(double gamma);
  double operator()(double u) const;
  /// Throws InputError unless the map is strictly increasing.
  void check() const;
};

/// The set { u : |sum_{k in K} g_k(u_k) - c| <= epsilon }.
struct HyperplaneSpec {
  /// One-based coordinates, |K| >= 2.
  std::vector<int> k;
  /// One map per entry of k, in the same order.
  std::vector<MonotoneMap> g;
  double c = 0.0;
};

struct HyperplaneMass {
  /// Bounds on the band mass; equal for the exact routes.
  double lower = 0.0;
  double upper = 0.0;
  double epsilon = 0.0;
  std::string method;
  long long samples = 0;
  std::uint64_t seed = 0;
  double tolerance = 1e-9;
  /// lower >= 1 - tolerance: evidence for K-CM, not a proof.
  bool certified() const { return lower >= 1.0 - tolerance; }
  double value() const { return 0.5 * (lower + upper); }
};

struct HyperplaneOptions {
  double tolerance = 1e-9;
  long long samples = 200'000;
  std::uint64_t seed = 20240601;
};

/// Segments with affine maps and glue products of such are exact;
/// checkerboards give cell bounds; other copulas fall back to sampling.
HyperplaneMass hyperplane_mass(const Copula& c, const HyperplaneSpec& spec, double epsilon,
                               const HyperplaneOptions& options = {});

struct CornerPair {
  Point a;
  Point b;
  double p = 0.0;
  /// Grid point maximising min{ C(u), Q^C[[u,1]] }.
  Point witness;
  double defect = 0.0;
};

/// Empty when the tau-CM defect on the grid is at most `tolerance`.
std::optional<CornerPair> find_corner_pair(const Copula& c, const GridSpec& grid = {},
                                           double tolerance = 1e-9);

struct RefutationCertificate {
  Point a;
  Point b;
  double p = 0.0;
  Point witness;
  Copula d;
  OrderResult order_check;
  ValidationReport validation;
  double margin_defect = 0.0;
  double corner_mass_a = 0.0;  // Q^C[[0,a]]
  double corner_mass_b = 0.0;  // Q^C[[b,1]]
  /// C(a) - D(a) > 0.
  double strict_gap = 0.0;
  double rho_c = 0.0;
  double rho_d = 0.0;
  double rho_drop = 0.0;
};

struct RefuteOptions {
  GridSpec grid;
  double tolerance = 1e-9;
  /// Cells per axis for validate(D); 0 picks 32, 16 or 8 by dimension.
  int validation_resolution = 0;
  ConcordanceOptions concordance;
};

using Refutation = std::variant<RefutationCertificate, TauCmCertificate>;

/// Builds D = C - 2p C_(1,a,b) + 2p C_(2,a,b) and checks it: D validates,
/// D is strictly below C in concordance order, D(a) < C(a), and Spearman's
/// rho drops. A failing check throws InternalConsistencyError.
Refutation refute_minimality(const Copula& c, const RefuteOptions& options = {});

struct DescendStep {
  int iteration = 0;
  double kendall_integral = 0.0;
  double kendall_tau = 0.0;
  double rho = 0.0;
  double defect = 0.0;
  /// Corner mass removed by the step taken from this copula (0 on the last row).
  double p = 0.0;
  std::size_t cuts_per_axis = 0;
};

struct DescendOptions {
  int n = 16;
  int max_iter = 50;
  double tolerance = 1e-9;
};

struct DescendResult {
  enum class Status { converged, max_iterations, stalled };
  CheckerboardCopula final_copula;
  std::vector<DescendStep> trace;
  Status status = Status::converged;
};

std::string to_string(DescendResult::Status s);

/// Discretises C to n cells per axis, then alternates surgery and exact
/// re-discretisation (keeping at most 4n cuts per axis) until the vertex-grid
/// tau-CM defect is at most `tolerance`.
DescendResult descend(const Copula& c, const DescendOptions& options = {});

}  // namespace mincop

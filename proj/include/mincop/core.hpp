#pragma once

// Pointwise evaluation, copula-measure queries, sampling and validity checks
// for every representation.

#include <cstdint>
#include <optional>
#include <vector>

#include "mincop/copula.hpp"

namespace mincop {

/// C(u). Throws InputError on dimension mismatch or coordinates outside [0,1].
double cdf(const Copula& c, PointView u);

/// Q^C[[lo, hi]]; requires lo <= hi coordinatewise.
double box_mass(const Copula& c, PointView lo, PointView hi);

/// (tau C)(u) = Q^C[[1 - u, 1]].
double survival_value(const Copula& c, PointView u);

/// Product of per-coordinate affine factors, prod_k (alpha_k + beta_k u_k).
struct AffineProduct {
  std::vector<double> alpha;
  std::vector<double> beta;

  static AffineProduct constant(int dim);
  /// prod_k u_k
  static AffineProduct coordinates(int dim);
  /// prod_k (1 - u_k)
  static AffineProduct complements(int dim);
  int dim() const { return static_cast<int>(alpha.size()); }
};

/// E_C[f(U); U in [lo, hi]] for an affine product f, computed in closed form
/// (Gauss-Legendre along segments, exact for these polynomial integrands).
/// Empty when the representation has no such route (extreme Clayton).
std::optional<double> restricted_moment(const Copula& c, const AffineProduct& f, PointView lo,
                                        PointView hi, int gauss_points = 16);
std::optional<double> moment(const Copula& c, const AffineProduct& f, int gauss_points = 16);

bool is_samplable(const Copula& c);

/// n i.i.d. draws from Q^C; deterministic in (seed, n).
/// Throws UnsupportedRepresentation for nodes without a sampler.
std::vector<Point> sample(const Copula& c, std::uint64_t seed, std::size_t n);

struct ValidationReport {
  /// Most negative cell mass on the grid (0 when none is negative).
  double worst_negative_mass = 0.0;
  double margin_defect = 0.0;
  double grounding_defect = 0.0;
  int resolution = 0;
  double tolerance = 1e-9;
  bool pass = false;
};

/// Checks the copula axioms on a uniform grid with `resolution` cells per
/// axis, refined by the representation's breakpoints.
ValidationReport validate(const Copula& c, int resolution, double tolerance = 1e-9);

namespace detail {
// Unchecked evaluation; callers guarantee dimensions and ranges.
double cdf(const Copula& c, PointView u);
double box(const Copula& c, PointView lo, PointView hi);
}  // namespace detail

}  // namespace mincop

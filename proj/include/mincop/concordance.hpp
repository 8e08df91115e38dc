#pragma once

// Kendall's tau, Spearman's rho and the Pi-integral.
//
// With normalisations
//   kappa_tau(C) = 2^d / (2^(d-1) - 1) * (int C dQ^C - 2^-d)
//   kappa_rho(C) = 2^d (d+1) / (2^d - (d+1)) * (int (C + tau C)/2 dPi - 2^-d)
// both equal 1 at M.
//
// Checkerboard integrals are exact: C is multilinear on every cell, and the
// mean of a multilinear function over a box is the mean of its corner
// values. Hence int C dQ^C = sum_cells mass * corner-mean(C) and
// int C dPi = sum_cells volume * corner-mean(C), likewise for the
// upper-orthant function v -> Q^C[[v,1]], whose integral equals int tau C dPi.

#include <cstdint>
#include <string>

#include "mincop/copula.hpp"

namespace mincop {

enum class Method { automatic, exact_checkerboard, segment_quadrature, cube_quadrature, monte_carlo };

std::string to_string(Method m);
Method method_from_string(const std::string& name);

struct MeasureEstimate {
  enum class Kind { exact, quadrature, monte_carlo };
  double value = 0.0;
  Kind kind = Kind::exact;
  double error_bound = 0.0;
  /// Draws for Monte Carlo, nodes or panels for quadrature, cells for exact.
  long long samples_or_nodes = 0;
  std::uint64_t seed = 0;
  /// Short description of the integration route.
  std::string route;
};

std::string to_string(MeasureEstimate::Kind k);

struct FunctionalReport {
  std::string name;
  int dim = 0;
  /// Normalised functional value with its error bound.
  MeasureEstimate estimate;
  /// The underlying integral before normalisation.
  MeasureEstimate integral;
  double normalization = 0.0;
  double offset = 0.0;
};

struct ConcordanceOptions {
  Method method = Method::automatic;
  long long samples = 1'000'000;
  std::uint64_t seed = 20240601;
  /// Composite Simpson panels per segment.
  int simpson_panels = 4096;
};

double kendall_normalization(int dim);
double spearman_normalization(int dim);

/// int C dQ^C.
MeasureEstimate kendall_integral(const Copula& c, const ConcordanceOptions& options = {});
/// int (C + tau C) / 2 dPi.
MeasureEstimate spearman_integral(const Copula& c, const ConcordanceOptions& options = {});

FunctionalReport kendall_tau(const Copula& c, const ConcordanceOptions& options = {});
FunctionalReport spearman_rho(const Copula& c, const ConcordanceOptions& options = {});
/// int Pi dQ^C.
FunctionalReport pi_integral(const Copula& c, const ConcordanceOptions& options = {});

enum class Functional { kendall_tau, spearman_rho };

/// Sum of the functional over all 2^d reflections of C.
double reflection_sum(Functional f, const Copula& c, const ConcordanceOptions& options = {});

}  // namespace mincop

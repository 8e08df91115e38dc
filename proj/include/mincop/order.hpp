#pragma once

// Pointwise and concordance order checks on evaluation grids.

#include <string>
#include <vector>

#include "mincop/copula.hpp"
#include "mincop/grid.hpp"

namespace mincop {

enum class Relation { equal, strictly_below, strictly_above, incomparable };

std::string to_string(Relation r);

struct OrderWitness {
  Point point;
  /// "cdf" compares C(u) with D(u); "survival" compares (tau C)(u) with
  /// (tau D)(u).
  std::string function;
  /// Value of the first argument minus the second at `point`.
  double gap = 0.0;
};

struct OrderResult {
  Relation relation = Relation::equal;
  /// At most two: where the second argument exceeds the first, and where the
  /// first exceeds the second.
  std::vector<OrderWitness> witnesses;
  /// Largest excess of the first argument over the second (<= 0 when below).
  double max_violation = 0.0;
  /// Largest excess of the second argument over the first.
  double max_reverse = 0.0;
  double tolerance = 1e-9;
  std::string grid_used;
  /// True when the grid verdict holds on the whole cube (two checkerboards
  /// evaluated on the union of their cuts).
  bool exact = false;

  /// First argument <= second up to tolerance (equal or strictly below).
  bool leq() const { return relation == Relation::equal || relation == Relation::strictly_below; }
};

struct OrderOptions {
  GridSpec grid;
  double tolerance = 1e-9;
};

/// C(u) <= D(u) + tol on the grid.
OrderResult pointwise_leq(const Copula& c, const Copula& d, const OrderOptions& options = {});

/// C <= D and tau(C) <= tau(D) on the grid.
OrderResult concordance_leq(const Copula& c, const Copula& d, const OrderOptions& options = {});

}  // namespace mincop

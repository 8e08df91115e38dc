#pragma once

#include <vector>

namespace mincop::detail {

/// Gauss-Legendre rule mapped to [0,1].
struct Rule {
  std::vector<double> x;
  std::vector<double> w;
};

/// Supported orders: 4, 8, 12, 16, 20, 24, 32. Other orders round up.
const Rule& gauss_legendre(int n);

}  // namespace mincop::detail

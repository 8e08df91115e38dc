#pragma once

// The table behind `mincop reproduce paper-values`: published values of the
// concordance functionals and certificates next to what the library computes.

#include <string>
#include <vector>

namespace mincop {

struct PaperRow {
  std::string quantity;
  int dim = 0;
  double paper_value = 0.0;
  double computed = 0.0;
  double error = 0.0;
  std::string method;
  double tolerance = 0.0;
  bool pass = false;
};

/// Yes/no checks are rows with paper_value 1 and computed 1 or 0.
std::vector<PaperRow> paper_values();

/// quantity,d,paper_value,computed,error,method,tolerance,pass
std::string paper_values_csv(const std::vector<PaperRow>& rows);

}  // namespace mincop

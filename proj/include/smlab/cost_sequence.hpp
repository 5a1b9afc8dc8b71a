#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace smlab {

// Which scale the `values` of a CostSequence live on.
//   ExpBase  - the exponential-base recursion values Y_1 < ... < Y_n
//   Weibull  - scale * Y_k^(1/d)
//   Coupled  - quantile-coupled to an arbitrary distribution
//   Observed - sorted matched costs measured directly on an instance
//              (no exponential base attached)
enum class View { ExpBase, Weibull, Coupled, Observed };

struct CostSequence {
  View view = View::ExpBase;
  double weibull_d = 1.0;     // set when view == Weibull
  std::string coupled_name;   // set when view == Coupled
  std::vector<double> base;   // Y_k; empty when view == Observed
  std::vector<double> increments;  // X_k = Y_k - Y_{k-1}; empty when view == Observed
  std::vector<double> values;      // costs in the current view, ascending

  std::size_t n() const { return values.size(); }
};

}  // namespace smlab

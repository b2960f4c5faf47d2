#pragma once

#include <functional>
#include <vector>

namespace bimeron {

/// Deterministic Nelder-Mead simplex minimizer (no restarts, fixed
/// coefficients, stable ordering). Converged when the simplex collapses
/// below xatol in every coordinate and the value spread falls below fatol.
struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct NelderMeadOptions {
  int max_iters = 2000;
  double xatol = 1e-7;
  double fatol = 1e-11;
};

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                             const std::vector<double>& start,
                             const std::vector<double>& initial_scale,
                             const NelderMeadOptions& options = {});

}  // namespace bimeron

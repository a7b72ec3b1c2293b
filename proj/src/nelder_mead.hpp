#pragma once

#include <functional>
#include <vector>

namespace hv {

struct NelderMeadOptions {
  double initial_step = 0.1;
  double ftol = 1e-8;      // stop when the simplex f-spread drops below this
  long max_evals = 100000;
};

struct NelderMeadResult {
  std::vector<double> x;
  double fx = 0.0;
  long evals = 0;
  bool converged = false;
};

// Downhill simplex minimization with the standard reflection, expansion,
// contraction and shrink moves. Deterministic.
NelderMeadResult nelder_mead_minimize(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> x0, const NelderMeadOptions& opts);

}  // namespace hv

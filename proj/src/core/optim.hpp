#pragma once

#include <array>
#include <functional>
#include <vector>

namespace rednow {

struct SimplexResult {
  std::array<double, 2> x{};
  double f = 0;
  int iterations = 0;
  bool converged = false;
};

// Nelder-Mead on a 2-d objective. Stops when the simplex function spread
// falls below ftol_abs + ftol_rel*|best| or after max_iter iterations.
// best_trace, when given, records the best objective value after each
// iteration (non-increasing by construction).
SimplexResult nelder_mead_2d(const std::function<double(double, double)>& f,
                             std::array<double, 2> start, std::array<double, 2> step,
                             double ftol_abs = 1e-10, double ftol_rel = 1e-10,
                             int max_iter = 500,
                             std::vector<double>* best_trace = nullptr);

}  // namespace rednow

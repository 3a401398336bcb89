#include "core/optim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rednow {

namespace {

struct Vertex {
  std::array<double, 2> x;
  double f;
};

}  // namespace

SimplexResult nelder_mead_2d(const std::function<double(double, double)>& f,
                             std::array<double, 2> start, std::array<double, 2> step,
                             double ftol_abs, double ftol_rel, int max_iter,
                             std::vector<double>* best_trace) {
  auto eval = [&](std::array<double, 2> p) {
    const double v = f(p[0], p[1]);
    return std::isfinite(v) ? v : std::numeric_limits<double>::max();
  };

  std::array<Vertex, 3> s{};
  s[0] = {start, eval(start)};
  s[1] = {{start[0] + step[0], start[1]}, 0};
  s[1].f = eval(s[1].x);
  s[2] = {{start[0], start[1] + step[1]}, 0};
  s[2].f = eval(s[2].x);

  SimplexResult res;
  const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;

  for (int it = 0; it < max_iter; ++it) {
    std::sort(s.begin(), s.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
    if (best_trace) best_trace->push_back(s[0].f);
    res.iterations = it + 1;

    if (s[2].f - s[0].f <= ftol_abs + ftol_rel * std::abs(s[0].f)) {
      res.converged = true;
      break;
    }

    const std::array<double, 2> centroid{(s[0].x[0] + s[1].x[0]) / 2.0,
                                         (s[0].x[1] + s[1].x[1]) / 2.0};
    auto along = [&](double coef) {
      return std::array<double, 2>{centroid[0] + coef * (centroid[0] - s[2].x[0]),
                                   centroid[1] + coef * (centroid[1] - s[2].x[1])};
    };

    const auto xr = along(alpha);
    const double fr = eval(xr);
    if (fr < s[0].f) {
      const auto xe = along(gamma);
      const double fe = eval(xe);
      s[2] = fe < fr ? Vertex{xe, fe} : Vertex{xr, fr};
      continue;
    }
    if (fr < s[1].f) {
      s[2] = {xr, fr};
      continue;
    }
    // contraction (outside if the reflection helped over the worst)
    const auto xc = fr < s[2].f ? along(rho) : along(-rho);
    const double fc = eval(xc);
    if (fc < std::min(fr, s[2].f)) {
      s[2] = {xc, fc};
      continue;
    }
    // shrink toward the best vertex
    for (int i = 1; i < 3; ++i) {
      s[i].x = {s[0].x[0] + sigma * (s[i].x[0] - s[0].x[0]),
                s[0].x[1] + sigma * (s[i].x[1] - s[0].x[1])};
      s[i].f = eval(s[i].x);
    }
  }

  std::sort(s.begin(), s.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
  res.x = s[0].x;
  res.f = s[0].f;
  return res;
}

}  // namespace rednow

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "core/dates.hpp"

namespace rednow {

struct PointMetrics {
  double rmsfe = 0;
  double mafe = 0;
};

PointMetrics point_metrics(std::span<const double> errors);

enum class CrpsMode { simulate, closed };

// CRPS of a normal predictive distribution N(mu, sigma^2) against outcome y.
// simulate draws n_draws seeded samples and uses the sample-pair estimator;
// closed evaluates sigma*(z*(2*Phi(z)-1) + 2*phi(z) - 1/sqrt(pi)).
// sigma == 0 degenerates to |y - mu| in both modes.
double crps_normal(double mu, double sigma, double y, CrpsMode mode,
                   std::uint64_t seed = 0, int n_draws = 1000);

enum class LossKind { squared, absolute, crps };
enum class Sided { one, two };

struct TestResult {
  double statistic = 0;
  double p_value = 0;
  int n = 0;
  Sided sided = Sided::one;
  bool degenerate = false;  // zero-variance loss differential with a nonzero mean
};

// Diebold-Mariano with the Harvey et al. small-sample correction and
// Student-t(n-1) critical values. For LossKind::crps the inputs are
// per-period CRPS values rather than forecast errors. One-sided p is
// P(T <= stat): small p means the model loses less than the benchmark.
TestResult dm_test(std::span<const double> e_model, std::span<const double> e_bench,
                   LossKind loss, int h = 1, Sided sided = Sided::one);

enum class WindowClass { outperform = -1, inconclusive = 0, underperform = 1 };

struct FluctuationPath {
  int window_m = 0;
  std::vector<int> center;          // index into d of each window's center
  std::vector<double> statistic;
  double upper = 0;                 // +critical value
  double lower = 0;                 // -critical value
  std::vector<WindowClass> klass;
};

// Rolling-window instability test on the loss differential d (model minus
// benchmark): statistic_j = sqrt(m) * mean(window_j) / sigma_hac, with m =
// round(mu * P) and the full-sample HAC standard deviation. Two-sided 5%
// critical bands; statistic below the lower band marks outperformance.
FluctuationPath gr_fluctuation(std::span<const double> d, double mu = 0.1);

// Two-sided 5% critical value for the rolling-window ratio mu, linearly
// interpolated on the published table grid mu = 0.1..0.9.
double gr_critical_value(double mu);

// Running sum of e_model^2 - e_bench^2.
std::vector<double> cum_loss_diff(std::span<const double> e_model,
                                  std::span<const double> e_bench);

// First principal component scores of a panel of equal-length series. Each
// series is standardized (demeaned, unit sample variance); the sign is
// normalized so the first series' loading is positive.
std::vector<double> first_pc(const std::vector<std::vector<double>>& panel);

double pearson_corr(std::span<const double> x, std::span<const double> y);

}  // namespace rednow

#include "core/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/errors.hpp"
#include "core/rng.hpp"
#include "core/stats.hpp"

namespace rednow {

PointMetrics point_metrics(std::span<const double> errors) {
  if (errors.empty()) throw ValidationError("point_metrics: no errors");
  double ss = 0, sa = 0;
  for (double e : errors) {
    ss += e * e;
    sa += std::abs(e);
  }
  return {std::sqrt(ss / double(errors.size())), sa / double(errors.size())};
}

double crps_normal(double mu, double sigma, double y, CrpsMode mode, std::uint64_t seed,
                   int n_draws) {
  if (sigma < 0) throw ValidationError("crps_normal: sigma must be >= 0");
  if (sigma == 0) return std::abs(y - mu);

  if (mode == CrpsMode::closed) {
    const double z = (y - mu) / sigma;
    return sigma * (z * (2.0 * norm_cdf(z) - 1.0) + 2.0 * norm_pdf(z) -
                    1.0 / std::sqrt(M_PI));
  }

  if (n_draws < 2) throw ValidationError("crps_normal: need at least 2 draws");
  Rng rng(seed);
  std::vector<double> x(std::size_t(n_draws), 0.0);
  for (auto& v : x) v = rng.normal(mu, sigma);

  double term1 = 0;
  for (double v : x) term1 += std::abs(v - y);
  term1 /= double(n_draws);

  // sum over ordered pairs |x_i - x_j| via the sorted-order identity
  std::sort(x.begin(), x.end());
  double pair_sum = 0;
  const double n = double(n_draws);
  for (int i = 0; i < n_draws; ++i) pair_sum += x[std::size_t(i)] * (2.0 * i - (n - 1.0));
  pair_sum *= 2.0;

  return term1 - pair_sum / (2.0 * n * n);
}

namespace {

double loss_of(double e, LossKind loss) {
  switch (loss) {
    case LossKind::squared: return e * e;
    case LossKind::absolute: return std::abs(e);
    case LossKind::crps: return e;  // inputs already are per-period scores
  }
  return 0;
}

}  // namespace

TestResult dm_test(std::span<const double> e_model, std::span<const double> e_bench,
                   LossKind loss, int h, Sided sided) {
  if (e_model.size() != e_bench.size())
    throw ValidationError("dm_test: series lengths differ");
  const int n = int(e_model.size());
  if (n < 10) throw ValidationError("dm_test: need at least 10 observations");
  if (h < 1) throw ValidationError("dm_test: horizon must be >= 1");

  std::vector<double> d(std::size_t(n), 0.0);
  for (int t = 0; t < n; ++t)
    d[std::size_t(t)] = loss_of(e_model[std::size_t(t)], loss) -
                        loss_of(e_bench[std::size_t(t)], loss);

  double dbar = 0;
  for (double v : d) dbar += v;
  dbar /= n;

  auto autocov = [&](int lag) {
    double s = 0;
    for (int t = lag; t < n; ++t)
      s += (d[std::size_t(t)] - dbar) * (d[std::size_t(t - lag)] - dbar);
    return s / n;
  };

  double lrv = autocov(0);
  for (int l = 1; l <= h - 1 && l < n; ++l) lrv += 2.0 * autocov(l);
  if (lrv < 0) lrv = autocov(0);  // rare with h>1; fall back to the short-run variance

  TestResult r;
  r.n = n;
  r.sided = sided;
  if (lrv <= 0) {
    if (dbar == 0) {
      r.statistic = 0;
      r.p_value = 0.5;
      if (sided == Sided::two) r.p_value = 1.0;
      return r;
    }
    r.degenerate = true;
    r.statistic = dbar < 0 ? -std::numeric_limits<double>::infinity()
                           : std::numeric_limits<double>::infinity();
    r.p_value = sided == Sided::one ? (dbar < 0 ? 0.0 : 1.0) : 0.0;
    return r;
  }

  const double dm = dbar / std::sqrt(lrv / n);
  const double harvey =
      std::sqrt((n + 1.0 - 2.0 * h + double(h) * (h - 1.0) / n) / n);
  r.statistic = harvey * dm;
  const double cdf = student_t_cdf(r.statistic, n - 1);
  r.p_value = sided == Sided::one ? cdf : 2.0 * std::min(cdf, 1.0 - cdf);
  return r;
}

double gr_critical_value(double mu) {
  // Two-sided 5% critical values of the rolling-window fluctuation test,
  // indexed by the window share mu; linear interpolation between grid points.
  static constexpr double grid[9] = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  static constexpr double cv[9] = {3.393, 3.179, 3.012, 2.890, 2.779,
                                   2.634, 2.560, 2.433, 2.338};
  if (!(mu > 0.0 && mu < 1.0))
    throw ValidationError("gr_critical_value: mu must lie in (0,1)");
  if (mu <= grid[0]) return cv[0];
  if (mu >= grid[8]) return cv[8];
  for (int i = 1; i < 9; ++i) {
    if (mu <= grid[i]) {
      const double f = (mu - grid[i - 1]) / (grid[i] - grid[i - 1]);
      return cv[i - 1] + f * (cv[i] - cv[i - 1]);
    }
  }
  return cv[8];
}

FluctuationPath gr_fluctuation(std::span<const double> d, double mu) {
  const int P = int(d.size());
  if (P < 20) throw ValidationError("gr_fluctuation: need at least 20 observations");
  int m = int(std::lround(mu * P));
  m = std::clamp(m, 2, P);

  FluctuationPath path;
  path.window_m = m;
  const double cv = gr_critical_value(mu);
  path.upper = cv;
  path.lower = -cv;

  double scale = 0;
  for (double v : d) scale = std::max(scale, std::abs(v));
  double sig = std::sqrt(std::max(hac_variance(d), 0.0));
  const bool flat = sig <= 1e-14 * std::max(scale, 1.0);

  double wsum = 0;
  for (int t = 0; t < m; ++t) wsum += d[std::size_t(t)];
  for (int j = 0; j + m <= P; ++j) {
    if (j > 0) wsum += d[std::size_t(j + m - 1)] - d[std::size_t(j - 1)];
    const double stat = flat ? 0.0 : std::sqrt(double(m)) * (wsum / m) / sig;
    path.center.push_back(j + (m - 1) / 2);
    path.statistic.push_back(stat);
    path.klass.push_back(stat < path.lower ? WindowClass::outperform
                         : stat > path.upper ? WindowClass::underperform
                                             : WindowClass::inconclusive);
  }
  return path;
}

std::vector<double> cum_loss_diff(std::span<const double> e_model,
                                  std::span<const double> e_bench) {
  if (e_model.size() != e_bench.size())
    throw ValidationError("cum_loss_diff: series lengths differ");
  std::vector<double> out(e_model.size());
  double acc = 0;
  for (std::size_t t = 0; t < e_model.size(); ++t) {
    acc += e_model[t] * e_model[t] - e_bench[t] * e_bench[t];
    out[t] = acc;
  }
  return out;
}

std::vector<double> first_pc(const std::vector<std::vector<double>>& panel) {
  const std::size_t m = panel.size();
  if (m < 2) throw ValidationError("first_pc: need at least 2 series");
  const std::size_t n = panel[0].size();
  if (n < 3) throw ValidationError("first_pc: series too short");
  for (const auto& s : panel)
    if (s.size() != n) throw ValidationError("first_pc: unequal series lengths");

  // standardize columns of Z (n x m)
  std::vector<std::vector<double>> z(m, std::vector<double>(n));
  for (std::size_t j = 0; j < m; ++j) {
    const double mu = mean(panel[j]);
    const double s = sd(panel[j]);
    if (s <= 0) throw ValidationError("first_pc: constant series in panel");
    for (std::size_t t = 0; t < n; ++t) z[j][t] = (panel[j][t] - mu) / s;
  }

  // correlation matrix C = Z'Z/(n-1)
  std::vector<std::vector<double>> c(m, std::vector<double>(m));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a; b < m; ++b) {
      double s = 0;
      for (std::size_t t = 0; t < n; ++t) s += z[a][t] * z[b][t];
      c[a][b] = c[b][a] = s / double(n - 1);
    }

  // power iteration with a graded start to avoid symmetric dead points
  std::vector<double> v(m), next(m);
  for (std::size_t j = 0; j < m; ++j) v[j] = 1.0 + double(j) / double(m);
  auto normalize = [](std::vector<double>& x) {
    double nrm = 0;
    for (double t : x) nrm += t * t;
    nrm = std::sqrt(nrm);
    for (double& t : x) t /= nrm;
    return nrm;
  };
  normalize(v);

  for (int it = 0; it < 100000; ++it) {
    for (std::size_t a = 0; a < m; ++a) {
      double s = 0;
      for (std::size_t b = 0; b < m; ++b) s += c[a][b] * v[b];
      next[a] = s;
    }
    const double nrm = normalize(next);
    if (nrm <= 1e-300) {
      // start landed orthogonal to the top eigenspace; nudge deterministically
      std::uint64_t st = 0x5eed;
      for (std::size_t j = 0; j < m; ++j)
        v[j] += 1e-6 * (double(splitmix64(st) >> 11) * 0x1.0p-53 - 0.5);
      normalize(v);
      continue;
    }
    double align = 0;
    for (std::size_t j = 0; j < m; ++j) align += next[j] * v[j];
    if (align < 0)
      for (double& t : next) t = -t;
    double delta = 0;
    for (std::size_t j = 0; j < m; ++j) delta = std::max(delta, std::abs(next[j] - v[j]));
    v = next;
    if (delta < 1e-14) break;
  }

  // sign: first nonzero loading positive
  for (std::size_t j = 0; j < m; ++j) {
    if (std::abs(v[j]) > 1e-12) {
      if (v[j] < 0)
        for (double& t : v) t = -t;
      break;
    }
  }

  std::vector<double> scores(n, 0.0);
  for (std::size_t t = 0; t < n; ++t) {
    double s = 0;
    for (std::size_t j = 0; j < m; ++j) s += z[j][t] * v[j];
    scores[t] = s;
  }
  return scores;
}

double pearson_corr(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ValidationError("pearson_corr: lengths differ");
  if (x.size() < 2) throw ValidationError("pearson_corr: need at least 2 points");
  const double mx = mean(x), my = mean(y);
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t t = 0; t < x.size(); ++t) {
    sxy += (x[t] - mx) * (y[t] - my);
    sxx += (x[t] - mx) * (x[t] - mx);
    syy += (y[t] - my) * (y[t] - my);
  }
  if (sxx <= 0 || syy <= 0) throw ValidationError("pearson_corr: constant input");
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace rednow

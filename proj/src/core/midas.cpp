#include "core/midas.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "core/errors.hpp"
#include "core/optim.hpp"

namespace rednow {

std::vector<double> almon_weights(double gamma1, double gamma2, int k) {
  if (k < 0) throw ValidationError("almon_weights: k must be >= 0");
  if (!std::isfinite(gamma1) || !std::isfinite(gamma2))
    throw ValidationError("almon_weights: non-finite gamma");

  std::vector<double> w(std::size_t(k) + 1);
  double max_e = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= k; ++i) {
    const double e = gamma1 * i + gamma2 * double(i) * double(i);
    w[std::size_t(i)] = e;
    max_e = std::max(max_e, e);
  }
  double sum = 0;
  for (auto& v : w) {
    // exponent shift clamped at -700 so extreme lags stay strictly positive
    // instead of underflowing; the mass involved is < 1e-300 per term
    v = std::exp(std::max(v - max_e, -700.0));
    sum += v;
  }
  for (auto& v : w) v /= sum;
  return w;
}

Ar1Fit fit_ar1(std::span<const double> y) {
  if (y.size() < 3) throw ValidationError("fit_ar1: need at least 3 observations");
  const std::size_t n = y.size() - 1;  // regression rows

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t t = 1; t < y.size(); ++t) {
    const double x = y[t - 1];
    sx += x;
    sy += y[t];
    sxx += x * x;
    sxy += x * y[t];
  }
  const double det = double(n) * sxx - sx * sx;
  const double scale = double(n) * sxx + sx * sx;
  if (std::abs(det) <= 1e-12 * std::max(1.0, scale))
    throw SingularError("fit_ar1: regressor has no variance");

  Ar1Fit f;
  f.n_obs = int(n);
  f.alpha = (double(n) * sxy - sx * sy) / det;
  f.c = (sy - f.alpha * sx) / double(n);
  for (std::size_t t = 1; t < y.size(); ++t) {
    const double e = y[t] - f.c - f.alpha * y[t - 1];
    f.ssr += e * e;
  }
  f.sigma = n > 2 ? std::sqrt(f.ssr / double(n - 2)) : 0.0;
  return f;
}

void SeriesSource::window(Date end, int len, std::span<double> out) const {
  const Date first = end - std::chrono::days{len - 1};
  if (end > s_->end() || first < s_->start)
    throw CoverageError("daily series '" + s_->name + "' missing range " +
                        format_date(first) + ".." + format_date(end) + " (covers " +
                        format_date(s_->start) + ".." + format_date(s_->end()) + ")");
  const std::size_t base = std::size_t((end - s_->start).count());
  for (int i = 0; i < len; ++i) out[std::size_t(i)] = s_->values[base - std::size_t(i)];
}

Date anchor_day(MonthIndex t, int cutoff_days) {
  return month_last_day(t) - std::chrono::days{cutoff_days};
}

std::vector<double> align_daily(const DailySource& daily, MonthIndex t, int cutoff_days,
                                int k, int block_offset, int q) {
  if (k < 1 || q < 1) throw ValidationError("align_daily: k and q must be >= 1");
  std::vector<double> out(std::size_t(q) * std::size_t(k));
  const Date anchor = anchor_day(t, cutoff_days);
  for (int j = 0; j < q; ++j) {
    const Date block_end = anchor - std::chrono::days{j * block_offset};
    daily.window(block_end, k, std::span<double>(out).subspan(std::size_t(j) * k, k));
  }
  return out;
}

namespace {

// Regression rows for an estimation sample: months first+1..last.
struct Design {
  Eigen::VectorXd y;      // regressand
  Eigen::VectorXd y_lag;  // AR term
  Eigen::MatrixXd blocks; // n x (q_built*k) raw daily lags, most-recent-first
  int k = 0;
  int q_built = 0;
};

Design build_design(const MonthlySeries& y, const DailySource& daily, int cutoff_days,
                    const MidasStructure& st, int q) {
  if (y.size() < 2) throw ValidationError("fit_midas: estimation sample too short");
  const int n = int(y.size()) - 1;

  Design d;
  d.k = st.k;
  d.q_built = q;
  d.y.resize(n);
  d.y_lag.resize(n);
  d.blocks.resize(n, q * st.k);
  for (int r = 0; r < n; ++r) {
    const MonthIndex u = y.first_month + 1 + r;
    d.y(r) = y.values[std::size_t(r) + 1];
    d.y_lag(r) = y.values[std::size_t(r)];
    const auto row = align_daily(daily, u, cutoff_days, st.k, st.block_offset, q);
    for (int c = 0; c < q * st.k; ++c) d.blocks(r, c) = row[std::size_t(c)];
  }
  return d;
}

struct ProfiledSolve {
  Eigen::VectorXd theta;  // c, alpha, beta_1..q
  double ssr = std::numeric_limits<double>::infinity();
  bool singular = false;
};

// OLS of y on [1, y_lag, weighted blocks] for fixed gamma.
ProfiledSolve solve_for_gamma(const Design& d, int q, double g1, double g2) {
  const int n = int(d.y.size());
  const auto wv = almon_weights(g1, g2, d.k - 1);
  const Eigen::Map<const Eigen::VectorXd> w(wv.data(), d.k);

  Eigen::MatrixXd design(n, 2 + q);
  design.col(0).setOnes();
  design.col(1) = d.y_lag;
  for (int j = 0; j < q; ++j)
    design.col(2 + j) = d.blocks.middleCols(j * d.k, d.k) * w;

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  ProfiledSolve s;
  if (qr.rank() < design.cols()) {
    s.singular = true;
    return s;
  }
  s.theta = qr.solve(d.y);
  s.ssr = (d.y - design * s.theta).squaredNorm();
  return s;
}

constexpr std::array<std::array<double, 2>, 4> kGammaStarts{
    {{0.0, 0.0}, {-0.1, 0.0}, {0.1, 0.0}, {0.0, -0.01}}};

MidasFit fit_midas_on(const Design& d, int q, int cutoff_days,
                      const MidasStructure& st, std::vector<double>* best_trace) {
  const int n = int(d.y.size());
  const int n_params = 2 + q + 2;
  if (n <= n_params)
    throw FitError("fit_midas: " + std::to_string(n) + " rows cannot identify " +
                   std::to_string(n_params) + " parameters");

  bool any_valid = false;
  auto objective = [&](double g1, double g2) {
    const auto s = solve_for_gamma(d, q, g1, g2);
    if (!s.singular) any_valid = true;
    return s.ssr;
  };

  std::array<double, 2> best_x{0, 0};
  double best_f = std::numeric_limits<double>::infinity();
  std::vector<double> trace;
  for (const auto& start : kGammaStarts) {
    std::vector<double> local_trace;
    auto r = nelder_mead_2d(objective, start, {0.1, 0.01}, 1e-10, 1e-10, 500,
                            best_trace ? &local_trace : nullptr);
    if (r.f < best_f) {
      best_f = r.f;
      best_x = r.x;
      if (best_trace) trace = std::move(local_trace);
    }
  }

  // polish: restart at the incumbent with a tighter simplex
  for (int round = 0; round < 3; ++round) {
    auto r = nelder_mead_2d(objective, best_x, {0.005, 0.0005}, 1e-13, 1e-13, 200);
    if (r.f >= best_f - 1e-12) {
      if (r.f < best_f) {
        best_f = r.f;
        best_x = r.x;
      }
      break;
    }
    best_f = r.f;
    best_x = r.x;
  }

  const auto final_solve = solve_for_gamma(d, q, best_x[0], best_x[1]);
  if (final_solve.singular || !std::isfinite(best_f)) {
    if (!any_valid)
      throw SingularError("fit_midas: design is rank-deficient (collinear regressors)");
    throw FitError("fit_midas: no finite optimum found");
  }

  MidasFit fit;
  fit.c = final_solve.theta(0);
  fit.alpha = final_solve.theta(1);
  fit.beta.assign(final_solve.theta.data() + 2, final_solve.theta.data() + 2 + q);
  fit.gamma1 = best_x[0];
  fit.gamma2 = best_x[1];
  fit.q = q;
  fit.k = st.k;
  fit.block_offset = st.block_offset;
  fit.cutoff_days = cutoff_days;
  fit.ssr = final_solve.ssr;
  fit.n_obs = n;
  fit.sigma = std::sqrt(fit.ssr / double(n - n_params));
  if (best_trace) *best_trace = std::move(trace);
  return fit;
}

double aic_of(const MidasFit& f) {
  const double ssr = std::max(f.ssr, 1e-300);
  return f.n_obs * std::log(ssr / f.n_obs) + 2.0 * f.n_params();
}

// Fits q = 1..q_max (skipping those whose daily coverage or identification
// fails) and returns the AIC winner; ties resolve to the smaller q.
MidasFit select_and_fit(const MonthlySeries& y, const DailySource& daily, int cutoff_days,
                        const MidasStructure& st) {
  MidasFit best;
  bool have = false;
  double best_aic = 0;
  std::string last_error;
  for (int q = 1; q <= st.q_max; ++q) {
    try {
      const Design d = build_design(y, daily, cutoff_days, st, q);
      MidasFit f = fit_midas_on(d, q, cutoff_days, st, nullptr);
      const double a = aic_of(f);
      if (!have || a < best_aic) {
        best = std::move(f);
        best_aic = a;
        have = true;
      }
    } catch (const std::runtime_error& e) {
      last_error = e.what();
    }
  }
  if (!have) throw FitError("fit failed for every lag order: " + last_error);
  return best;
}

}  // namespace

MidasFit fit_midas(const MonthlySeries& y, const DailySource& daily, int q,
                   int cutoff_days, const MidasStructure& st,
                   std::vector<double>* best_trace) {
  if (q < 1) throw ValidationError("fit_midas: q must be >= 1");
  const Design d = build_design(y, daily, cutoff_days, st, q);
  return fit_midas_on(d, q, cutoff_days, st, best_trace);
}

double midas_predict(const MidasFit& fit, double y_prev, std::span<const double> blocks) {
  if (int(blocks.size()) != fit.q * fit.k)
    throw ValidationError("midas_predict: block vector has wrong length");
  const auto w = almon_weights(fit.gamma1, fit.gamma2, fit.k - 1);
  double acc = fit.c + fit.alpha * y_prev;
  for (int j = 0; j < fit.q; ++j) {
    double dot = 0;
    for (int i = 0; i < fit.k; ++i)
      dot += w[std::size_t(i)] * blocks[std::size_t(j * fit.k + i)];
    acc += fit.beta[std::size_t(j)] * dot;
  }
  return acc;
}

int select_q(const MonthlySeries& y, const DailySource& daily, int cutoff_days,
             const MidasStructure& st) {
  return select_and_fit(y, daily, cutoff_days, st).q;
}

namespace {

MonthlySeries slice_months(const MonthlySeries& y, MonthIndex first, MonthIndex last) {
  if (first < y.first_month || last > y.last_month() || last < first)
    throw ValidationError("month slice [" + format_month(first) + "," +
                          format_month(last) + "] outside target sample");
  MonthlySeries out;
  out.first_month = first;
  out.name = y.name;
  out.values.assign(y.values.begin() + (first - y.first_month),
                    y.values.begin() + (last - y.first_month) + 1);
  return out;
}

void check_sample(const MonthlySeries& target, const SampleConfig& sample) {
  if (sample.eval_start <= sample.estimation_start + 1)
    throw ValidationError("evaluation range must start after the estimation sample");
  if (sample.eval_end < sample.eval_start)
    throw ValidationError("empty evaluation range");
  if (sample.estimation_start < target.first_month || sample.eval_end > target.last_month())
    throw ValidationError("target series does not cover the configured sample");
}

}  // namespace

std::vector<NowcastRecord> nowcast_recursive(const MonthlySeries& target,
                                             const DailySource& daily,
                                             const std::string& target_id,
                                             const std::string& spec_name, int cutoff_days,
                                             const SampleConfig& sample,
                                             const MidasStructure& st) {
  check_sample(target, sample);
  std::vector<NowcastRecord> out;
  out.reserve(std::size_t(sample.eval_end - sample.eval_start) + 1);

  for (MonthIndex t = sample.eval_start; t <= sample.eval_end; ++t) {
    const MonthlySeries est = slice_months(target, sample.estimation_start, t - 1);
    const double y_prev = target.at(t - 1);

    NowcastRecord rec;
    rec.target = target_id;
    rec.spec = spec_name;
    rec.month = t;
    rec.cutoff_days = cutoff_days;
    rec.realized = target.at(t);
    try {
      const MidasFit fit = select_and_fit(est, daily, cutoff_days, st);
      const auto blocks =
          align_daily(daily, t, cutoff_days, fit.k, fit.block_offset, fit.q);
      rec.point = midas_predict(fit, y_prev, blocks);
      rec.sigma = fit.sigma;
    } catch (const std::runtime_error&) {
      const Ar1Fit ar = fit_ar1(est.values);
      rec.point = ar.c + ar.alpha * y_prev;
      rec.sigma = ar.sigma;
      rec.fallback = true;
    }
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<NowcastRecord> nowcast_ar1(const MonthlySeries& target,
                                       const std::string& target_id, int cutoff_days,
                                       const SampleConfig& sample) {
  check_sample(target, sample);
  std::vector<NowcastRecord> out;
  out.reserve(std::size_t(sample.eval_end - sample.eval_start) + 1);

  for (MonthIndex t = sample.eval_start; t <= sample.eval_end; ++t) {
    const MonthlySeries est = slice_months(target, sample.estimation_start, t - 1);
    const Ar1Fit ar = fit_ar1(est.values);

    NowcastRecord rec;
    rec.target = target_id;
    rec.spec = "ar1";
    rec.month = t;
    rec.cutoff_days = cutoff_days;
    rec.point = ar.c + ar.alpha * target.at(t - 1);
    rec.sigma = ar.sigma;
    rec.realized = target.at(t);
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace rednow

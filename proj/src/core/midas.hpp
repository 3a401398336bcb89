#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "core/series.hpp"

namespace rednow {

// Exponential lag weights w_i = exp(g1*i + g2*i^2) / sum, i = 0..k
// (k+1 weights). Computed with max-exponent subtraction; positive and
// unit-sum by construction.
std::vector<double> almon_weights(double gamma1, double gamma2, int k);

struct Ar1Fit {
  double c = 0;
  double alpha = 0;
  double sigma = 0;  // sqrt(SSR / (n-2))
  double ssr = 0;
  int n_obs = 0;
};

// OLS of y_t on (1, y_{t-1}). Throws SingularError for constant input.
Ar1Fit fit_ar1(std::span<const double> y);

// Read-side abstraction over the daily regressor so the no-look-ahead
// property can be enforced by an access-logging double in tests.
class DailySource {
 public:
  virtual ~DailySource() = default;
  // Fills out[0..len) with values at end, end-1, ..., end-len+1
  // (most-recent-first). Throws CoverageError when the range is not covered.
  virtual void window(Date end, int len, std::span<double> out) const = 0;
  virtual Date first_date() const = 0;
  virtual Date last_date() const = 0;
};

class SeriesSource final : public DailySource {
 public:
  explicit SeriesSource(const DailySeries& s) : s_(&s) {}
  void window(Date end, int len, std::span<double> out) const override;
  Date first_date() const override { return s_->start; }
  Date last_date() const override { return s_->end(); }

 private:
  const DailySeries* s_;
};

struct MidasStructure {
  int k = 30;            // daily lags per block
  int block_offset = 30; // days between block anchors
  int q_max = 3;         // AIC search upper bound
};

// Anchor day for month t: last calendar day of t minus cutoff_days.
Date anchor_day(MonthIndex t, int cutoff_days);

// q blocks of k daily values for month t; block j (1-based) ends at
// anchor - (j-1)*block_offset, most-recent-first within each block.
std::vector<double> align_daily(const DailySource& daily, MonthIndex t, int cutoff_days,
                                int k, int block_offset, int q);

struct MidasFit {
  double c = 0;
  double alpha = 0;
  std::vector<double> beta;  // one slope per block
  double gamma1 = 0;
  double gamma2 = 0;
  int q = 0;
  int k = 0;
  int block_offset = 0;
  int cutoff_days = 0;
  double ssr = 0;
  int n_obs = 0;
  double sigma = 0;  // sqrt(SSR / (n - n_params))

  int n_params() const { return 2 + q + 2; }  // c, alpha, betas, gamma1, gamma2
};

// Profiled nonlinear least squares for the mixed-frequency regression
// y_t = c + alpha*y_{t-1} + sum_j beta_j * (w(gamma) . x_block_j(t)) + e_t:
// (c, alpha, beta) solved by OLS for fixed gamma, gamma found by simplex
// search from four fixed starts. Estimation rows are the months of `y`
// from the second onwards. best_trace records the best SSR per simplex
// iteration of the winning start.
MidasFit fit_midas(const MonthlySeries& y, const DailySource& daily, int q,
                   int cutoff_days, const MidasStructure& st = {},
                   std::vector<double>* best_trace = nullptr);

// Conditional mean for month t given a fit.
double midas_predict(const MidasFit& fit, double y_prev, std::span<const double> blocks);

// AIC = n*ln(SSR/n) + 2*n_params over q = 1..q_max; ties go to smaller q.
int select_q(const MonthlySeries& y, const DailySource& daily, int cutoff_days,
             const MidasStructure& st = {});

struct NowcastRecord {
  std::string target;
  std::string spec;
  MonthIndex month = 0;
  int cutoff_days = 0;
  double point = 0;
  double sigma = 0;
  double realized = 0;
  bool fallback = false;
};

struct SampleConfig {
  MonthIndex estimation_start = 0;  // first month of the initial estimation sample
  MonthIndex eval_start = 0;
  MonthIndex eval_end = 0;
};

// Recursive (expanding-window) nowcasts: for each evaluation month t, the
// model is re-estimated on months [estimation_start, t-1] with q re-selected
// by AIC, and daily data are used through anchor_day(t, cutoff). A month
// whose fit fails falls back to the AR(1) point, flagged.
std::vector<NowcastRecord> nowcast_recursive(const MonthlySeries& target,
                                             const DailySource& daily,
                                             const std::string& target_id,
                                             const std::string& spec_name, int cutoff_days,
                                             const SampleConfig& sample,
                                             const MidasStructure& st = {});

// The AR(1) benchmark under the same expanding scheme (spec name "ar1").
std::vector<NowcastRecord> nowcast_ar1(const MonthlySeries& target,
                                       const std::string& target_id, int cutoff_days,
                                       const SampleConfig& sample);

}  // namespace rednow

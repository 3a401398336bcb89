// Acceptance suite: runs every release criterion at its stated tolerance and
// prints one pass/fail line per criterion. Exit code = number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "core/config.hpp"
#include "core/corpus.hpp"
#include "core/csvio.hpp"
#include "core/evaluate.hpp"
#include "core/midas.hpp"
#include "core/ndjson.hpp"
#include "core/parallel.hpp"
#include "core/pipeline.hpp"
#include "core/rng.hpp"
#include "core/signals.hpp"
#include "core/stats.hpp"
#include "core/synth.hpp"

using namespace rednow;
namespace fs = std::filesystem;

namespace {

struct Harness {
  int failures = 0;

  void run(const char* id, const char* title, const std::function<std::string()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
      detail = fn();
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("exception: ") + e.what();
    }
    if (detail.rfind("FAIL:", 0) == 0) {
      ok = false;
      detail = detail.substr(5);
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] %s %s  (%.1fs)%s%s\n", ok ? "PASS" : "FAIL", id, title, secs,
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
};

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list args;
  va_start(args, f);
  std::vsnprintf(buf, sizeof buf, f, args);
  va_end(args);
  return buf;
}

#define EXPECT(cond, ...)                        \
  do {                                           \
    if (!(cond)) return "FAIL:" + fmt(__VA_ARGS__); \
  } while (0)

// ---------------------------------------------------------------------------
// C1: voting oracle equivalence

std::string c1_voting_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  const int taus_tenths[] = {1, 3, 5, 7, 9};
  const double taus[] = {0.1, 0.3, 0.5, 0.7, 0.9};
  long cases = 0;

  for (int s = -1; s <= 1; ++s) {
    for (int J = 0; J <= 4; ++J) {
      std::vector<int> combo(std::size_t(J), -1);
      for (;;) {
        // module path
        std::vector<SignalLabel> labels;
        for (int v : combo) labels.push_back(label_from_value(v));
        std::vector<int> unit(std::size_t(J), 1);
        const double score = vote_score(label_from_value(s), labels, unit, false);

        // exact rational reimplementation of the voting + threshold chain
        long num = s, den = 1 + J;
        for (int v : combo) num += v;
        EXPECT(score == double(num) / double(den), "score mismatch at J=%d", J);
        for (int t = 0; t < 5; ++t) {
          const int got = label_value(threshold_relabel(score, taus[t]));
          const int want = 10 * num > long(taus_tenths[t]) * den    ? 1
                           : 10 * num < -long(taus_tenths[t]) * den ? -1
                                                                    : 0;
          EXPECT(got == want, "relabel mismatch (J=%d tau=%.1f)", J, taus[t]);
          ++cases;
        }
        // daily re-sum: one item flips exactly by its label delta
        int j = 0;
        for (; j < J; ++j) {
          if (combo[std::size_t(j)] < 1) {
            ++combo[std::size_t(j)];
            break;
          }
          combo[std::size_t(j)] = -1;
        }
        if (j == J) break;
      }
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  EXPECT(cases == 3L * (1 + 3 + 9 + 27 + 81) * 5, "case count %ld", cases);
  EXPECT(secs < 1.0, "took %.2fs (budget 1s)", secs);
  return fmt("%ld label/threshold cases, exact match", cases);
}

// ---------------------------------------------------------------------------
// C2: re-classification audit arithmetic

std::string c2_audit_arithmetic() {
  struct Table {
    int counts[3][3];
    int total;
    long want_changed;
    double want_share, want_ratio;
    long want_up, want_down;
  };
  const Table tables[] = {
      {{{0, 154, 8}, {43, 0, 196}, {2, 124, 0}}, 4825, 527, 0.1092, 2.14, 366, 171},
      {{{0, 111, 2}, {58, 0, 73}, {0, 47, 0}}, 1934, 291, 0.1505, 1.79, 188, 105},
  };
  for (const Table& tb : tables) {
    std::vector<SignalLabel> original, relabeled;
    for (int from = 0; from < 3; ++from)
      for (int to = 0; to < 3; ++to)
        for (int i = 0; i < tb.counts[from][to]; ++i) {
          original.push_back(label_from_value(from - 1));
          relabeled.push_back(label_from_value(to - 1));
        }
    while (int(original.size()) < tb.total) {
      original.push_back(SignalLabel::neutral);
      relabeled.push_back(SignalLabel::neutral);
    }
    const auto audit = reclassification_audit(original, relabeled);
    EXPECT(audit.total_changed == tb.want_changed, "changed %lld",
           (long long)audit.total_changed);
    EXPECT(std::abs(audit.share - tb.want_share) <= 0.01, "share %.4f", audit.share);
    EXPECT(audit.upgrades == tb.want_up && audit.downgrades == tb.want_down,
           "up/down %lld/%lld", (long long)audit.upgrades, (long long)audit.downgrades);
    EXPECT(std::abs(audit.ratio - tb.want_ratio) <= 0.01, "ratio %.4f", audit.ratio);
  }
  return "totals 527/291, shares 10.92%/15.05%, ratios 2.14/1.79";
}

// ---------------------------------------------------------------------------
// C3: Almon weight properties

std::string c3_almon() {
  {
    const auto w = almon_weights(0.0, 0.0, 4);
    for (double v : w) EXPECT(v == 0.2, "gamma=0 not exactly uniform");
  }
  Rng rng(31337);
  double worst_sum = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const double g1 = rng.uniform(-2.0, 2.0);
    const double g2 = rng.uniform(-0.1, 0.1);
    const int k = int(rng.below(366));
    const auto w = almon_weights(g1, g2, k);
    double sum = 0;
    for (double v : w) {
      EXPECT(v > 0.0, "non-positive weight at k=%d g1=%.3f g2=%.3f", k, g1, g2);
      sum += v;
    }
    worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
    EXPECT(std::abs(sum - 1.0) <= 1e-12, "unit-sum error %.2e", std::abs(sum - 1.0));
  }
  return fmt("10^4 random draws, worst unit-sum error %.1e", worst_sum);
}

// ---------------------------------------------------------------------------
// C4: MIDAS noiseless self-consistency

std::string c4_midas_recovery() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(2718);
  DailySeries daily;
  daily.start = date_ymd(1990, 1, 1);
  daily.name = "x";
  double x = 0;
  for (int d = 0; d < 320 * 31; ++d) {
    x = 0.8 * x + rng.normal();
    daily.values.push_back(x);
  }
  SeriesSource src(daily);

  const double c = 0.5, alpha = 0.6, b1 = 1.2, b2 = -0.7, g1 = -0.12, g2 = 0.0015;
  const int k = 30, q = 2;
  const auto w = almon_weights(g1, g2, k - 1);
  MonthlySeries y;
  y.first_month = month_index(1990, 4);
  y.values.resize(300);
  y.values[0] = 0;
  for (int t = 1; t < 300; ++t) {
    const auto blocks = align_daily(src, y.first_month + t, 0, k, 30, q);
    double acc = c + alpha * y.values[std::size_t(t - 1)];
    double d1 = 0, d2 = 0;
    for (int i = 0; i < k; ++i) {
      d1 += w[std::size_t(i)] * blocks[std::size_t(i)];
      d2 += w[std::size_t(i)] * blocks[std::size_t(k + i)];
    }
    y.values[std::size_t(t)] = acc + b1 * d1 + b2 * d2;
  }

  MidasStructure st;
  st.q_max = 2;
  const MidasFit fit = fit_midas(y, src, q, 0, st);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  EXPECT(fit.ssr < 1e-8, "SSR %.3e", fit.ssr);
  const double perr = std::max({std::abs(fit.c - c), std::abs(fit.alpha - alpha),
                                std::abs(fit.beta[0] - b1), std::abs(fit.beta[1] - b2),
                                std::abs(fit.gamma1 - g1), std::abs(fit.gamma2 - g2)});
  EXPECT(perr < 1e-4, "max parameter error %.3e", perr);
  EXPECT(secs < 10.0, "took %.1fs (budget 10s)", secs);
  return fmt("SSR %.1e, max parameter error %.1e", fit.ssr, perr);
}

// ---------------------------------------------------------------------------
// C5: nested benchmark shows no spurious gains

std::string c5_nested_benchmark() {
  const int n_seeds = 50, n = 500, eval_months = 60;
  std::vector<double> ratios(std::size_t(n_seeds), 0.0);
  parallel_for(std::size_t(n_seeds), 0, [&](std::size_t s) {
    Rng rng(derive_seed(900, s));
    const MonthIndex m0 = month_index(1980, 1);
    DailySeries daily;
    daily.start = month_first_day(m0) - std::chrono::days{120};
    daily.name = "noise";
    const long nd = (month_last_day(m0 + n - 1) - daily.start).count() + 1;
    double x = 0;
    for (long d = 0; d < nd; ++d) {
      x = 0.8 * x + rng.normal();
      daily.values.push_back(x);
    }
    MonthlySeries y;
    y.first_month = m0;
    y.values.push_back(0.0);
    for (int t = 1; t < n; ++t)
      y.values.push_back(0.4 + 0.5 * y.values.back() + rng.normal(0.0, 0.5));

    SeriesSource src(daily);
    SampleConfig sample{m0, m0 + n - eval_months, m0 + n - 1};
    const auto mid = nowcast_recursive(y, src, "t", "x", 0, sample, {});
    const auto ar = nowcast_ar1(y, "t", 0, sample);
    std::vector<double> em, eb;
    for (std::size_t i = 0; i < mid.size(); ++i) {
      em.push_back(mid[i].realized - mid[i].point);
      eb.push_back(ar[i].realized - ar[i].point);
    }
    ratios[s] = point_metrics(em).rmsfe / point_metrics(eb).rmsfe;
  });
  const double avg = mean(ratios);
  EXPECT(avg >= 0.97 && avg <= 1.05, "average ratio %.4f outside [0.97, 1.05]", avg);
  return fmt("average RMSFE ratio %.4f over %d seeds", avg, n_seeds);
}

// ---------------------------------------------------------------------------
// C6: planted-signal end-to-end  (artifacts reused by C10)

fs::path g_c6_out;       // planted-run output directory
RunConfig g_c6_config;   // the planted-run configuration
bool g_c6_ready = false;

RunConfig c6_base_config(const fs::path& out, std::uint64_t seed) {
  RunConfig cfg;
  cfg.seed = seed;
  cfg.jobs = 0;
  cfg.out = out;
  cfg.concepts = {"inflation"};
  cfg.dump_submissions = out / "synth" / "submissions.ndjson";
  cfg.dump_comments = out / "synth" / "comments.ndjson";
  cfg.synth.seed = seed;
  cfg.synth.n_days = 2922;  // 8 years: 2016-01-01 .. 2023-12-31
  cfg.synth.start = date_ymd(2016, 1, 1);
  cfg.synth.rho = 0.9;
  cfg.synth.delta = 0.2;
  cfg.synth.submissions_per_day = 12;
  cfg.synth.comments_per_submission = 4;
  cfg.estimation_start = month_index(2016, 4);
  cfg.eval_start = month_index(2019, 1);
  cfg.eval_end = month_index(2023, 12);
  cfg.targets = {{"synthetic", "inflation", out / "synth" / "target_synthetic.csv"}};
  return cfg;
}

struct BestSpec {
  std::string spec;
  double ratio = 0;
  double dm_p = 1;
};

BestSpec best_rmsfe(const fs::path& metrics_csv) {
  BestSpec best;
  best.ratio = 1e9;
  for (const auto& row : read_csv(metrics_csv)) {
    if (row.size() < 10 || row[3] != "rmsfe" || row[1] == "ar1") continue;
    const double ratio = std::stod(row[6]);
    if (ratio < best.ratio) {
      best.spec = row[1];
      best.ratio = ratio;
      best.dm_p = std::stod(row[8]);
    }
  }
  return best;
}

std::string c6_planted_signal(const fs::path& work) {
  const auto t0 = std::chrono::steady_clock::now();

  // loading calibrated so the latent explains ~50% of one-step target variance
  RunConfig cfg = c6_base_config(work / "c6_planted", 42);
  {
    const auto corpus = gen_corpus(cfg.synth);
    const auto m = monthly_means(corpus.latent);
    cfg.synth.target_loading = cfg.synth.sigma_target / sd(m.values);
  }
  run_synth(cfg);
  run_ingest(cfg);
  run_classify(cfg);
  run_signals(cfg);
  run_nowcast(cfg);
  run_evaluate(cfg);
  const BestSpec planted = best_rmsfe(cfg.out / "eval" / "synthetic_metrics.csv");
  g_c6_out = cfg.out;
  g_c6_config = cfg;
  g_c6_ready = true;

  // zero-loading control: no spurious gains, no spurious significance
  RunConfig null_cfg = c6_base_config(work / "c6_null", 42);
  null_cfg.synth.target_loading = 0.0;
  run_synth(null_cfg);
  run_ingest(null_cfg);
  run_classify(null_cfg);
  run_signals(null_cfg);
  run_nowcast(null_cfg);
  run_evaluate(null_cfg);
  const BestSpec null_best = best_rmsfe(null_cfg.out / "eval" / "synthetic_metrics.csv");

  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  EXPECT(planted.ratio < 0.85, "planted best ratio %.4f (want < 0.85)", planted.ratio);
  EXPECT(planted.dm_p < 0.05, "planted DM p %.4f (want < 0.05)", planted.dm_p);
  EXPECT(null_best.ratio >= 0.95 && null_best.ratio <= 1.10,
         "null best ratio %.4f outside [0.95, 1.10]", null_best.ratio);
  EXPECT(null_best.dm_p > 0.10, "null DM p %.4f (want > 0.10)", null_best.dm_p);
  EXPECT(secs < 300.0, "took %.0fs (budget 300s)", secs);
  return fmt("planted %s ratio %.3f p %.1e; null ratio %.3f p %.2f; %.0fs",
             planted.spec.c_str(), planted.ratio, planted.dm_p, null_best.ratio,
             null_best.dm_p, secs);
}

// ---------------------------------------------------------------------------
// C7: CRPS cross-checks

double crps_mc_se(double mu, double sigma, double y, std::uint64_t seed, int n) {
  Rng rng(seed);
  std::vector<double> x(std::size_t(n), 0.0);
  for (auto& v : x) v = rng.normal(mu, sigma);
  std::vector<double> sorted = x;
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> prefix(sorted.size() + 1, 0.0);
  for (std::size_t i = 0; i < sorted.size(); ++i) prefix[i + 1] = prefix[i] + sorted[i];
  auto mean_absdiff = [&](double v) {
    const auto it = std::lower_bound(sorted.begin(), sorted.end(), v);
    const std::size_t kk = std::size_t(it - sorted.begin());
    const double below = v * double(kk) - prefix[kk];
    const double above = (prefix[sorted.size()] - prefix[kk]) - v * double(n - int(kk));
    return (below + above) / double(n);
  };
  std::vector<double> h(x.size(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i)
    h[i] = std::abs(x[i] - y) - mean_absdiff(x[i]);
  return sd(h) / std::sqrt(double(n));
}

std::string c7_crps() {
  // closed form at z = 0 against the stated constant, in units of sigma
  for (double sigma : {1.0, 2.5, 0.2}) {
    const double closed = crps_normal(0.0, sigma, 0.0, CrpsMode::closed);
    EXPECT(std::abs(closed / sigma - 0.23370) <= 1e-4, "z=0 constant %.6f", closed / sigma);
  }
  // 10^6-draw oracle
  {
    Rng rng(987654);
    const int n = 1000000;
    std::vector<double> x(std::size_t(n), 0.0);
    for (auto& v : x) v = rng.normal();
    double term1 = 0;
    for (double v : x) term1 += std::abs(v);
    term1 /= n;
    std::sort(x.begin(), x.end());
    double pair_sum = 0;
    for (int i = 0; i < n; ++i) pair_sum += x[std::size_t(i)] * (2.0 * i - (n - 1.0));
    const double oracle = term1 - 2.0 * pair_sum / (2.0 * double(n) * double(n));
    EXPECT(std::abs(oracle - 0.23370) < 2e-3, "oracle %.5f", oracle);
    const double closed = crps_normal(0.0, 1.0, 0.0, CrpsMode::closed);
    EXPECT(std::abs(closed - oracle) < 1e-3, "closed %.5f vs oracle %.5f", closed, oracle);
  }
  // simulate mode vs closed form on 100 random cases within 3 MC standard errors
  Rng rng(808);
  int outside = 0;
  double worst = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const double mu = rng.uniform(-5.0, 5.0);
    const double sigma = rng.uniform(0.1, 3.0);
    const double y = mu + sigma * rng.uniform(-3.0, 3.0);
    const std::uint64_t seed = 70000 + std::uint64_t(trial);
    const double sim = crps_normal(mu, sigma, y, CrpsMode::simulate, seed, 1000);
    const double closed = crps_normal(mu, sigma, y, CrpsMode::closed);
    const double se = crps_mc_se(mu, sigma, y, seed, 1000);
    worst = std::max(worst, std::abs(sim - closed) / se);
    if (std::abs(sim - closed) > 3 * se) ++outside;
  }
  EXPECT(outside == 0, "%d of 100 cases beyond 3 MC standard errors", outside);
  return fmt("z=0 constant ok; 100 simulate-vs-closed cases, worst %.2f SE", worst);
}

// ---------------------------------------------------------------------------
// C8: Diebold-Mariano exactness

std::string c8_dm() {
  std::vector<double> e(std::size_t(72), 0.0);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::sin(double(i) * 0.37);
  const auto same = dm_test(e, e, LossKind::squared);
  EXPECT(same.statistic == 0.0 && same.p_value == 0.5, "identical losses: stat %.2e p %.3f",
         same.statistic, same.p_value);

  // Harvey factor at h=1 against a from-scratch uncorrected statistic
  Rng rng(31);
  const int n = 72;
  std::vector<double> em, eb;
  for (int i = 0; i < n; ++i) {
    em.push_back(rng.normal());
    eb.push_back(rng.normal());
  }
  std::vector<double> d(std::size_t(n), 0.0);
  for (int i = 0; i < n; ++i)
    d[std::size_t(i)] = em[std::size_t(i)] * em[std::size_t(i)] -
                        eb[std::size_t(i)] * eb[std::size_t(i)];
  double dbar = 0;
  for (double v : d) dbar += v;
  dbar /= n;
  double g0 = 0;
  for (double v : d) g0 += (v - dbar) * (v - dbar);
  g0 /= n;
  const double uncorrected = dbar / std::sqrt(g0 / n);
  const auto r = dm_test(em, eb, LossKind::squared, 1);
  const double implied_factor = r.statistic / uncorrected;
  const double want = std::sqrt((n - 1.0) / double(n));
  EXPECT(std::abs(implied_factor - want) <= 4 * std::numeric_limits<double>::epsilon(),
         "harvey factor %.17g vs %.17g", implied_factor, want);

  // dominated-loss fixture rejects at 5%
  std::vector<double> em2, eb2;
  Rng rng2(32);
  for (int i = 0; i < 72; ++i) {
    eb2.push_back(rng2.normal());
    em2.push_back(0.5 * eb2.back());
  }
  const auto dom = dm_test(em2, eb2, LossKind::squared);
  EXPECT(dom.p_value < 0.05, "dominated fixture p %.4f", dom.p_value);
  return fmt("exact null, harvey factor to machine precision, dominance p %.1e",
             dom.p_value);
}

// ---------------------------------------------------------------------------
// C9: fluctuation test behavior

std::string c9_fluctuation() {
  {
    std::vector<double> d(std::size_t(60), 0.0);
    const auto path = gr_fluctuation(d, 0.1);
    for (std::size_t i = 0; i < path.klass.size(); ++i) {
      EXPECT(path.statistic[i] == 0.0, "nonzero statistic on zero differential");
      EXPECT(path.klass[i] == WindowClass::inconclusive, "classified window on zeros");
    }
  }
  {
    Rng rng(41);
    std::vector<double> d(std::size_t(100), 0.0);
    for (auto& v : d) v = 0.05 * rng.normal();
    for (int t = 60; t < 70; ++t) d[std::size_t(t)] = -3.0;
    const auto path = gr_fluctuation(d, 0.1);
    int flagged = 0;
    for (std::size_t i = 0; i < path.klass.size(); ++i) {
      if (path.klass[i] == WindowClass::outperform) {
        ++flagged;
        EXPECT(path.center[i] >= 55 && path.center[i] <= 74,
               "outperform window centered at %d", path.center[i]);
      }
      EXPECT(path.klass[i] != WindowClass::underperform, "spurious underperform window");
    }
    EXPECT(flagged > 0, "planted regime not detected");

    std::vector<double> neg = d;
    for (auto& v : neg) v = -v;
    const auto mirror = gr_fluctuation(neg, 0.1);
    for (std::size_t i = 0; i < path.klass.size(); ++i) {
      EXPECT(path.statistic[i] == -mirror.statistic[i], "statistics not odd-symmetric");
      const auto want = path.klass[i] == WindowClass::outperform
                            ? WindowClass::underperform
                        : path.klass[i] == WindowClass::underperform
                            ? WindowClass::outperform
                            : WindowClass::inconclusive;
      EXPECT(mirror.klass[i] == want, "classification not mirrored");
    }
  }
  return "zero, planted-regime, and sign-mirroring behavior hold";
}

// ---------------------------------------------------------------------------
// C10: no look-ahead across the full synthetic run

class GuardedSource final : public DailySource {
 public:
  GuardedSource(const DailySource& inner, Date limit) : inner_(&inner), limit_(limit) {}
  void window(Date end, int len, std::span<double> out) const override {
    if (end > limit_) ++violations_;
    ++reads_;
    inner_->window(end, len, out);
  }
  Date first_date() const override { return inner_->first_date(); }
  Date last_date() const override { return inner_->last_date(); }
  long violations() const { return violations_; }
  long reads() const { return reads_; }

 private:
  const DailySource* inner_;
  Date limit_;
  mutable long violations_ = 0;
  mutable long reads_ = 0;
};

std::string c10_no_lookahead() {
  EXPECT(g_c6_ready, "planted-signal run unavailable (C6 failed)");
  const RunConfig& cfg = g_c6_config;
  const MonthlySeries y = read_monthly_csv(cfg.targets[0].path);

  // one representative spec per cutoff, drawn from across the grid
  const char* specs[] = {"com_30_0.3_0_1", "com_90_0.3_0_0", "com_60_0.1_1_1",
                         "com_365_0.7_1_1", "sub_60"};
  const int cutoffs[] = {0, 7, 14, 21, 28};
  long total_reads = 0;

  for (int c = 0; c < 5; ++c) {
    const DailySeries series =
        read_daily_csv(g_c6_out / "signals" / "inflation" / (std::string(specs[c]) + ".csv"));
    SeriesSource src(series);
    for (MonthIndex t = cfg.eval_start; t <= cfg.eval_end; ++t) {
      GuardedSource guard(src, anchor_day(t, cutoffs[c]));
      SampleConfig one{cfg.estimation_start, t, t};
      const auto recs = nowcast_recursive(y, guard, "t", specs[c], cutoffs[c], one, cfg.midas);
      EXPECT(recs.size() == 1 && !recs[0].fallback, "month %s did not fit",
             format_month(t).c_str());
      EXPECT(guard.violations() == 0, "%ld reads beyond the cutoff at %s (cutoff %d)",
             guard.violations(), format_month(t).c_str(), cutoffs[c]);
      total_reads += guard.reads();
    }
  }
  return fmt("%ld window reads across cutoffs {0,7,14,21,28}, zero beyond the anchor",
             total_reads);
}

// ---------------------------------------------------------------------------
// C11: ingestion throughput (soft target)

std::string c11_throughput(const fs::path& work) {
  const fs::path dump = work / "throughput.ndjson";
  const long n_lines = 1000000;
  {
    std::ofstream out(dump, std::ios::binary);
    Rng rng(606);
    const char* fillers[] = {"markets steady today", "weekend thread",
                             "price outlook for energy", "champions league recap",
                             "inflation data released", "new phone reviews"};
    std::string buf;
    buf.reserve(1 << 20);
    for (long i = 0; i < n_lines; ++i) {
      buf += R"({"id":"s)";
      buf += std::to_string(i);
      buf += R"(","created_utc":)";
      buf += std::to_string(1600000000 + i);
      buf += R"(,"title":")";
      buf += fillers[rng.below(6)];
      buf += R"( item )";
      buf += std::to_string(i % 977);
      buf += R"(","score":)";
      buf += std::to_string(int(rng.below(40)) - 5);
      buf += "}\n";
      if (buf.size() > (1 << 20) - 256) {
        out << buf;
        buf.clear();
      }
    }
    out << buf;
  }

  const auto t0 = std::chrono::steady_clock::now();
  std::ifstream in(dump, std::ios::binary);
  ParseStats stats;
  long kept = 0;
  const Concept& topic = concept_inflation();
  parse_dump(in, PostKind::submission,
             [&](Post&& p) {
               if (matches_concept(p.text, topic)) ++kept;
             },
             stats);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  fs::remove(dump);

  EXPECT(stats.parsed == std::uint64_t(n_lines), "parsed %llu of %ld lines",
         (unsigned long long)stats.parsed, n_lines);
  EXPECT(kept > 0, "filter kept nothing");
  const double rate = double(n_lines) / secs;
  if (rate < 50000.0)
    return fmt("%.0f lines/s -- BELOW the 50k soft target (regression-tracked, "
               "not hard-failing)",
               rate);
  return fmt("%.0f lines/s over 1M lines (soft target 50k/s), %ld kept", rate, kept);
}

// ---------------------------------------------------------------------------
// C12: grid shape and winner membership

std::string c12_grid() {
  const auto grid = spec_grid();
  int com = 0, sub = 0;
  for (const auto& s : grid)
    (s.comment_set == CommentSetChoice::submissions_only ? sub : com)++;
  EXPECT(com == 120, "%d comment specs (want 120)", com);
  EXPECT(sub == 6, "%d submissions-only specs (want 6)", sub);
  for (const char* name : {"com_60_0.3_0_1", "com_90_0.3_0_0", "com_365_0.7_1_1",
                           "com_365_0.1_0_0", "com_60_0.9_1_1"}) {
    const auto spec = SignalSpec::parse(name);
    EXPECT(spec.has_value(), "'%s' does not parse", name);
    EXPECT(spec->to_string() == name, "'%s' does not round-trip", name);
    EXPECT(std::count(grid.begin(), grid.end(), *spec) == 1,
           "'%s' is not a default grid member", name);
  }
  return "120 + 6 specs; every published winner string is a grid member";
}

}  // namespace

int main() {
  const fs::path work = fs::temp_directory_path() / "rednow_acceptance";
  fs::remove_all(work);
  fs::create_directories(work);

  Harness h;
  h.run("C1", "voting oracle equivalence (J<=4, exact)", c1_voting_oracle);
  h.run("C2", "re-classification audit arithmetic", c2_audit_arithmetic);
  h.run("C3", "Almon weight positivity and unit sum", c3_almon);
  h.run("C4", "MIDAS noiseless self-consistency", c4_midas_recovery);
  h.run("C5", "nested benchmark, no spurious gains", c5_nested_benchmark);
  h.run("C6", "planted-signal end-to-end", [&] { return c6_planted_signal(work); });
  h.run("C7", "CRPS simulate/closed cross-check", c7_crps);
  h.run("C8", "Diebold-Mariano exactness", c8_dm);
  h.run("C9", "fluctuation-test behavior", c9_fluctuation);
  h.run("C10", "no look-ahead past information cutoffs", c10_no_lookahead);
  h.run("C11", "ingestion throughput", [&] { return c11_throughput(work); });
  h.run("C12", "indicator grid shape", c12_grid);

  std::printf("%d of 12 criteria passed\n", 12 - h.failures);
  return h.failures;
}

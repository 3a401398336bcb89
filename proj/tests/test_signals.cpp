#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "core/errors.hpp"
#include "core/rng.hpp"
#include "core/signals.hpp"

using namespace rednow;
using L = SignalLabel;

namespace {

const Date kD0 = date_ymd(2020, 1, 1);

std::vector<int> all_label_values() { return {-1, 0, 1}; }

// exact rational voting oracle: L = num/den with integer parts
struct Rational {
  long num = 0;
  long den = 1;
};

Rational oracle_vote(int s, const std::vector<int>& comments,
                     const std::vector<int>& weights, bool use_weights) {
  if (comments.empty()) return {s, 1};
  long num = s, den = 1;
  for (std::size_t j = 0; j < comments.size(); ++j) {
    const long w = use_weights ? std::max(1, weights[j]) : 1;
    num += w * comments[j];
    den += w;
  }
  return {num, den};
}

// exact threshold compare for tau = tenths/10
int oracle_relabel(Rational r, int tau_tenths) {
  // L > tau  <=>  10*num > tau_tenths*den  (den > 0)
  if (10 * r.num > long(tau_tenths) * r.den) return 1;
  if (10 * r.num < -long(tau_tenths) * r.den) return -1;
  return 0;
}

}  // namespace

// --- daily sums --------------------------------------------------------------

TEST_CASE("daily sum adds label values per day, zero where empty") {
  std::vector<DatedLabel> items = {
      {kD0, L::up}, {kD0, L::up}, {kD0, L::down},          // +1
      {kD0 + std::chrono::days{2}, L::neutral},            // 0
      {kD0 + std::chrono::days{2}, L::neutral},
  };
  auto s = daily_sum(items, kD0, kD0 + std::chrono::days{3});
  REQUIRE(s.values.size() == 4);
  CHECK(s.values[0] == 1.0);
  CHECK(s.values[1] == 0.0);  // no submissions that day
  CHECK(s.values[2] == 0.0);  // neutrals sum to zero
  CHECK(s.values[3] == 0.0);
}

TEST_CASE("daily sum rejects items outside the range") {
  std::vector<DatedLabel> items = {{kD0 + std::chrono::days{9}, L::up}};
  CHECK_THROWS_AS(daily_sum(items, kD0, kD0 + std::chrono::days{3}), ValidationError);
}

// --- voting ------------------------------------------------------------------

TEST_CASE("vote score spec examples") {
  CHECK(vote_score(L::up, {}, {}, false) == 1.0);  // no comments: unchanged

  std::vector<L> c1 = {L::down, L::neutral, L::up, L::up};
  std::vector<int> w1 = {0, 0, 0, 0};
  CHECK(vote_score(L::up, c1, w1, false) == doctest::Approx(0.4));

  std::vector<L> c2 = {L::down, L::up};
  std::vector<int> w2 = {9, 1};
  CHECK(vote_score(L::up, c2, w2, true) == doctest::Approx(-7.0 / 11.0));
}

TEST_CASE("threshold relabel boundaries are inclusive to neutral") {
  CHECK(threshold_relabel(0.4, 0.3) == L::up);
  CHECK(threshold_relabel(0.3, 0.3) == L::neutral);
  CHECK(threshold_relabel(-0.3, 0.3) == L::neutral);
  CHECK(threshold_relabel(-0.4, 0.3) == L::down);
}

TEST_CASE("voting equals the exact rational oracle for J <= 4 and the tau grid") {
  // unweighted: all label combinations
  const int taus[] = {1, 3, 5, 7, 9};  // tenths
  const double tau_real[] = {0.1, 0.3, 0.5, 0.7, 0.9};
  long checked = 0;
  for (int s : all_label_values()) {
    for (int J = 0; J <= 4; ++J) {
      std::vector<int> combo(std::size_t(J), -1);
      for (;;) {
        std::vector<L> labels;
        for (int v : combo) labels.push_back(label_from_value(v));
        std::vector<int> unit(std::size_t(J), 1);
        const double got = vote_score(label_from_value(s), labels, unit, false);
        const Rational want = oracle_vote(s, combo, unit, false);
        CHECK(got == double(want.num) / double(want.den));
        for (int t = 0; t < 5; ++t) {
          const int relabeled = label_value(threshold_relabel(got, tau_real[t]));
          CHECK(relabeled == oracle_relabel(want, taus[t]));
          ++checked;
        }
        // next combination
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
  CHECK(checked == 3 * (1 + 3 + 9 + 27 + 81) * 5);
}

TEST_CASE("weighted voting equals the rational oracle over a weight grid") {
  const int weight_pool[] = {-3, 0, 1, 2, 9};
  Rng rng(2024);
  for (int trial = 0; trial < 4000; ++trial) {
    const int s = int(rng.below(3)) - 1;
    const int J = int(rng.below(4));
    std::vector<int> cvals, wvals;
    std::vector<L> labels;
    for (int j = 0; j < J; ++j) {
      cvals.push_back(int(rng.below(3)) - 1);
      wvals.push_back(weight_pool[rng.below(std::size(weight_pool))]);
      labels.push_back(label_from_value(cvals.back()));
    }
    const double got = vote_score(label_from_value(s), labels, wvals, true);
    const Rational want = oracle_vote(s, cvals, wvals, true);
    CHECK(got == double(want.num) / double(want.den));
    for (int tau_tenths : {1, 3, 5, 7, 9}) {
      CHECK(label_value(threshold_relabel(got, tau_tenths / 10.0)) ==
            oracle_relabel(want, tau_tenths));
    }
  }
}

TEST_CASE("tau = 0 relabel equals the sign of the plain mean (J <= 4 exhaustive)") {
  for (int s : all_label_values()) {
    for (int J = 0; J <= 4; ++J) {
      std::vector<int> combo(std::size_t(J), -1);
      for (;;) {
        std::vector<L> labels;
        int sum = s;
        for (int v : combo) {
          labels.push_back(label_from_value(v));
          sum += v;
        }
        std::vector<int> unit(std::size_t(J), 1);
        const double score = vote_score(label_from_value(s), labels, unit, false);
        const int want = sum > 0 ? 1 : sum < 0 ? -1 : 0;
        CHECK(label_value(threshold_relabel(score, 0.0)) == want);
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
}

TEST_CASE("raising tau never converts neutral relabels to a direction") {
  Rng rng(5);
  for (int trial = 0; trial < 2000; ++trial) {
    const double score = rng.uniform(-1.0, 1.0);
    double tau = rng.uniform01() * 0.9;
    const L lo = threshold_relabel(score, tau);
    const L hi = threshold_relabel(score, tau + rng.uniform01() * (0.99 - tau));
    if (lo == L::neutral) CHECK(hi == L::neutral);
    if (hi != L::neutral) CHECK(hi == lo);
  }
}

TEST_CASE("appending a neutral comment dilutes toward zero") {
  Rng rng(6);
  for (int trial = 0; trial < 500; ++trial) {
    const int s = int(rng.below(3)) - 1;
    const int J = 1 + int(rng.below(4));
    std::vector<L> labels;
    for (int j = 0; j < J; ++j) labels.push_back(label_from_value(int(rng.below(3)) - 1));
    std::vector<int> unit(labels.size(), 1);
    const double before = vote_score(label_from_value(s), labels, unit, false);
    labels.push_back(L::neutral);
    unit.push_back(1);
    const double after = vote_score(label_from_value(s), labels, unit, false);
    if (before != 0.0) {
      CHECK(std::abs(after) < std::abs(before));
      CHECK(after * before >= 0.0);  // same side of zero
    } else {
      CHECK(after == 0.0);
    }
  }
}

TEST_CASE("negating every label negates the score and swaps UP/DOWN") {
  Rng rng(7);
  for (int trial = 0; trial < 1000; ++trial) {
    const int s = int(rng.below(3)) - 1;
    const int J = int(rng.below(5));
    std::vector<L> labels, flipped;
    std::vector<int> w;
    for (int j = 0; j < J; ++j) {
      const int v = int(rng.below(3)) - 1;
      labels.push_back(label_from_value(v));
      flipped.push_back(label_from_value(-v));
      w.push_back(int(rng.below(12)) - 2);
    }
    for (bool weighted : {false, true}) {
      const double a = vote_score(label_from_value(s), labels, w, weighted);
      const double b = vote_score(label_from_value(-s), flipped, w, weighted);
      CHECK(a == doctest::Approx(-b));
      const double tau = 0.1 + 0.2 * double(rng.below(5));
      CHECK(label_value(threshold_relabel(a, tau)) ==
            -label_value(threshold_relabel(b, tau)));
    }
  }
}

// --- rebuild + smoothing -------------------------------------------------------

TEST_CASE("rebuild equals daily_sum when no label changed; flips move by 2") {
  std::vector<DatedLabel> original = {{kD0, L::up}, {kD0, L::down},
                                      {kD0 + std::chrono::days{1}, L::up}};
  auto base = daily_sum(original, kD0, kD0 + std::chrono::days{1});
  auto rebuilt = rebuild_daily(original, kD0, kD0 + std::chrono::days{1});
  CHECK(base.values == rebuilt.values);

  auto flipped = original;
  flipped[2].label = L::down;  // UP -> DOWN on day 1
  auto after = rebuild_daily(flipped, kD0, kD0 + std::chrono::days{1});
  CHECK(after.values[1] == base.values[1] - 2.0);
}

TEST_CASE("full voting pipeline matches a from-scratch recomputation") {
  Rng rng(11);
  std::vector<SubmissionThread> threads;
  for (int i = 0; i < 10; ++i) {
    SubmissionThread th;
    th.id = "s" + std::to_string(i);
    th.day = kD0 + std::chrono::days{long(rng.below(5))};
    th.submission = label_from_value(int(rng.below(3)) - 1);
    const int J = int(rng.below(5));
    for (int j = 0; j < J; ++j) {
      th.first_level.push_back(label_from_value(int(rng.below(3)) - 1));
      th.first_level_scores.push_back(int(rng.below(10)) - 2);
    }
    threads.push_back(std::move(th));
  }

  SignalSpec spec{CommentSetChoice::first_level, true, 0.3, 2};
  const Date end = kD0 + std::chrono::days{4};
  auto got = build_series(threads, spec, kD0, end);

  // naive recomputation of the voting + relabel + sum + smoothing chain
  std::vector<double> raw(5, 0.0);
  for (const auto& th : threads) {
    long num = label_value(th.submission), den = 1;
    for (std::size_t j = 0; j < th.first_level.size(); ++j) {
      const long w = std::max(1, th.first_level_scores[j]);
      num += w * label_value(th.first_level[j]);
      den += w;
    }
    const double score = double(num) / double(den);
    int relab = 0;
    if (score > 0.3) relab = 1;
    else if (score < -0.3) relab = -1;
    raw[std::size_t((th.day - kD0).count())] += relab;
  }
  for (std::size_t t = 0; t < raw.size(); ++t) {
    const std::size_t lo = t >= 1 ? t - 1 : 0;
    double mean = 0;
    for (std::size_t u = lo; u <= t; ++u) mean += raw[u];
    mean /= double(t - lo + 1);
    CHECK(got.values[t] == doctest::Approx(mean).epsilon(1e-12));
  }
}

TEST_CASE("ma smoothing: identity, constants, and truncated head") {
  DailySeries s;
  s.start = kD0;
  s.values = {0.0, 3.0, 3.0};
  auto w1 = ma_smooth(s, 1);
  CHECK(w1.values == s.values);

  auto w3 = ma_smooth(s, 3);
  CHECK(w3.values[0] == doctest::Approx(0.0));
  CHECK(w3.values[1] == doctest::Approx(1.5));
  CHECK(w3.values[2] == doctest::Approx(2.0));

  DailySeries c;
  c.start = kD0;
  c.values.assign(50, 2.5);
  for (int w : {1, 7, 30, 49, 120}) {
    auto sm = ma_smooth(c, w);
    for (double v : sm.values) CHECK(v == doctest::Approx(2.5));
  }
}

TEST_CASE("ma smoothing is linear per day") {
  Rng rng(13);
  DailySeries x, y;
  x.start = y.start = kD0;
  for (int i = 0; i < 200; ++i) {
    x.values.push_back(rng.normal());
    y.values.push_back(rng.normal());
  }
  const double a = 2.5, b = -1.25;
  DailySeries mix;
  mix.start = kD0;
  for (std::size_t i = 0; i < x.values.size(); ++i)
    mix.values.push_back(a * x.values[i] + b * y.values[i]);

  auto sx = ma_smooth(x, 30), sy = ma_smooth(y, 30), sm = ma_smooth(mix, 30);
  for (std::size_t i = 0; i < sm.values.size(); ++i)
    CHECK(sm.values[i] ==
          doctest::Approx(a * sx.values[i] + b * sy.values[i]).epsilon(1e-10));
}

// --- spec grid -----------------------------------------------------------------

TEST_CASE("default grid is 120 comment specs plus 6 submissions-only specs") {
  auto grid = spec_grid();
  int com = 0, sub = 0;
  for (const auto& s : grid)
    (s.comment_set == CommentSetChoice::submissions_only ? sub : com)++;
  CHECK(com == 120);
  CHECK(sub == 6);
}

TEST_CASE("grid with one value per dimension is a single spec") {
  GridConfig cfg;
  cfg.thresholds = {0.3};
  cfg.windows = {60};
  cfg.keyword_all = false;
  cfg.weighted = false;
  cfg.submissions_only = false;
  auto grid = spec_grid(cfg);
  REQUIRE(grid.size() == 1);
  CHECK(grid[0].to_string() == "com_60_0.3_0_1");
}

TEST_CASE("named winning specs parse to default grid members") {
  auto grid = spec_grid();
  for (const char* name : {"com_60_0.3_0_1", "com_90_0.3_0_0", "com_365_0.7_1_1",
                           "com_365_0.1_0_0", "com_60_0.9_1_1"}) {
    CAPTURE(name);
    auto spec = SignalSpec::parse(name);
    REQUIRE(spec.has_value());
    CHECK(spec->to_string() == name);
    CHECK(std::count(grid.begin(), grid.end(), *spec) == 1);
  }
}

TEST_CASE("every grid spec string round-trips") {
  for (const auto& spec : spec_grid()) {
    auto parsed = SignalSpec::parse(spec.to_string());
    REQUIRE(parsed.has_value());
    CHECK(*parsed == spec);
  }
}

TEST_CASE("malformed spec strings are rejected") {
  CHECK_FALSE(SignalSpec::parse(""));
  CHECK_FALSE(SignalSpec::parse("com_60_0.3_0"));
  CHECK_FALSE(SignalSpec::parse("com_60_1.3_0_1"));
  CHECK_FALSE(SignalSpec::parse("com_0_0.3_0_1"));
  CHECK_FALSE(SignalSpec::parse("sub_"));
  CHECK_FALSE(SignalSpec::parse("xyz_60"));
  CHECK_FALSE(SignalSpec::parse("com_60_0.3_2_1"));
}

// --- audit ----------------------------------------------------------------------

namespace {

// builds (original, relabeled) pairs realizing given off-diagonal counts plus
// diagonal padding up to `total`
void realize_transitions(const std::array<std::array<int, 3>, 3>& counts, int total,
                         std::vector<L>& original, std::vector<L>& relabeled) {
  for (int from = 0; from < 3; ++from)
    for (int to = 0; to < 3; ++to)
      for (int i = 0; i < counts[std::size_t(from)][std::size_t(to)]; ++i) {
        original.push_back(label_from_value(from - 1));
        relabeled.push_back(label_from_value(to - 1));
      }
  while (int(original.size()) < total) {
    original.push_back(L::neutral);
    relabeled.push_back(L::neutral);
  }
}

}  // namespace

TEST_CASE("audit reproduces the published inflation transition arithmetic") {
  // rows: from -1, 0, +1; published counts for the winning inflation spec
  std::array<std::array<int, 3>, 3> counts{};
  counts[0][1] = 154;  // -1 -> 0
  counts[0][2] = 8;    // -1 -> 1
  counts[1][0] = 43;   //  0 -> -1
  counts[1][2] = 196;  //  0 -> 1
  counts[2][0] = 2;    //  1 -> -1
  counts[2][1] = 124;  //  1 -> 0
  std::vector<L> original, relabeled;
  realize_transitions(counts, 4825, original, relabeled);

  const auto audit = reclassification_audit(original, relabeled);
  CHECK(audit.total_items == 4825);
  CHECK(audit.total_changed == 527);
  CHECK(audit.share == doctest::Approx(0.1092).epsilon(1e-3));
  CHECK(audit.upgrades == 366);
  CHECK(audit.downgrades == 171);
  CHECK(audit.ratio == doctest::Approx(2.14).epsilon(0.005));
}

TEST_CASE("audit reproduces the published unemployment transition arithmetic") {
  std::array<std::array<int, 3>, 3> counts{};
  counts[0][1] = 111;
  counts[0][2] = 2;
  counts[1][0] = 58;
  counts[1][2] = 73;
  counts[2][0] = 0;
  counts[2][1] = 47;
  std::vector<L> original, relabeled;
  realize_transitions(counts, 1934, original, relabeled);

  const auto audit = reclassification_audit(original, relabeled);
  CHECK(audit.total_changed == 291);
  CHECK(audit.share == doctest::Approx(0.1505).epsilon(1e-3));
  CHECK(audit.upgrades == 188);
  CHECK(audit.downgrades == 105);
  CHECK(audit.ratio == doctest::Approx(1.79).epsilon(0.01));
}

TEST_CASE("audit with no changes has a NaN ratio and zero matrix") {
  std::vector<L> labels(20, L::up);
  const auto audit = reclassification_audit(labels, labels);
  CHECK(audit.total_changed == 0);
  CHECK(std::isnan(audit.ratio));
  for (int from = 0; from < 3; ++from)
    for (int to = 0; to < 3; ++to)
      if (from != to) CHECK(audit.transitions[from][to] == 0);
}

TEST_CASE("audit emits per-month fractions") {
  std::vector<L> original = {L::up, L::up, L::down, L::down};
  std::vector<L> relabeled = {L::up, L::down, L::down, L::up};
  std::vector<MonthIndex> months = {month_index(2020, 1), month_index(2020, 1),
                                    month_index(2020, 2), month_index(2020, 2)};
  const auto audit = reclassification_audit(original, relabeled, months);
  REQUIRE(audit.monthly_fraction.size() == 2);
  CHECK(audit.monthly_fraction[0].second == doctest::Approx(0.5));
  CHECK(audit.monthly_fraction[1].second == doctest::Approx(0.5));

  std::vector<MonthIndex> short_months = {month_index(2020, 1)};
  CHECK_THROWS_AS(reclassification_audit(original, relabeled, short_months),
                  ValidationError);
}

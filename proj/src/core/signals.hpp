#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "core/label.hpp"
#include "core/series.hpp"

namespace rednow {

enum class CommentSetChoice { submissions_only, first_level, keyword_all };

// One point of the indicator grid. Encoded as `com_{W}_{tau}_{scoring}_{firstlevel}`
// for comment specs (scoring: 1 = net-vote weighting, firstlevel: 1 = direct
// replies, 0 = keyword-filtered all-depth comments) and `sub_{W}` for
// submissions-only specs.
struct SignalSpec {
  CommentSetChoice comment_set = CommentSetChoice::submissions_only;
  bool vote_weighting = false;
  double threshold = 0.0;  // tau; ignored for submissions_only
  int ma_window = 1;       // W, days

  std::string to_string() const;
  static std::optional<SignalSpec> parse(std::string_view s);
  bool operator==(const SignalSpec&) const = default;
};

struct GridConfig {
  std::vector<double> thresholds{0.1, 0.3, 0.5, 0.7, 0.9};
  std::vector<int> windows{30, 60, 90, 120, 180, 365};
  bool first_level = true;
  bool keyword_all = true;
  bool unweighted = true;
  bool weighted = true;
  bool submissions_only = true;  // adds one sub_{W} spec per window
};

// Default grid: 2 comment sets x 2 weighting choices x 5 thresholds x
// 6 windows = 120 comment specs, plus 6 submissions-only specs.
std::vector<SignalSpec> spec_grid(const GridConfig& cfg = {});

struct DatedLabel {
  Date day{};
  SignalLabel label = SignalLabel::neutral;
};

// Daily sum of label values over [start, end]; days without items are 0.
DailySeries daily_sum(std::span<const DatedLabel> items, Date start, Date end);

// Comment-voting score in [-1,1]. Unweighted: (S + sum C_j) / (J+1).
// Weighted: comment j votes with weight max(1, net score), the submission
// with weight 1. No comments -> the submission signal unchanged.
double vote_score(SignalLabel submission, std::span<const SignalLabel> comments,
                  std::span<const int> net_scores, bool use_weights);

// UP if L > tau, DOWN if L < -tau, NEUTRAL on [-tau, tau] (inclusive).
SignalLabel threshold_relabel(double score, double tau);

DailySeries rebuild_daily(std::span<const DatedLabel> relabeled, Date start, Date end);

// Backward-looking moving average over [t-W+1, t]; the head truncates to
// the available days.
DailySeries ma_smooth(const DailySeries& s, int window);

// One labeled submission with its comment-set labels and net vote scores.
struct SubmissionThread {
  std::string id;
  Date day{};
  SignalLabel submission = SignalLabel::neutral;
  std::vector<SignalLabel> first_level;
  std::vector<int> first_level_scores;
  std::vector<SignalLabel> keyword_all;
  std::vector<int> keyword_all_scores;
};

// Voting + threshold relabel across all threads for one (set, weighting, tau).
std::vector<SignalLabel> relabel_threads(std::span<const SubmissionThread> threads,
                                         CommentSetChoice set, bool weighted, double tau);

// Full construction for one spec: vote, relabel, daily sum, smooth.
DailySeries build_series(std::span<const SubmissionThread> threads, const SignalSpec& spec,
                         Date start, Date end);

struct AuditResult {
  std::array<std::array<std::int64_t, 3>, 3> transitions{};  // [from][to]
  std::int64_t total_items = 0;
  std::int64_t total_changed = 0;
  double share = 0;  // changed / items
  std::int64_t upgrades = 0;
  std::int64_t downgrades = 0;
  double ratio = 0;  // upgrades/downgrades; NaN when downgrades == 0
  std::vector<std::pair<MonthIndex, double>> monthly_fraction;
};

// Off-diagonal transition counts between the original and relabeled signals.
// Upgrades: (-1 -> 0) + (0 -> +1) + 2 * (-1 -> +1); downgrades symmetric.
// `months`, when non-empty, must align with the label sequences and yields
// per-calendar-month re-classification fractions.
AuditResult reclassification_audit(std::span<const SignalLabel> original,
                                   std::span<const SignalLabel> relabeled,
                                   std::span<const MonthIndex> months = {});

}  // namespace rednow

#include "core/signals.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>

#include "core/csvio.hpp"
#include "core/errors.hpp"

namespace rednow {

std::string SignalSpec::to_string() const {
  if (comment_set == CommentSetChoice::submissions_only)
    return "sub_" + std::to_string(ma_window);
  return "com_" + std::to_string(ma_window) + "_" + format_double(threshold) + "_" +
         (vote_weighting ? "1" : "0") + "_" +
         (comment_set == CommentSetChoice::first_level ? "1" : "0");
}

namespace {

std::vector<std::string_view> split_spec(std::string_view s) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (true) {
    std::size_t us = s.find('_', pos);
    if (us == std::string_view::npos) {
      parts.push_back(s.substr(pos));
      break;
    }
    parts.push_back(s.substr(pos, us - pos));
    pos = us + 1;
  }
  return parts;
}

std::optional<int> to_int(std::string_view s) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<double> to_real(std::string_view s) {
  double v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

std::optional<SignalSpec> SignalSpec::parse(std::string_view s) {
  auto parts = split_spec(s);
  SignalSpec spec;
  if (parts.size() == 2 && parts[0] == "sub") {
    auto w = to_int(parts[1]);
    if (!w || *w < 1) return std::nullopt;
    spec.comment_set = CommentSetChoice::submissions_only;
    spec.ma_window = *w;
    return spec;
  }
  if (parts.size() != 5 || parts[0] != "com") return std::nullopt;
  auto w = to_int(parts[1]);
  auto tau = to_real(parts[2]);
  if (!w || *w < 1 || !tau || *tau < 0 || *tau >= 1) return std::nullopt;
  if (parts[3] != "0" && parts[3] != "1") return std::nullopt;
  if (parts[4] != "0" && parts[4] != "1") return std::nullopt;
  spec.ma_window = *w;
  spec.threshold = *tau;
  spec.vote_weighting = parts[3] == "1";
  spec.comment_set =
      parts[4] == "1" ? CommentSetChoice::first_level : CommentSetChoice::keyword_all;
  return spec;
}

std::vector<SignalSpec> spec_grid(const GridConfig& cfg) {
  std::vector<SignalSpec> grid;
  std::vector<CommentSetChoice> sets;
  if (cfg.first_level) sets.push_back(CommentSetChoice::first_level);
  if (cfg.keyword_all) sets.push_back(CommentSetChoice::keyword_all);
  std::vector<bool> weighting;
  if (cfg.unweighted) weighting.push_back(false);
  if (cfg.weighted) weighting.push_back(true);

  for (CommentSetChoice set : sets)
    for (bool w : weighting)
      for (double tau : cfg.thresholds)
        for (int win : cfg.windows)
          grid.push_back({set, w, tau, win});

  if (cfg.submissions_only)
    for (int win : cfg.windows)
      grid.push_back({CommentSetChoice::submissions_only, false, 0.0, win});
  return grid;
}

DailySeries daily_sum(std::span<const DatedLabel> items, Date start, Date end) {
  if (end < start) throw ValidationError("daily_sum: end before start");
  DailySeries s;
  s.start = start;
  s.values.assign(std::size_t((end - start).count()) + 1, 0.0);
  for (const DatedLabel& it : items) {
    if (it.day < start || it.day > end)
      throw ValidationError("daily_sum: item dated " + format_date(it.day) +
                            " outside range");
    s.values[std::size_t((it.day - start).count())] += label_value(it.label);
  }
  return s;
}

double vote_score(SignalLabel submission, std::span<const SignalLabel> comments,
                  std::span<const int> net_scores, bool use_weights) {
  const double s = label_value(submission);
  if (comments.empty()) return s;
  if (!use_weights) {
    double sum = s;
    for (SignalLabel c : comments) sum += label_value(c);
    return sum / double(comments.size() + 1);
  }
  if (net_scores.size() != comments.size())
    throw ValidationError("vote_score: net score count does not match comments");
  double num = s;
  double den = 1.0;
  for (std::size_t j = 0; j < comments.size(); ++j) {
    const double w = std::max(1, net_scores[j]);
    num += w * label_value(comments[j]);
    den += w;
  }
  return num / den;
}

SignalLabel threshold_relabel(double score, double tau) {
  if (score > tau) return SignalLabel::up;
  if (score < -tau) return SignalLabel::down;
  return SignalLabel::neutral;
}

DailySeries rebuild_daily(std::span<const DatedLabel> relabeled, Date start, Date end) {
  return daily_sum(relabeled, start, end);
}

DailySeries ma_smooth(const DailySeries& s, int window) {
  if (window < 1) throw ValidationError("ma_smooth: window must be >= 1");
  DailySeries out;
  out.start = s.start;
  out.name = s.name;
  out.values.resize(s.values.size());

  std::vector<double> prefix(s.values.size() + 1, 0.0);
  for (std::size_t i = 0; i < s.values.size(); ++i)
    prefix[i + 1] = prefix[i] + s.values[i];

  for (std::size_t t = 0; t < s.values.size(); ++t) {
    const std::size_t lo = t + 1 >= std::size_t(window) ? t + 1 - std::size_t(window) : 0;
    out.values[t] = (prefix[t + 1] - prefix[lo]) / double(t + 1 - lo);
  }
  return out;
}

std::vector<SignalLabel> relabel_threads(std::span<const SubmissionThread> threads,
                                         CommentSetChoice set, bool weighted, double tau) {
  if (set == CommentSetChoice::submissions_only)
    throw ValidationError("relabel_threads: submissions-only specs do not relabel");
  std::vector<SignalLabel> out;
  out.reserve(threads.size());
  for (const SubmissionThread& th : threads) {
    const auto& comments =
        set == CommentSetChoice::first_level ? th.first_level : th.keyword_all;
    const auto& scores =
        set == CommentSetChoice::first_level ? th.first_level_scores : th.keyword_all_scores;
    const double L = vote_score(th.submission, comments, scores, weighted);
    out.push_back(threshold_relabel(L, tau));
  }
  return out;
}

DailySeries build_series(std::span<const SubmissionThread> threads, const SignalSpec& spec,
                         Date start, Date end) {
  std::vector<DatedLabel> items;
  items.reserve(threads.size());
  if (spec.comment_set == CommentSetChoice::submissions_only) {
    for (const SubmissionThread& th : threads) items.push_back({th.day, th.submission});
  } else {
    auto relabeled =
        relabel_threads(threads, spec.comment_set, spec.vote_weighting, spec.threshold);
    for (std::size_t i = 0; i < threads.size(); ++i)
      items.push_back({threads[i].day, relabeled[i]});
  }
  DailySeries raw = daily_sum(items, start, end);
  DailySeries smoothed = ma_smooth(raw, spec.ma_window);
  smoothed.name = spec.to_string();
  return smoothed;
}

AuditResult reclassification_audit(std::span<const SignalLabel> original,
                                   std::span<const SignalLabel> relabeled,
                                   std::span<const MonthIndex> months) {
  if (original.size() != relabeled.size())
    throw ValidationError("reclassification_audit: label sequences differ in length");
  if (!months.empty() && months.size() != original.size())
    throw ValidationError("reclassification_audit: month column length mismatch");

  AuditResult r;
  r.total_items = std::int64_t(original.size());
  for (std::size_t i = 0; i < original.size(); ++i) {
    ++r.transitions[label_slot(original[i])][label_slot(relabeled[i])];
  }
  for (int from = 0; from < 3; ++from)
    for (int to = 0; to < 3; ++to)
      if (from != to) r.total_changed += r.transitions[from][to];

  // slots: 0 = down(-1), 1 = neutral(0), 2 = up(+1)
  r.upgrades = r.transitions[0][1] + r.transitions[1][2] + 2 * r.transitions[0][2];
  r.downgrades = r.transitions[2][1] + r.transitions[1][0] + 2 * r.transitions[2][0];
  r.share = r.total_items > 0 ? double(r.total_changed) / double(r.total_items) : 0.0;
  r.ratio = r.downgrades > 0 ? double(r.upgrades) / double(r.downgrades)
                             : std::numeric_limits<double>::quiet_NaN();

  if (!months.empty()) {
    std::map<MonthIndex, std::pair<std::int64_t, std::int64_t>> by_month;  // items, changed
    for (std::size_t i = 0; i < original.size(); ++i) {
      auto& [items, changed] = by_month[months[i]];
      ++items;
      if (original[i] != relabeled[i]) ++changed;
    }
    for (const auto& [m, counts] : by_month)
      r.monthly_fraction.emplace_back(m, double(counts.second) / double(counts.first));
  }
  return r;
}

}  // namespace rednow

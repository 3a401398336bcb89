#include "core/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <unordered_map>

#include "core/corpus.hpp"
#include "core/csvio.hpp"
#include "core/dictionary.hpp"
#include "core/errors.hpp"
#include "core/evaluate.hpp"
#include "core/f1.hpp"
#include "core/gateway.hpp"
#include "core/ndjson.hpp"
#include "core/parallel.hpp"
#include "core/rng.hpp"

namespace rednow {

namespace {

namespace fs = std::filesystem;

void require_artifact(const fs::path& p, const char* produced_by) {
  if (!fs::exists(p))
    throw ValidationError("missing artifact " + p.string() + "; run the `" +
                          std::string(produced_by) + "` stage first");
}

std::ifstream open_input(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  if (!f) throw IoError("cannot open " + p.string());
  return f;
}

std::ofstream open_output(const fs::path& p) {
  ensure_parent_dir(p);
  std::ofstream f(p, std::ios::binary);
  if (!f) throw IoError("cannot open for writing: " + p.string());
  return f;
}

fs::path corpus_dir(const RunConfig& cfg, const std::string& topic) {
  return cfg.out / "corpus" / topic;
}

fs::path labels_path(const RunConfig& cfg, const std::string& topic) {
  return cfg.out / "labels" / (topic + ".csv");
}

fs::path signals_dir(const RunConfig& cfg, const std::string& topic) {
  return cfg.out / "signals" / topic;
}

fs::path nowcast_path(const RunConfig& cfg, const std::string& target) {
  return cfg.out / "nowcasts" / (target + ".csv");
}

fs::path metrics_path(const RunConfig& cfg, const std::string& target) {
  return cfg.out / "eval" / (target + "_metrics.csv");
}

const Concept& concept_or_throw(const std::string& name) {
  const Concept* c = find_concept(name);
  if (!c) throw ValidationError("unknown concept '" + name + "'");
  return *c;
}

Dictionary load_dictionary(const RunConfig& cfg) {
  if (cfg.dictionary_path.empty()) return Dictionary::bundled();
  require_artifact(cfg.dictionary_path, "(external dictionary file)");
  return Dictionary::load_csv(cfg.dictionary_path);
}

}  // namespace

// ---------------------------------------------------------------------------
// ingest

void run_ingest(const RunConfig& cfg) {
  cfg.validate();
  if (cfg.dump_submissions.empty() || cfg.dump_comments.empty())
    throw ValidationError("paths.dump_submissions and paths.dump_comments must be set "
                          "(run the `synth` stage to create a synthetic dump)");
  require_artifact(cfg.dump_submissions, "synth");
  require_artifact(cfg.dump_comments, "synth");

  ParseOptions popt{cfg.include_selftext};

  struct ConceptStore {
    const Concept* topic = nullptr;
    std::vector<Post> submissions;
    std::set<std::string> kept_ids;
    std::vector<Post> comments;  // all comments of kept submissions
  };
  std::vector<ConceptStore> stores;
  for (const auto& name : cfg.concepts) stores.push_back({&concept_or_throw(name)});

  ParseStats sub_stats;
  {
    auto in = open_input(cfg.dump_submissions);
    parse_dump(in, PostKind::submission,
               [&](Post&& p) {
                 for (auto& st : stores)
                   if (matches_concept(p.text, *st.topic)) {
                     st.kept_ids.insert(p.id);
                     st.submissions.push_back(p);
                   }
               },
               sub_stats, popt);
  }

  ParseStats com_stats;
  {
    auto in = open_input(cfg.dump_comments);
    parse_dump(in, PostKind::comment,
               [&](Post&& p) {
                 for (auto& st : stores)
                   if (st.kept_ids.count(p.root_id)) st.comments.push_back(p);
               },
               com_stats, popt);
  }

  std::vector<std::string> count_rows;
  for (auto& st : stores) {
    // group comments by submission, rebuild trees, compute both comment sets
    std::unordered_map<std::string, std::vector<Post>> by_root;
    for (Post& c : st.comments) by_root[c.root_id].push_back(std::move(c));

    auto subs_out = open_output(corpus_dir(cfg, st.topic->name) / "submissions.ndjson");
    auto coms_out = open_output(corpus_dir(cfg, st.topic->name) / "comments.ndjson");

    std::int64_t n_first = 0, n_keyword = 0;
    for (const Post& sub : st.submissions) {
      write_ndjson_line(subs_out, sub, st.topic->name);
      auto it = by_root.find(sub.id);
      if (it == by_root.end()) continue;
      CommentTree tree = build_tree(sub, it->second);
      CommentSets sets = build_comment_sets(tree, *st.topic, cfg.max_comment_lag_days);
      n_first += std::int64_t(sets.first_level.size());
      n_keyword += std::int64_t(sets.keyword_all.size());

      // persist the union of both sets once per comment, parent ids as
      // normalized by the tree so set membership can be recomputed downstream
      std::set<std::string> written;
      for (const Post& c : sets.first_level) {
        write_ndjson_line(coms_out, c, st.topic->name);
        written.insert(c.id);
      }
      for (const Post& c : sets.keyword_all)
        if (!written.count(c.id)) write_ndjson_line(coms_out, c, st.topic->name);
    }
    count_rows.push_back(st.topic->name + "," + std::to_string(st.submissions.size()) +
                         "," + std::to_string(n_first) + "," + std::to_string(n_keyword));
  }

  write_csv(cfg.out / "corpus" / "counts.csv",
            "concept,submissions,comments_first_level,comments_keyword", count_rows);
  write_csv(cfg.out / "corpus" / "parse_stats.csv",
            "kind,lines,parsed,skipped,dropped_deleted",
            {"submissions," + std::to_string(sub_stats.lines) + "," +
                 std::to_string(sub_stats.parsed) + "," + std::to_string(sub_stats.skipped) +
                 "," + std::to_string(sub_stats.dropped_deleted),
             "comments," + std::to_string(com_stats.lines) + "," +
                 std::to_string(com_stats.parsed) + "," + std::to_string(com_stats.skipped) +
                 "," + std::to_string(com_stats.dropped_deleted)});
}

// ---------------------------------------------------------------------------
// classify

namespace {

struct CorpusStore {
  std::vector<Post> submissions;
  std::vector<Post> comments;
};

CorpusStore load_corpus(const RunConfig& cfg, const std::string& topic) {
  const fs::path subs = corpus_dir(cfg, topic) / "submissions.ndjson";
  const fs::path coms = corpus_dir(cfg, topic) / "comments.ndjson";
  require_artifact(subs, "ingest");
  require_artifact(coms, "ingest");
  CorpusStore store;
  auto si = open_input(subs);
  store.submissions = parse_dump_all(si, PostKind::submission);
  auto ci = open_input(coms);
  store.comments = parse_dump_all(ci, PostKind::comment);
  return store;
}

std::unordered_map<std::string, LabeledItem> load_labels(const RunConfig& cfg,
                                                         const std::string& topic) {
  const fs::path path = labels_path(cfg, topic);
  require_artifact(path, "classify");
  std::unordered_map<std::string, LabeledItem> out;
  for (const auto& row : read_csv(path)) {
    if (row.size() != 4) throw IoError("bad labels row in " + path.string());
    auto label = label_from_name(row[1]);
    if (!label) throw IoError("bad label '" + row[1] + "' in " + path.string());
    LabeledItem item{row[0], *label, row[2], "", row[3] == "1"};
    out[row[0]] = std::move(item);
  }
  return out;
}

void write_labels(const RunConfig& cfg, const std::string& topic,
                  const std::vector<LabeledItem>& items) {
  std::vector<std::string> rows;
  rows.reserve(items.size());
  for (const auto& it : items)
    rows.push_back(it.post_id + "," + std::string(label_name(it.label)) + "," +
                   it.classifier_id + "," + (it.fallback ? "1" : "0"));
  write_csv(labels_path(cfg, topic), "post_id,label,classifier,fallback", rows);
}

}  // namespace

void run_classify(const RunConfig& cfg) {
  cfg.validate();
  const Dictionary dict = load_dictionary(cfg);

  for (const auto& concept_name : cfg.concepts) {
    const Concept& topic = concept_or_throw(concept_name);
    CorpusStore store = load_corpus(cfg, concept_name);

    std::vector<LabeledItem> items;
    items.reserve(store.submissions.size() + store.comments.size());

    if (cfg.classifier == "dictionary") {
      auto classify = [&](const Post& p) {
        items.push_back({p.id, dict_classify(p.text, dict), "dictionary", "", false});
      };
      for (const Post& p : store.submissions) classify(p);
      for (const Post& p : store.comments) classify(p);
    } else {
      GatewayConfig gw = cfg.gateway;
      gw.seed = cfg.stage_seed("classify");
      LlmGateway gateway(gw);
      auto subs = gateway.classify_batch(store.submissions, topic);
      auto coms = gateway.classify_batch(store.comments, topic);
      items.insert(items.end(), subs.begin(), subs.end());
      items.insert(items.end(), coms.begin(), coms.end());
    }
    write_labels(cfg, concept_name, items);
  }
}

// ---------------------------------------------------------------------------
// signals

namespace {

struct ThreadData {
  std::vector<SubmissionThread> threads;
  Date start{};
  Date end{};
};

ThreadData build_threads(const RunConfig& cfg, const std::string& concept_name) {
  const Concept& topic = concept_or_throw(concept_name);
  CorpusStore store = load_corpus(cfg, concept_name);
  auto labels = load_labels(cfg, concept_name);
  if (store.submissions.empty())
    throw ValidationError("corpus for concept '" + concept_name + "' has no submissions");

  auto label_of = [&](const std::string& id) {
    auto it = labels.find(id);
    if (it == labels.end())
      throw ValidationError("post " + id + " has no label; re-run the `classify` stage");
    return it->second.label;
  };

  std::unordered_map<std::string, std::vector<const Post*>> by_root;
  for (const Post& c : store.comments) by_root[c.root_id].push_back(&c);

  ThreadData data;
  data.threads.reserve(store.submissions.size());
  for (const Post& sub : store.submissions) {
    SubmissionThread th;
    th.id = sub.id;
    th.day = sub.day();
    th.submission = label_of(sub.id);

    const std::int64_t cap =
        sub.created_utc + std::int64_t(cfg.max_comment_lag_days) * 86400;
    if (auto it = by_root.find(sub.id); it != by_root.end()) {
      for (const Post* c : it->second) {
        if (c->created_utc > cap) continue;
        const SignalLabel cl = label_of(c->id);
        if (c->parent_id == sub.id) {
          th.first_level.push_back(cl);
          th.first_level_scores.push_back(c->net_score);
        }
        if (matches_concept(c->text, topic)) {
          th.keyword_all.push_back(cl);
          th.keyword_all_scores.push_back(c->net_score);
        }
      }
    }
    data.threads.push_back(std::move(th));
  }

  Date lo = data.threads.front().day, hi = data.threads.front().day;
  for (const auto& th : data.threads) {
    lo = std::min(lo, th.day);
    hi = std::max(hi, th.day);
  }
  data.start = cfg.signals_start.value_or(lo);
  data.end = cfg.signals_end.value_or(hi);
  return data;
}

void write_audit(const RunConfig& cfg, const std::string& topic,
                 const ThreadData& data) {
  std::vector<SignalLabel> original;
  std::vector<MonthIndex> months;
  original.reserve(data.threads.size());
  for (const auto& th : data.threads) {
    original.push_back(th.submission);
    months.push_back(month_of(th.day));
  }

  std::vector<std::string> summary_rows;
  for (CommentSetChoice set : {CommentSetChoice::first_level, CommentSetChoice::keyword_all}) {
    if (set == CommentSetChoice::first_level && !cfg.grid.first_level) continue;
    if (set == CommentSetChoice::keyword_all && !cfg.grid.keyword_all) continue;
    const std::string tag = set == CommentSetChoice::first_level ? "firstlevel" : "keyword";

    auto relabeled = relabel_threads(data.threads, set, cfg.audit_weighting, cfg.audit_tau);
    AuditResult audit = reclassification_audit(original, relabeled, months);

    std::vector<std::string> trans_rows;
    for (int from = 0; from < 3; ++from)
      for (int to = 0; to < 3; ++to)
        if (from != to)
          trans_rows.push_back(std::to_string(from - 1) + "," + std::to_string(to - 1) +
                               "," + std::to_string(audit.transitions[from][to]));
    write_csv(cfg.out / "audit" / (topic + "_transitions_" + tag + ".csv"),
              "from,to,count", trans_rows);

    std::vector<std::string> month_rows;
    for (const auto& [m, frac] : audit.monthly_fraction)
      month_rows.push_back(format_month(m) + "," + format_double(frac));
    write_csv(cfg.out / "audit" / (topic + "_monthly_" + tag + ".csv"), "month,fraction",
              month_rows);

    summary_rows.push_back(topic + "," + tag + "," + format_double(cfg.audit_tau) + "," +
                           (cfg.audit_weighting ? "1" : "0") + "," +
                           std::to_string(audit.total_items) + "," +
                           std::to_string(audit.total_changed) + "," +
                           format_double(audit.share) + "," +
                           std::to_string(audit.upgrades) + "," +
                           std::to_string(audit.downgrades) + "," +
                           format_double(audit.ratio));
  }
  write_csv(cfg.out / "audit" / (topic + "_summary.csv"),
            "concept,set,tau,weighting,items,changed,share,upgrades,downgrades,ratio",
            summary_rows);
}

}  // namespace

void run_signals(const RunConfig& cfg) {
  cfg.validate();
  const auto grid = spec_grid(cfg.grid);

  for (const auto& concept_name : cfg.concepts) {
    ThreadData data = build_threads(cfg, concept_name);
    const fs::path dir = signals_dir(cfg, concept_name);

    std::vector<std::string> index_rows(grid.size());
    parallel_for(grid.size(), cfg.jobs, [&](std::size_t i) {
      const DailySeries series = build_series(data.threads, grid[i], data.start, data.end);
      write_daily_csv(dir / (series.name + ".csv"), series);
      index_rows[i] = series.name;
    });
    std::sort(index_rows.begin(), index_rows.end());
    write_csv(dir / "specs.csv", "spec", index_rows);

    write_audit(cfg, concept_name, data);
  }
}

// ---------------------------------------------------------------------------
// nowcast

namespace {

struct NamedDaily {
  std::string name;
  DailySeries series;
};

std::vector<NamedDaily> load_concept_signals(const RunConfig& cfg,
                                             const std::string& topic) {
  const fs::path dir = signals_dir(cfg, topic);
  require_artifact(dir / "specs.csv", "signals");
  std::vector<NamedDaily> out;
  for (const auto& row : read_csv(dir / "specs.csv")) {
    if (row.empty() || row[0].empty()) continue;
    out.push_back({row[0], read_daily_csv(dir / (row[0] + ".csv"))});
  }
  return out;
}

std::string render_record(const NowcastRecord& r) {
  return r.target + "," + r.spec + "," + format_month(r.month) + "," +
         std::to_string(r.cutoff_days) + "," + format_double(r.point) + "," +
         format_double(r.sigma) + "," + format_double(r.realized) + "," +
         (r.fallback ? "1" : "0");
}

}  // namespace

void run_nowcast(const RunConfig& cfg) {
  cfg.validate();
  if (cfg.targets.empty())
    throw ValidationError("no [targets] configured; nothing to nowcast");

  std::map<std::string, std::vector<NamedDaily>> signals_by_concept;
  for (const auto& t : cfg.targets)
    if (t.topic != "any" && !signals_by_concept.count(t.topic))
      signals_by_concept[t.topic] = load_concept_signals(cfg, t.topic);

  std::vector<NamedDaily> competitor_series;
  for (const auto& [name, path] : cfg.competitors) {
    require_artifact(path, "(competitor daily csv)");
    competitor_series.push_back({name, read_daily_csv(path)});
  }

  SampleConfig sample{cfg.estimation_start, cfg.eval_start, cfg.eval_end};

  for (const auto& target : cfg.targets) {
    require_artifact(target.path, "(target monthly csv)");
    const MonthlySeries y = read_monthly_csv(target.path);

    std::vector<const NamedDaily*> series;
    if (target.topic != "any")
      for (const auto& s : signals_by_concept[target.topic]) series.push_back(&s);
    for (const auto& s : competitor_series) series.push_back(&s);
    if (series.empty())
      throw ValidationError("target '" + target.id + "' has no candidate daily series");

    struct Job {
      const NamedDaily* daily;
      int cutoff;
    };
    std::vector<Job> jobs;
    for (const auto* s : series)
      for (int cutoff : cfg.cutoffs) jobs.push_back({s, cutoff});

    std::vector<std::vector<NowcastRecord>> results(jobs.size());
    parallel_for(jobs.size(), cfg.jobs, [&](std::size_t i) {
      SeriesSource source(jobs[i].daily->series);
      results[i] = nowcast_recursive(y, source, target.id, jobs[i].daily->name,
                                     jobs[i].cutoff, sample, cfg.midas);
    });

    std::vector<NowcastRecord> all;
    for (int cutoff : cfg.cutoffs) {
      auto ar = nowcast_ar1(y, target.id, cutoff, sample);
      all.insert(all.end(), ar.begin(), ar.end());
    }
    for (auto& r : results) all.insert(all.end(), r.begin(), r.end());
    std::sort(all.begin(), all.end(), [](const NowcastRecord& a, const NowcastRecord& b) {
      if (a.spec != b.spec) return a.spec < b.spec;
      if (a.cutoff_days != b.cutoff_days) return a.cutoff_days < b.cutoff_days;
      return a.month < b.month;
    });

    std::vector<std::string> rows;
    rows.reserve(all.size());
    for (const auto& r : all) rows.push_back(render_record(r));
    write_csv(nowcast_path(cfg, target.id),
              "target,spec,month,cutoff,point,sigma,realized,fallback", rows);
  }
}

// ---------------------------------------------------------------------------
// evaluate

namespace {

struct SpecPanel {
  std::vector<MonthIndex> months;
  std::vector<double> point, sigma, realized;
  std::vector<bool> fallback;

  std::vector<double> errors() const {
    std::vector<double> e(point.size());
    for (std::size_t i = 0; i < point.size(); ++i) e[i] = realized[i] - point[i];
    return e;
  }
};

using PanelKey = std::pair<std::string, int>;  // spec, cutoff

std::map<PanelKey, SpecPanel> load_nowcasts(const RunConfig& cfg,
                                            const std::string& target) {
  const fs::path path = nowcast_path(cfg, target);
  require_artifact(path, "nowcast");
  std::map<PanelKey, SpecPanel> panels;
  for (const auto& row : read_csv(path)) {
    if (row.size() != 8) throw IoError("bad nowcast row in " + path.string());
    SpecPanel& p = panels[{row[1], std::stoi(row[3])}];
    p.months.push_back(parse_month(row[2]));
    p.point.push_back(std::stod(row[4]));
    p.sigma.push_back(std::stod(row[5]));
    p.realized.push_back(std::stod(row[6]));
    p.fallback.push_back(row[7] == "1");
  }
  return panels;
}

std::vector<double> panel_crps(const RunConfig& cfg, const std::string& target,
                               const std::string& spec, int cutoff, const SpecPanel& p) {
  const CrpsMode mode = cfg.crps_mode == "closed" ? CrpsMode::closed : CrpsMode::simulate;
  const std::uint64_t base = derive_seed(cfg.stage_seed("evaluate"), target);
  std::vector<double> out(p.months.size());
  for (std::size_t i = 0; i < p.months.size(); ++i) {
    const std::uint64_t seed = derive_seed(
        base, spec + "|" + std::to_string(cutoff) + "|" + format_month(p.months[i]));
    out[i] = crps_normal(p.point[i], p.sigma[i], p.realized[i], mode, seed, cfg.crps_draws);
  }
  return out;
}

std::string stars_for(double p) {
  if (p < 0.01) return "***";
  if (p < 0.05) return "**";
  if (p < 0.10) return "*";
  return "";
}

double mean_of(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / double(v.size());
}

}  // namespace

void run_evaluate(const RunConfig& cfg) {
  cfg.validate();
  for (const auto& target : cfg.targets) {
    auto panels = load_nowcasts(cfg, target.id);

    std::vector<std::string> rows;
    for (int cutoff : cfg.cutoffs) {
      auto bench_it = panels.find({"ar1", cutoff});
      if (bench_it == panels.end())
        throw ValidationError("nowcast store for '" + target.id +
                              "' lacks the ar1 benchmark; re-run the `nowcast` stage");
      const SpecPanel& bench = bench_it->second;
      const auto bench_err = bench.errors();
      const auto bench_metrics = point_metrics(bench_err);
      const auto bench_crps = panel_crps(cfg, target.id, "ar1", cutoff, bench);
      const double bench_crps_mean = mean_of(bench_crps);

      for (const auto& [key, panel] : panels) {
        if (key.second != cutoff) continue;
        const std::string& spec = key.first;
        const auto err = panel.errors();
        const auto metrics = point_metrics(err);
        const auto crps = panel_crps(cfg, target.id, spec, cutoff, panel);
        const double crps_mean = mean_of(crps);

        auto emit = [&](const char* metric, double value, double bench_value,
                        LossKind loss, const std::vector<double>& model_loss_in,
                        const std::vector<double>& bench_loss_in) {
          std::string dm_stat = "", dm_p = "", stars = "";
          if (spec != "ar1") {
            const TestResult tr = dm_test(model_loss_in, bench_loss_in, loss, 1, Sided::one);
            dm_stat = format_double(tr.statistic);
            dm_p = format_double(tr.p_value);
            stars = stars_for(tr.p_value);
          }
          rows.push_back(target.id + "," + spec + "," + std::to_string(cutoff) + "," +
                         metric + "," + format_double(value) + "," +
                         format_double(bench_value) + "," +
                         format_double(bench_value != 0 ? value / bench_value : 0.0) + "," +
                         dm_stat + "," + dm_p + "," + stars);
        };
        emit("rmsfe", metrics.rmsfe, bench_metrics.rmsfe, LossKind::squared, err, bench_err);
        emit("mafe", metrics.mafe, bench_metrics.mafe, LossKind::absolute, err, bench_err);
        emit("crps", crps_mean, bench_crps_mean, LossKind::crps, crps, bench_crps);
      }
    }
    write_csv(metrics_path(cfg, target.id),
              "target,spec,cutoff,metric,value,benchmark,ratio,dm_stat,dm_p,stars", rows);
  }
}

// ---------------------------------------------------------------------------
// report

namespace {

struct MetricRow {
  std::string spec;
  int cutoff = 0;
  std::string metric;
  double value = 0, benchmark = 0, ratio = 0;
  std::string dm_p, stars;
};

std::vector<MetricRow> load_metrics(const RunConfig& cfg, const std::string& target) {
  const fs::path path = metrics_path(cfg, target);
  require_artifact(path, "evaluate");
  std::vector<MetricRow> out;
  for (const auto& row : read_csv(path)) {
    if (row.size() != 10) throw IoError("bad metrics row in " + path.string());
    out.push_back({row[1], std::stoi(row[2]), row[3], std::stod(row[4]), std::stod(row[5]),
                   std::stod(row[6]), row[8], row[9]});
  }
  return out;
}

MonthlySeries monthly_mean_series(const DailySeries& d) { return monthly_means(d); }

}  // namespace

void run_report(const RunConfig& cfg) {
  cfg.validate();
  const int cutoff0 = cfg.cutoffs.front();

  std::vector<std::string> table_rows;
  std::vector<std::string> corr_rows;
  for (const auto& target : cfg.targets) {
    auto metrics = load_metrics(cfg, target.id);
    auto panels = load_nowcasts(cfg, target.id);

    // rank candidate indicators (grid members only) by RMSFE ratio
    std::vector<const MetricRow*> ranked;
    for (const auto& m : metrics)
      if (m.metric == "rmsfe" && m.cutoff == cutoff0 && m.spec != "ar1" &&
          SignalSpec::parse(m.spec))
        ranked.push_back(&m);
    std::sort(ranked.begin(), ranked.end(),
              [](const MetricRow* a, const MetricRow* b) {
                return a->ratio != b->ratio ? a->ratio < b->ratio : a->spec < b->spec;
              });

    std::vector<std::string> rank_rows;
    for (const auto* m : ranked)
      rank_rows.push_back(target.id + "," + m->spec + "," + format_double(m->ratio) +
                          "," + m->stars);
    write_csv(cfg.out / "report" / ("ranking_" + target.id + ".csv"),
              "target,spec,rmsfe_ratio,stars", rank_rows);

    // main table: best grid spec plus each competitor, all three metrics
    std::vector<std::string> indicators;
    if (!ranked.empty()) indicators.push_back(ranked.front()->spec);
    for (const auto& [name, path] : cfg.competitors) indicators.push_back(name);
    for (const auto& ind : indicators)
      for (const auto& metric : {"rmsfe", "mafe", "crps"})
        for (const auto& m : metrics)
          if (m.spec == ind && m.cutoff == cutoff0 && m.metric == metric)
            table_rows.push_back(target.id + "," + ind + "," + metric + "," +
                                 format_double(m.ratio) + "," + m.stars);

    if (ranked.empty()) continue;
    const std::string best = ranked.front()->spec;

    // cumulative squared-loss differences and the fluctuation path for the
    // winner, both against the ar1 benchmark
    const SpecPanel& bench = panels.at({"ar1", cutoff0});
    const SpecPanel& model = panels.at({best, cutoff0});
    const auto be = bench.errors();
    const auto me = model.errors();
    const auto cum = cum_loss_diff(me, be);
    std::vector<std::string> cum_rows;
    for (std::size_t i = 0; i < cum.size(); ++i)
      cum_rows.push_back(format_month(model.months[i]) + "," + best + "," +
                         format_double(cum[i]));
    write_csv(cfg.out / "report" / ("cumloss_" + target.id + ".csv"), "month,spec,value",
              cum_rows);

    std::vector<std::string> fl_rows;
    if (me.size() >= 20) {  // shorter samples cannot support the fluctuation test
      std::vector<double> d(me.size(), 0.0);
      for (std::size_t i = 0; i < me.size(); ++i) d[i] = me[i] * me[i] - be[i] * be[i];
      const FluctuationPath fp = gr_fluctuation(d, cfg.gr_mu);
      for (std::size_t i = 0; i < fp.statistic.size(); ++i) {
        const char* klass = fp.klass[i] == WindowClass::outperform      ? "outperform"
                            : fp.klass[i] == WindowClass::underperform ? "underperform"
                                                                       : "inconclusive";
        fl_rows.push_back(format_month(model.months[std::size_t(fp.center[i])]) + "," +
                          format_double(fp.statistic[i]) + "," + format_double(fp.upper) +
                          "," + format_double(fp.lower) + "," + klass);
      }
    }
    write_csv(cfg.out / "report" / ("fluctuation_" + target.id + ".csv"),
              "month,statistic,upper,lower,class", fl_rows);

    // contemporaneous correlations of the winning signal (monthly means)
    // with each competitor series
    if (!cfg.competitors.empty() && target.topic != "any") {
      const fs::path best_csv = signals_dir(cfg, target.topic) / (best + ".csv");
      if (fs::exists(best_csv)) {
        const MonthlySeries best_monthly = monthly_mean_series(read_daily_csv(best_csv));
        for (const auto& [name, path] : cfg.competitors) {
          const MonthlySeries comp = monthly_mean_series(read_daily_csv(path));
          const MonthIndex lo = std::max(best_monthly.first_month, comp.first_month);
          const MonthIndex hi = std::min(best_monthly.last_month(), comp.last_month());
          if (hi - lo + 1 < 3) continue;
          std::vector<double> a, b;
          for (MonthIndex m = lo; m <= hi; ++m) {
            a.push_back(best_monthly.at(m));
            b.push_back(comp.at(m));
          }
          corr_rows.push_back(target.id + "," + name + "," +
                              format_double(pearson_corr(a, b)));
        }
      }
    }
  }

  write_csv(cfg.out / "report" / "main_table.csv", "target,indicator,metric,ratio,stars",
            table_rows);
  write_csv(cfg.out / "report" / "correlations.csv", "target,series,correlation",
            corr_rows);

  // first principal components of configured competitor groups
  for (const auto& [group, names] : cfg.pc_groups) {
    std::vector<DailySeries> members;
    for (const auto& name : names)
      for (const auto& [cname, cpath] : cfg.competitors)
        if (cname == name) members.push_back(read_daily_csv(cpath));
    Date lo = members.front().start, hi = members.front().end();
    for (const auto& s : members) {
      lo = std::max(lo, s.start);
      hi = std::min(hi, s.end());
    }
    if (hi < lo) throw ValidationError("pc group '" + group + "' has no overlap");
    std::vector<std::vector<double>> panel;
    for (const auto& s : members) {
      std::vector<double> col;
      for (Date d = lo; d <= hi; d += std::chrono::days{1}) col.push_back(s.at(d));
      panel.push_back(std::move(col));
    }
    const auto scores = first_pc(panel);
    DailySeries pc;
    pc.start = lo;
    pc.values = scores;
    pc.name = group + "_pc1";
    write_daily_csv(cfg.out / "report" / (group + "_pc1.csv"), pc);
  }

  // carry the audit summaries into the report directory
  std::vector<std::string> audit_rows;
  for (const auto& topic : cfg.concepts) {
    const fs::path p = cfg.out / "audit" / (topic + "_summary.csv");
    if (!fs::exists(p)) continue;
    for (const auto& row : read_csv(p)) {
      std::string line;
      for (std::size_t i = 0; i < row.size(); ++i)
        line += (i ? "," : "") + row[i];
      audit_rows.push_back(line);
    }
  }
  write_csv(cfg.out / "report" / "audit_summary.csv",
            "concept,set,tau,weighting,items,changed,share,upgrades,downgrades,ratio",
            audit_rows);
}

// ---------------------------------------------------------------------------
// synth

void run_synth(const RunConfig& cfg) {
  cfg.validate();
  SynthConfig sc = cfg.synth;
  const SynthCorpus corpus = gen_corpus(sc);

  auto subs = open_output(cfg.out / "synth" / "submissions.ndjson");
  auto coms = open_output(cfg.out / "synth" / "comments.ndjson");
  write_corpus(corpus, subs, coms);

  write_daily_csv(cfg.out / "synth" / "latent.csv", corpus.latent);

  const MonthlySeries target =
      gen_target(corpus.latent, sc.target_loading, sc.sigma_target, sc.seed);
  write_monthly_csv(cfg.out / "synth" / "target_synthetic.csv", target);

  write_csv(cfg.out / "synth" / "ledger.csv",
            "submissions,comments,first_level,keyword,label_down,label_neutral,label_up",
            {std::to_string(corpus.ledger.n_submissions) + "," +
             std::to_string(corpus.ledger.n_comments) + "," +
             std::to_string(corpus.ledger.n_first_level) + "," +
             std::to_string(corpus.ledger.n_keyword) + "," +
             std::to_string(corpus.ledger.submission_labels[0]) + "," +
             std::to_string(corpus.ledger.submission_labels[1]) + "," +
             std::to_string(corpus.ledger.submission_labels[2])});
}

// ---------------------------------------------------------------------------
// accuracy

void run_accuracy(const RunConfig& cfg) {
  cfg.validate();
  if (cfg.truth_labels.empty())
    throw ValidationError("paths.truth_labels must point at a post_id,label csv");
  require_artifact(cfg.truth_labels, "(labeled truth file)");
  if (cfg.accuracy_classifier != "dictionary" && cfg.accuracy_classifier != "llm")
    throw ValidationError("accuracy.classifier must be dictionary or llm");

  const Concept& topic = concept_or_throw(cfg.accuracy_concept);
  CorpusStore store = load_corpus(cfg, topic.name);
  std::unordered_map<std::string, const Post*> posts;
  for (const Post& p : store.submissions) posts[p.id] = &p;
  for (const Post& p : store.comments) posts[p.id] = &p;

  std::vector<const Post*> items;
  std::vector<SignalLabel> truth;
  for (const auto& row : read_csv(cfg.truth_labels)) {
    if (row.size() != 2) throw ValidationError("truth row needs post_id,label");
    auto it = posts.find(row[0]);
    if (it == posts.end())
      throw ValidationError("truth post " + row[0] + " not found in the corpus store");
    auto label = label_from_name(row[1]);
    if (!label) throw ValidationError("bad truth label '" + row[1] + "'");
    items.push_back(it->second);
    truth.push_back(*label);
  }
  if (items.empty()) throw ValidationError("truth file has no rows");

  auto quantile = [](std::vector<double> v, double p) {
    std::sort(v.begin(), v.end());
    const double pos = p * double(v.size() - 1);
    const std::size_t lo = std::size_t(pos);
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (pos - double(lo)) * (v[hi] - v[lo]);
  };

  std::vector<std::string> rows;
  if (cfg.accuracy_classifier == "dictionary") {
    const Dictionary dict = load_dictionary(cfg);
    std::vector<SignalLabel> pred;
    pred.reserve(items.size());
    for (const Post* p : items) pred.push_back(dict_classify(p->text, dict));
    const double f1 = f1_macro(pred, truth).macro_f1;
    rows.push_back("dictionary,0,1," + format_double(f1) + "," + format_double(f1) + "," +
                   format_double(f1) + "," + format_double(f1) + "," + format_double(f1));
  } else {
    std::vector<Post> batch;
    batch.reserve(items.size());
    for (const Post* p : items) batch.push_back(*p);
    for (double temp : cfg.accuracy_temperatures) {
      std::vector<double> scores;
      for (int rep = 0; rep < cfg.accuracy_reps; ++rep) {
        GatewayConfig gw = cfg.gateway;
        gw.temperature = temp;
        gw.cache_path.clear();  // repetitions must hit the service, not the cache
        gw.seed = derive_seed(cfg.stage_seed("accuracy"), std::uint64_t(rep));
        LlmGateway gateway(gw);
        auto labeled = gateway.classify_batch(batch, topic);
        std::vector<SignalLabel> pred;
        pred.reserve(labeled.size());
        for (const auto& li : labeled) pred.push_back(li.label);
        scores.push_back(f1_macro(pred, truth).macro_f1);
      }
      rows.push_back("llm," + format_double(temp) + "," + std::to_string(cfg.accuracy_reps) +
                     "," + format_double(quantile(scores, 0.0)) + "," +
                     format_double(quantile(scores, 0.25)) + "," +
                     format_double(quantile(scores, 0.5)) + "," +
                     format_double(quantile(scores, 0.75)) + "," +
                     format_double(quantile(scores, 1.0)));
    }
  }
  write_csv(cfg.out / "accuracy.csv",
            "classifier,temperature,repetitions,min,q25,median,q75,max", rows);
}

// ---------------------------------------------------------------------------

void run_pipeline(const RunConfig& cfg) {
  run_ingest(cfg);
  run_classify(cfg);
  run_signals(cfg);
  run_nowcast(cfg);
  run_evaluate(cfg);
  run_report(cfg);
}

void run_stage(const RunConfig& cfg, const std::string& stage) {
  if (stage == "ingest") return run_ingest(cfg);
  if (stage == "classify") return run_classify(cfg);
  if (stage == "signals") return run_signals(cfg);
  if (stage == "nowcast") return run_nowcast(cfg);
  if (stage == "evaluate") return run_evaluate(cfg);
  if (stage == "report") return run_report(cfg);
  if (stage == "synth") return run_synth(cfg);
  if (stage == "accuracy") return run_accuracy(cfg);
  if (stage == "pipeline") return run_pipeline(cfg);
  throw ValidationError("unknown stage '" + stage + "'");
}

}  // namespace rednow

#include "core/synth.hpp"

#include <cmath>
#include <ostream>

#include "core/errors.hpp"
#include "core/ndjson.hpp"
#include "core/rng.hpp"

namespace rednow {

void SynthConfig::validate() const {
  if (n_days < 1) throw ValidationError("synth: n_days must be >= 1");
  if (rho < 0 || rho > 1) throw ValidationError("synth: rho must lie in [0,1]");
  if (delta < 0 || delta > 1) throw ValidationError("synth: delta must lie in [0,1]");
  if (phi <= -1 || phi >= 1) throw ValidationError("synth: phi must lie in (-1,1)");
  if (sigma_latent <= 0) throw ValidationError("synth: sigma_latent must be > 0");
  if (submissions_per_day < 0 || comments_per_submission < 0)
    throw ValidationError("synth: negative intensity");
  if (!find_concept(topic)) throw ValidationError("synth: unknown concept " + topic);
  if (score_p <= 0 || score_p >= 1) throw ValidationError("synth: score_p must lie in (0,1)");
}

std::string synth_text(const Concept& topic, int label_value) {
  // keyword token keeps the post through ingestion; the sentiment words map
  // the text back to the planted label under the bundled dictionary
  if (label_value > 0) return topic.name + " watch: expect it to climb and surge";
  if (label_value < 0) return topic.name + " watch: expect it to decline and drop";
  return topic.name + " watch: unchanged outlook this week";
}

namespace {

// upper tercile boundary of N(0,1): Phi^-1(2/3)
constexpr double kTercile = 0.43072729929545756;

int bucket_of(double z, double stationary_sd) {
  const double c = kTercile * stationary_sd;
  return z > c ? 1 : z < -c ? -1 : 0;
}

int flip_label(Rng& rng, int label) {
  // uniform over the two other labels
  static const int others[3][2] = {{0, 1}, {-1, 1}, {-1, 0}};
  return others[label + 1][rng.below(2)];
}

}  // namespace

SynthCorpus gen_corpus(const SynthConfig& cfg) {
  cfg.validate();
  const Concept& topic = *find_concept(cfg.topic);
  const double stat_sd = cfg.sigma_latent / std::sqrt(1.0 - cfg.phi * cfg.phi);

  SynthCorpus out;
  out.latent.start = cfg.start;
  out.latent.name = "latent";
  out.latent.values.resize(std::size_t(cfg.n_days));

  const std::uint64_t corpus_seed = derive_seed(cfg.seed, "corpus");
  Rng latent_rng(derive_seed(corpus_seed, "latent"));
  double z = latent_rng.normal(0.0, stat_sd);

  for (int d = 0; d < cfg.n_days; ++d) {
    if (d > 0) z = cfg.phi * z + latent_rng.normal(0.0, cfg.sigma_latent);
    out.latent.values[std::size_t(d)] = z;
    const int day_bucket = bucket_of(z, stat_sd);
    const Date day = cfg.start + std::chrono::days{d};
    const std::int64_t day_epoch = epoch_seconds(day);

    // per-day stream so days can be generated independently
    Rng rng(derive_seed(corpus_seed, std::uint64_t(d)));
    const int n_subs = rng.poisson(cfg.submissions_per_day);

    for (int i = 0; i < n_subs; ++i) {
      int label = day_bucket;
      if (rng.uniform01() > cfg.rho) label = flip_label(rng, label);

      Post sub;
      sub.kind = PostKind::submission;
      sub.id = "s" + std::to_string(d) + "x" + std::to_string(i);
      sub.created_utc = day_epoch + std::int64_t(rng.uniform01() * 86400.0);
      sub.text = synth_text(topic, label);
      sub.net_score = rng.geometric0(cfg.score_p) + cfg.score_shift;

      const int n_comments = rng.poisson(cfg.comments_per_submission);
      std::vector<std::string> thread_ids;
      thread_ids.reserve(std::size_t(n_comments));
      for (int j = 0; j < n_comments; ++j) {
        int clabel = label;
        if (rng.uniform01() < cfg.delta) clabel = flip_label(rng, clabel);

        Post com;
        com.kind = PostKind::comment;
        com.id = sub.id + "c" + std::to_string(j);
        com.created_utc = sub.created_utc + 60 + std::int64_t(rng.uniform01() * 172740.0);
        com.root_id = sub.id;
        com.parent_id = (!thread_ids.empty() && rng.uniform01() < cfg.nest_prob)
                            ? thread_ids[rng.below(thread_ids.size())]
                            : sub.id;
        com.text = synth_text(topic, clabel);
        com.net_score = rng.geometric0(cfg.score_p) + cfg.score_shift;

        if (com.parent_id == sub.id) ++out.ledger.n_first_level;
        ++out.ledger.n_keyword;  // every template carries the concept keyword
        ++out.ledger.n_comments;
        thread_ids.push_back(com.id);
        out.comments.push_back(std::move(com));
      }

      ++out.ledger.n_submissions;
      ++out.ledger.submission_labels[label + 1];
      out.submissions.push_back(std::move(sub));
    }
  }
  return out;
}

MonthlySeries monthly_means(const DailySeries& daily) {
  MonthlySeries out;
  out.name = daily.name;
  MonthIndex m = month_of(daily.start);
  if (month_first_day(m) < daily.start) ++m;  // first full month
  out.first_month = m;
  while (month_last_day(m) <= daily.end()) {
    const Date first = month_first_day(m);
    const int nd = days_in_month(m);
    double s = 0;
    for (int d = 0; d < nd; ++d) s += daily.at(first + std::chrono::days{d});
    out.values.push_back(s / nd);
    ++m;
  }
  if (out.values.empty())
    throw ValidationError("monthly_means: daily range covers no full month");
  return out;
}

MonthlySeries gen_target(const DailySeries& latent, double b, double sigma,
                         std::uint64_t seed) {
  if (sigma < 0) throw ValidationError("gen_target: sigma must be >= 0");
  MonthlySeries m = monthly_means(latent);
  Rng rng(derive_seed(seed, "target"));

  MonthlySeries y;
  y.first_month = m.first_month;
  y.name = "synthetic";
  y.values.resize(m.values.size());
  double prev = 0.0;
  for (std::size_t t = 0; t < m.values.size(); ++t) {
    const double noise = sigma > 0 ? rng.normal(0.0, sigma) : 0.0;
    y.values[t] = 0.5 * prev + b * m.values[t] + noise;
    prev = y.values[t];
  }
  return y;
}

void write_corpus(const SynthCorpus& corpus, std::ostream& submissions_out,
                  std::ostream& comments_out) {
  for (const Post& p : corpus.submissions) write_ndjson_line(submissions_out, p);
  for (const Post& p : corpus.comments) write_ndjson_line(comments_out, p);
}

}  // namespace rednow

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "core/post.hpp"
#include "core/series.hpp"

namespace rednow {

// Seeded synthetic corpus with a planted latent daily signal. Post text is a
// templated carrier of the planted label plus concept keyword tokens, so the
// real parser, keyword filter, and dictionary classifier all apply.
struct SynthConfig {
  std::uint64_t seed = 42;
  Date start = date_ymd(2016, 1, 1);
  int n_days = 2922;                    // 2016-01-01 .. 2023-12-31
  double submissions_per_day = 12.0;    // Poisson mean
  double comments_per_submission = 4.0; // Poisson mean
  double phi = 0.98;                    // latent AR(1) coefficient
  double sigma_latent = 0.3;            // latent innovation sd
  double rho = 0.9;    // probability a submission label matches the latent bucket
  double delta = 0.2;  // probability a comment opposes its submission's label
  double target_loading = 0.2;  // b in the monthly target equation
  double sigma_target = 0.25;
  std::string topic = "inflation";
  double score_p = 0.3;   // net votes: geometric(p) + shift
  int score_shift = -1;
  double nest_prob = 0.3;  // chance a comment replies to an earlier comment

  void validate() const;
};

struct SynthLedger {
  std::int64_t n_submissions = 0;
  std::int64_t n_comments = 0;
  std::int64_t n_first_level = 0;  // direct replies within the 7-day cap
  std::int64_t n_keyword = 0;      // keyword-bearing comments within the cap
  std::int64_t submission_labels[3] = {0, 0, 0};  // down, neutral, up
};

struct SynthCorpus {
  std::vector<Post> submissions;
  std::vector<Post> comments;
  DailySeries latent;
  SynthLedger ledger;
};

SynthCorpus gen_corpus(const SynthConfig& cfg);

// Template text carrying a label for one concept; the bundled dictionary
// classifies it back to exactly that label.
std::string synth_text(const Concept& topic, int label_value);

// Calendar-month means of a daily series, over fully covered months only.
MonthlySeries monthly_means(const DailySeries& daily);

// y_t = 0.5*y_{t-1} + b * (monthly mean of latent) + N(0, sigma^2).
MonthlySeries gen_target(const DailySeries& latent, double b, double sigma,
                         std::uint64_t seed);

// Writes the corpus in the ingestion dump schema (one file per post kind).
void write_corpus(const SynthCorpus& corpus, std::ostream& submissions_out,
                  std::ostream& comments_out);

}  // namespace rednow

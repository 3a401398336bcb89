#include "core/config.hpp"

#include <charconv>
#include <fstream>

#include "core/errors.hpp"
#include "core/rng.hpp"

namespace rednow {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    auto comma = s.find(',', pos);
    if (comma == std::string_view::npos) comma = s.size();
    auto item = trim(s.substr(pos, comma - pos));
    if (!item.empty()) out.emplace_back(item);
    pos = comma + 1;
  }
  return out;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value) {
  throw ValidationError("config: bad value '" + std::string(value) + "' for key '" +
                        std::string(key) + "'");
}

bool parse_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1" || v == "on" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "off" || v == "no") return false;
  bad_value(key, v);
}

long long parse_ll(std::string_view key, std::string_view v) {
  long long out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size()) bad_value(key, v);
  return out;
}

double parse_real(std::string_view key, std::string_view v) {
  double out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size()) bad_value(key, v);
  return out;
}

std::vector<double> parse_real_list(std::string_view key, std::string_view v) {
  std::vector<double> out;
  for (const auto& item : split_list(v)) out.push_back(parse_real(key, item));
  if (out.empty()) bad_value(key, v);
  return out;
}

std::vector<int> parse_int_list(std::string_view key, std::string_view v) {
  std::vector<int> out;
  for (const auto& item : split_list(v)) out.push_back(int(parse_ll(key, item)));
  if (out.empty()) bad_value(key, v);
  return out;
}

}  // namespace

RunConfig RunConfig::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config file not found: " + path.string());

  RunConfig cfg;
  std::string section;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto s = trim(line);
    if (s.empty() || s.front() == '#' || s.front() == ';') continue;
    if (s.front() == '[') {
      if (s.back() != ']')
        throw ValidationError("config: bad section header at line " +
                              std::to_string(line_no));
      section = std::string(trim(s.substr(1, s.size() - 2)));
      continue;
    }
    auto eq = s.find('=');
    if (eq == std::string_view::npos)
      throw ValidationError("config: expected key=value at line " + std::to_string(line_no));
    auto key = trim(s.substr(0, eq));
    auto value = trim(s.substr(eq + 1));
    if (key.empty())
      throw ValidationError("config: empty key at line " + std::to_string(line_no));
    const std::string full =
        section.empty() ? std::string(key) : section + "." + std::string(key);
    cfg.apply(full, value);
  }
  return cfg;
}

void RunConfig::apply(std::string_view key, std::string_view value) {
  const std::string k(key);
  const std::string v(value);

  // [run]
  if (k == "run.seed") { seed = std::uint64_t(parse_ll(k, v)); return; }
  if (k == "run.jobs") { jobs = int(parse_ll(k, v)); return; }
  if (k == "run.out") { out = v; return; }

  // [paths]
  if (k == "paths.dump_submissions") { dump_submissions = v; return; }
  if (k == "paths.dump_comments") { dump_comments = v; return; }
  if (k == "paths.dictionary") { dictionary_path = v; return; }
  if (k == "paths.truth_labels") { truth_labels = v; return; }

  // [corpus]
  if (k == "corpus.concepts") {
    concepts = split_list(v);
    if (concepts.empty()) bad_value(k, v);
    return;
  }
  if (k == "corpus.include_selftext") { include_selftext = parse_bool(k, v); return; }
  if (k == "corpus.max_comment_lag_days") {
    max_comment_lag_days = int(parse_ll(k, v));
    return;
  }

  // [classifier]
  if (k == "classifier.id") { classifier = v; return; }

  // [gateway]
  if (k == "gateway.endpoint") { gateway.endpoint = v; return; }
  if (k == "gateway.model") { gateway.model = v; return; }
  if (k == "gateway.temperature") { gateway.temperature = parse_real(k, v); return; }
  if (k == "gateway.concurrency") { gateway.max_concurrency = int(parse_ll(k, v)); return; }
  if (k == "gateway.retries") { gateway.max_retries = int(parse_ll(k, v)); return; }
  if (k == "gateway.timeout_s") { gateway.timeout_s = parse_real(k, v); return; }
  if (k == "gateway.cache") { gateway.cache_path = v; return; }
  if (k == "gateway.max_document_chars") {
    gateway.max_document_chars = int(parse_ll(k, v));
    return;
  }
  if (k == "gateway.backoff_base_ms") { gateway.backoff_base_ms = int(parse_ll(k, v)); return; }
  if (k == "gateway.backoff_cap_ms") { gateway.backoff_cap_ms = int(parse_ll(k, v)); return; }

  // [grid]
  if (k == "grid.thresholds") { grid.thresholds = parse_real_list(k, v); return; }
  if (k == "grid.windows") { grid.windows = parse_int_list(k, v); return; }
  if (k == "grid.comment_sets") {
    grid.first_level = grid.keyword_all = false;
    for (const auto& s : split_list(v)) {
      if (s == "first_level") grid.first_level = true;
      else if (s == "keyword_all") grid.keyword_all = true;
      else bad_value(k, v);
    }
    return;
  }
  if (k == "grid.weighting") {
    grid.unweighted = grid.weighted = false;
    for (const auto& s : split_list(v)) {
      if (s == "0") grid.unweighted = true;
      else if (s == "1") grid.weighted = true;
      else bad_value(k, v);
    }
    return;
  }
  if (k == "grid.submissions_only") { grid.submissions_only = parse_bool(k, v); return; }

  // [signals]
  if (k == "signals.start") { signals_start = parse_date(v); return; }
  if (k == "signals.end") { signals_end = parse_date(v); return; }
  if (k == "signals.audit_tau") { audit_tau = parse_real(k, v); return; }
  if (k == "signals.audit_weighting") { audit_weighting = parse_bool(k, v); return; }

  // [sample]
  if (k == "sample.estimation_start") { estimation_start = parse_month(v); return; }
  if (k == "sample.eval_start") { eval_start = parse_month(v); return; }
  if (k == "sample.eval_end") { eval_end = parse_month(v); return; }
  if (k == "sample.cutoffs") { cutoffs = parse_int_list(k, v); return; }

  // [midas]
  if (k == "midas.k") { midas.k = int(parse_ll(k, v)); return; }
  if (k == "midas.block_offset") { midas.block_offset = int(parse_ll(k, v)); return; }
  if (k == "midas.q_max") { midas.q_max = int(parse_ll(k, v)); return; }

  // [evaluate]
  if (k == "evaluate.crps_mode") {
    if (v != "simulate" && v != "closed") bad_value(k, v);
    crps_mode = v;
    return;
  }
  if (k == "evaluate.crps_draws") { crps_draws = int(parse_ll(k, v)); return; }
  if (k == "evaluate.gr_mu") { gr_mu = parse_real(k, v); return; }

  // [targets] id = concept:path
  if (k.rfind("targets.", 0) == 0) {
    const std::string id = k.substr(8);
    auto colon = v.find(':');
    if (id.empty() || colon == std::string::npos) bad_value(k, v);
    TargetSpec t{id, v.substr(0, colon), std::filesystem::path(v.substr(colon + 1))};
    for (auto& existing : targets)
      if (existing.id == id) { existing = t; return; }
    targets.push_back(std::move(t));
    return;
  }

  // [competitors] name = path
  if (k.rfind("competitors.", 0) == 0) {
    const std::string name = k.substr(12);
    if (name.empty()) bad_value(k, v);
    for (auto& existing : competitors)
      if (existing.first == name) { existing.second = v; return; }
    competitors.emplace_back(name, v);
    return;
  }

  // [pc] group = name1,name2
  if (k.rfind("pc.", 0) == 0) {
    const std::string group = k.substr(3);
    auto names = split_list(v);
    if (group.empty() || names.size() < 2) bad_value(k, v);
    for (auto& existing : pc_groups)
      if (existing.first == group) { existing.second = names; return; }
    pc_groups.emplace_back(group, std::move(names));
    return;
  }

  // [synth]
  if (k == "synth.seed") { synth.seed = std::uint64_t(parse_ll(k, v)); return; }
  if (k == "synth.start") { synth.start = parse_date(v); return; }
  if (k == "synth.n_days") { synth.n_days = int(parse_ll(k, v)); return; }
  if (k == "synth.submissions_per_day") { synth.submissions_per_day = parse_real(k, v); return; }
  if (k == "synth.comments_per_submission") {
    synth.comments_per_submission = parse_real(k, v);
    return;
  }
  if (k == "synth.phi") { synth.phi = parse_real(k, v); return; }
  if (k == "synth.sigma_latent") { synth.sigma_latent = parse_real(k, v); return; }
  if (k == "synth.rho") { synth.rho = parse_real(k, v); return; }
  if (k == "synth.delta") { synth.delta = parse_real(k, v); return; }
  if (k == "synth.target_loading") { synth.target_loading = parse_real(k, v); return; }
  if (k == "synth.sigma_target") { synth.sigma_target = parse_real(k, v); return; }
  if (k == "synth.concept") { synth.topic = v; return; }
  if (k == "synth.score_p") { synth.score_p = parse_real(k, v); return; }
  if (k == "synth.score_shift") { synth.score_shift = int(parse_ll(k, v)); return; }
  if (k == "synth.nest_prob") { synth.nest_prob = parse_real(k, v); return; }

  // [accuracy]
  if (k == "accuracy.classifier") { accuracy_classifier = v; return; }
  if (k == "accuracy.temperatures") { accuracy_temperatures = parse_real_list(k, v); return; }
  if (k == "accuracy.repetitions") { accuracy_reps = int(parse_ll(k, v)); return; }
  if (k == "accuracy.concept") { accuracy_concept = v; return; }

  throw ValidationError("config: unknown key '" + k + "'");
}

void RunConfig::validate() const {
  if (classifier != "dictionary" && classifier != "llm")
    throw ValidationError("config: unknown classifier id '" + classifier +
                          "' (expected dictionary or llm)");
  for (const auto& c : concepts)
    if (!find_concept(c)) throw ValidationError("config: unknown concept '" + c + "'");
  if (eval_start <= estimation_start + 1)
    throw ValidationError("config: evaluation range must follow the estimation start");
  if (eval_end < eval_start) throw ValidationError("config: empty evaluation range");
  for (int c : cutoffs)
    if (c != 0 && c != 7 && c != 14 && c != 21 && c != 28)
      throw ValidationError("config: cutoffs must be drawn from {0,7,14,21,28} days");
  if (midas.k < 1 || midas.block_offset < 1 || midas.q_max < 1)
    throw ValidationError("config: midas structure values must be >= 1");
  if (audit_tau < 0 || audit_tau >= 1)
    throw ValidationError("config: audit_tau must lie in [0,1)");
  if (gr_mu <= 0 || gr_mu >= 1) throw ValidationError("config: gr_mu must lie in (0,1)");
  if (crps_draws < 2) throw ValidationError("config: crps_draws must be >= 2");
  for (const auto& t : targets) {
    if (!find_concept(t.topic) && t.topic != "any")
      throw ValidationError("config: target '" + t.id + "' names unknown concept '" +
                            t.topic + "'");
  }
  for (const auto& g : pc_groups)
    for (const auto& name : g.second) {
      bool found = false;
      for (const auto& c : competitors) found = found || c.first == name;
      if (!found)
        throw ValidationError("config: pc group '" + g.first +
                              "' references unknown competitor '" + name + "'");
    }
  if (classifier == "llm") gateway.validate();
}

std::uint64_t RunConfig::stage_seed(std::string_view stage) const {
  return derive_seed(seed, stage);
}

std::string config_reference() {
  return R"(Config file: key = value lines grouped under [section] headers.
Unknown keys are rejected. Defaults in parentheses.

[run]        seed (42); jobs (0 = auto); out (out)
[paths]      dump_submissions; dump_comments; dictionary (bundled);
             truth_labels
[corpus]     concepts (inflation,unemployment); include_selftext (true);
             max_comment_lag_days (7)
[classifier] id (dictionary | llm)
[gateway]    endpoint; model (llama-3-70b-instruct); temperature (0.5);
             concurrency (4); retries (2); timeout_s (60); cache;
             max_document_chars (8000); backoff_base_ms (1000);
             backoff_cap_ms (30000)
[grid]       thresholds (0.1,0.3,0.5,0.7,0.9);
             windows (30,60,90,120,180,365);
             comment_sets (first_level,keyword_all); weighting (0,1);
             submissions_only (true)
[signals]    start, end (YYYY-MM-DD, default: data range);
             audit_tau (0.3); audit_weighting (false)
[sample]     estimation_start (2012-01); eval_start (2018-01);
             eval_end (2023-12); cutoffs (0)
[midas]      k (30); block_offset (30); q_max (3)
[evaluate]   crps_mode (simulate | closed); crps_draws (1000); gr_mu (0.1)
[targets]    <id> = <concept>:<monthly csv path>
[competitors] <name> = <daily csv path>
[pc]         <group> = <competitor name list>
[synth]      seed (42); start (2016-01-01); n_days (2922);
             submissions_per_day (12); comments_per_submission (4);
             phi (0.98); sigma_latent (0.3); rho (0.9); delta (0.2);
             target_loading (0.2); sigma_target (0.25); concept (inflation);
             score_p (0.3); score_shift (-1); nest_prob (0.3)
[accuracy]   classifier (dictionary); temperatures (0.1,0.3,0.5,0.7,0.9);
             repetitions (100); concept (inflation)
)";
}

}  // namespace rednow

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "core/dates.hpp"
#include "core/gateway.hpp"
#include "core/midas.hpp"
#include "core/signals.hpp"
#include "core/synth.hpp"

namespace rednow {

struct TargetSpec {
  std::string id;
  std::string topic;
  std::filesystem::path path;  // monthly CSV month,value
};

// Everything a run needs, sourced from one key=value file with [section]
// headers (see config_reference() for keys and defaults), overridable by
// repeated apply() calls.
struct RunConfig {
  // [run]
  std::uint64_t seed = 42;
  int jobs = 0;  // 0 = hardware concurrency
  std::filesystem::path out = "out";

  // [paths]
  std::filesystem::path dump_submissions;
  std::filesystem::path dump_comments;
  std::filesystem::path dictionary_path;  // empty = bundled dictionary
  std::filesystem::path truth_labels;     // post_id,label CSV for `accuracy`

  // [corpus]
  std::vector<std::string> concepts{"inflation", "unemployment"};
  bool include_selftext = true;
  int max_comment_lag_days = 7;

  // [classifier]
  std::string classifier = "dictionary";  // dictionary | llm

  // [gateway]
  GatewayConfig gateway;

  // [grid]
  GridConfig grid;

  // [signals]
  std::optional<Date> signals_start;
  std::optional<Date> signals_end;
  double audit_tau = 0.3;
  bool audit_weighting = false;

  // [sample]
  MonthIndex estimation_start = month_index(2012, 1);
  MonthIndex eval_start = month_index(2018, 1);
  MonthIndex eval_end = month_index(2023, 12);
  std::vector<int> cutoffs{0};

  // [midas]
  MidasStructure midas;

  // [evaluate]
  std::string crps_mode = "simulate";  // simulate | closed
  int crps_draws = 1000;
  double gr_mu = 0.1;

  // [targets] id = concept:path
  std::vector<TargetSpec> targets;

  // [competitors] name = daily csv path
  std::vector<std::pair<std::string, std::filesystem::path>> competitors;

  // [pc] group = competitor names (comma separated)
  std::vector<std::pair<std::string, std::vector<std::string>>> pc_groups;

  // [synth]
  SynthConfig synth;

  // [accuracy]
  std::string accuracy_classifier = "dictionary";
  std::vector<double> accuracy_temperatures{0.1, 0.3, 0.5, 0.7, 0.9};
  int accuracy_reps = 100;
  std::string accuracy_concept = "inflation";

  static RunConfig from_file(const std::filesystem::path& path);

  // key is "section.name"; throws ValidationError for unknown keys or
  // unparsable values.
  void apply(std::string_view key, std::string_view value);

  void validate() const;

  // labeled split of the run seed
  std::uint64_t stage_seed(std::string_view stage) const;
};

// Human-readable key/default listing for --help.
std::string config_reference();

}  // namespace rednow

// Command-line front end. Links only the shared library's C interface.

#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rednow.h"

namespace {

struct EngineDeleter {
  void operator()(rn_engine* e) const { rn_engine_destroy(e); }
};
using EnginePtr = std::unique_ptr<rn_engine, EngineDeleter>;

int run(const std::string& stage, const std::string& config_path,
        const std::vector<std::pair<std::string, std::string>>& overrides) {
  rn_engine* raw = nullptr;
  if (rn_engine_create(&raw) != RN_OK) {
    std::fprintf(stderr, "error: could not create engine\n");
    return 2;
  }
  EnginePtr engine(raw);

  if (!config_path.empty()) {
    if (rn_status s = rn_engine_load_config(engine.get(), config_path.c_str()); s != RN_OK) {
      std::fprintf(stderr, "error: %s\n", rn_engine_last_error(engine.get()));
      return int(s);
    }
  }
  for (const auto& [key, value] : overrides) {
    if (rn_status s = rn_engine_set(engine.get(), key.c_str(), value.c_str()); s != RN_OK) {
      std::fprintf(stderr, "error: %s\n", rn_engine_last_error(engine.get()));
      return int(s);
    }
  }

  if (rn_status s = rn_engine_run(engine.get(), stage.c_str()); s != RN_OK) {
    std::fprintf(stderr, "error: %s\n", rn_engine_last_error(engine.get()));
    return int(s);
  }
  std::printf("%s: done\n", stage.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reddit-style dump -> daily economic signals -> MIDAS nowcasts"};
  app.set_version_flag("--version", rn_version());
  app.require_subcommand(0, 1);

  std::string config_path;
  std::string seed, jobs, out;
  std::vector<std::string> sets;
  bool pipeline_flag = false;
  app.add_option("--config,-c", config_path, "config file (key=value with [section]s)");
  app.add_option("--seed", seed, "override run.seed");
  app.add_option("--jobs,-j", jobs, "override run.jobs (0 = auto)");
  app.add_option("--out,-o", out, "override run.out");
  app.add_option("--set", sets, "extra overrides as section.key=value")->take_all();
  app.add_flag("--pipeline", pipeline_flag, "run ingest through report");

  static const char* const stages[] = {"ingest",   "classify", "signals",
                                       "nowcast",  "evaluate", "report",
                                       "synth",    "accuracy", "pipeline"};
  static const char* const blurbs[] = {
      "parse dumps, filter by concept keywords, build comment sets",
      "label items with the dictionary or the chat-completion service",
      "build the daily indicator grid and the re-classification audit",
      "recursive out-of-sample nowcasts per (target, indicator, cutoff)",
      "score nowcasts against the AR(1) benchmark",
      "rank indicators, cumulative losses, stability paths, correlations",
      "generate a seeded synthetic corpus and target",
      "macro-F1 harness over a labeled file (temperature sweep)",
      "run ingest through report"};
  for (std::size_t i = 0; i < std::size(stages); ++i)
    app.add_subcommand(stages[i], blurbs[i]);

  auto* cfg_help = app.add_subcommand("config-help", "print the config key reference");

  CLI11_PARSE(app, argc, argv);

  if (cfg_help->parsed()) {
    std::printf("%s", rn_config_reference());
    return 0;
  }

  std::vector<std::pair<std::string, std::string>> overrides;
  if (!seed.empty()) overrides.emplace_back("run.seed", seed);
  if (!jobs.empty()) overrides.emplace_back("run.jobs", jobs);
  if (!out.empty()) overrides.emplace_back("run.out", out);
  for (const auto& kv : sets) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::fprintf(stderr, "error: --set expects section.key=value, got '%s'\n",
                   kv.c_str());
      return 1;
    }
    overrides.emplace_back(kv.substr(0, eq), kv.substr(eq + 1));
  }

  if (app.get_subcommands().empty()) {
    if (!pipeline_flag) {
      std::fprintf(stderr, "error: expected a subcommand or --pipeline\n");
      return 1;
    }
    return run("pipeline", config_path, overrides);
  }
  const std::string stage = app.get_subcommands().front()->get_name();
  return run(stage, config_path, overrides);
}

#pragma once

#include <string>

#include "core/config.hpp"

namespace rednow {

// Pipeline stages. Each stage reads only prior-stage artifacts under
// cfg.out, writes its own deterministically (byte-identical on rerun with
// unchanged inputs), and raises ValidationError naming the stage to run
// when an upstream artifact is missing.
void run_ingest(const RunConfig& cfg);
void run_classify(const RunConfig& cfg);
void run_signals(const RunConfig& cfg);
void run_nowcast(const RunConfig& cfg);
void run_evaluate(const RunConfig& cfg);
void run_report(const RunConfig& cfg);
void run_synth(const RunConfig& cfg);
void run_accuracy(const RunConfig& cfg);

// ingest -> classify -> signals -> nowcast -> evaluate -> report
void run_pipeline(const RunConfig& cfg);

// Dispatch by stage name ("pipeline" included). Unknown -> ValidationError.
void run_stage(const RunConfig& cfg, const std::string& stage);

}  // namespace rednow

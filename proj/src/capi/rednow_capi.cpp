#include "rednow.h"

#include <new>
#include <string>

#include "core/config.hpp"
#include "core/dictionary.hpp"
#include "core/errors.hpp"
#include "core/evaluate.hpp"
#include "core/midas.hpp"
#include "core/pipeline.hpp"

using namespace rednow;

struct rn_engine {
  RunConfig config;
  std::string last_error;
};

namespace {

// ValidationError -> RN_ERR_INVALID, everything else -> RN_ERR_RUNTIME.
template <typename Fn>
rn_status guarded(rn_engine* e, Fn&& fn) {
  try {
    fn();
    if (e) e->last_error.clear();
    return RN_OK;
  } catch (const ValidationError& ex) {
    if (e) e->last_error = ex.what();
    return RN_ERR_INVALID;
  } catch (const std::exception& ex) {
    if (e) e->last_error = ex.what();
    return RN_ERR_RUNTIME;
  } catch (...) {
    if (e) e->last_error = "unknown failure";
    return RN_ERR_RUNTIME;
  }
}

}  // namespace

extern "C" {

const char* rn_version(void) { return "0.1.0"; }

rn_status rn_engine_create(rn_engine** out) {
  if (!out) return RN_ERR_INVALID;
  *out = new (std::nothrow) rn_engine();
  return *out ? RN_OK : RN_ERR_RUNTIME;
}

void rn_engine_destroy(rn_engine* engine) { delete engine; }

rn_status rn_engine_load_config(rn_engine* engine, const char* path) {
  if (!engine || !path) return RN_ERR_INVALID;
  return guarded(engine, [&] { engine->config = RunConfig::from_file(path); });
}

rn_status rn_engine_set(rn_engine* engine, const char* key, const char* value) {
  if (!engine || !key || !value) return RN_ERR_INVALID;
  return guarded(engine, [&] { engine->config.apply(key, value); });
}

rn_status rn_engine_run(rn_engine* engine, const char* stage) {
  if (!engine || !stage) return RN_ERR_INVALID;
  return guarded(engine, [&] { run_stage(engine->config, stage); });
}

const char* rn_engine_last_error(const rn_engine* engine) {
  return engine ? engine->last_error.c_str() : "";
}

const char* rn_config_reference(void) {
  static const std::string ref = config_reference();
  return ref.c_str();
}

rn_status rn_almon_weights(double gamma1, double gamma2, int k, double* weights) {
  if (!weights || k < 0) return RN_ERR_INVALID;
  return guarded(nullptr, [&] {
    const auto w = almon_weights(gamma1, gamma2, k);
    for (int i = 0; i <= k; ++i) weights[i] = w[std::size_t(i)];
  });
}

rn_status rn_crps_normal(double mu, double sigma, double y, double* out) {
  if (!out) return RN_ERR_INVALID;
  return guarded(nullptr, [&] { *out = crps_normal(mu, sigma, y, CrpsMode::closed); });
}

rn_status rn_dict_classify(const char* text, const char* dictionary_csv, int* label) {
  if (!text || !label) return RN_ERR_INVALID;
  return guarded(nullptr, [&] {
    const Dictionary dict =
        dictionary_csv ? Dictionary::load_csv(dictionary_csv) : Dictionary::bundled();
    *label = label_value(dict_classify(text, dict));
  });
}

rn_status rn_dm_test(const double* e_model, const double* e_bench, int n, int loss,
                     double* statistic, double* p_value) {
  if (!e_model || !e_bench || !statistic || !p_value || n < 1 || loss < 0 || loss > 1)
    return RN_ERR_INVALID;
  return guarded(nullptr, [&] {
    const auto r = dm_test({e_model, std::size_t(n)}, {e_bench, std::size_t(n)},
                           loss == 0 ? LossKind::squared : LossKind::absolute);
    *statistic = r.statistic;
    *p_value = r.p_value;
  });
}

}  // extern "C"

/* rednow — social-media economic-signal extraction and MIDAS nowcasting.
 *
 * C interface of the shared library. All engine state lives behind the
 * opaque rn_engine handle; functions return rn_status codes and never throw.
 * Strings returned by the library stay owned by the engine and are valid
 * until the next call on the same handle.
 */
#ifndef REDNOW_H
#define REDNOW_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rn_status {
  RN_OK = 0,
  RN_ERR_INVALID = 1,  /* bad arguments, bad config, missing inputs */
  RN_ERR_RUNTIME = 2,  /* I/O, connectivity, numerical failure */
} rn_status;

typedef struct rn_engine rn_engine;

const char* rn_version(void);

/* Engine lifecycle. rn_engine_create never fails except on allocation. */
rn_status rn_engine_create(rn_engine** out);
void rn_engine_destroy(rn_engine* engine);

/* Load a key=value config file ([section] headers; see the CLI's
 * `config-help` output for the key reference). */
rn_status rn_engine_load_config(rn_engine* engine, const char* path);

/* Set one config key, e.g. rn_engine_set(e, "run.seed", "7"). */
rn_status rn_engine_set(rn_engine* engine, const char* key, const char* value);

/* Run one stage: ingest, classify, signals, nowcast, evaluate, report,
 * synth, accuracy, or pipeline. */
rn_status rn_engine_run(rn_engine* engine, const char* stage);

/* Message describing the last failure on this handle ("" if none). */
const char* rn_engine_last_error(const rn_engine* engine);

/* Key/default reference for the config file format. Static storage. */
const char* rn_config_reference(void);

/* ---- direct computational entry points ---------------------------------- */

/* Exponential lag weights w_i ~ exp(g1*i + g2*i^2), i = 0..k, normalized to
 * sum to one. `weights` must hold k+1 doubles. */
rn_status rn_almon_weights(double gamma1, double gamma2, int k, double* weights);

/* CRPS of the normal predictive distribution N(mu, sigma^2) at outcome y
 * (closed form). */
rn_status rn_crps_normal(double mu, double sigma, double y, double* out);

/* Ternary dictionary classification of a UTF-8 text: +1 UP, 0 NEUTRAL,
 * -1 DOWN. dictionary_csv may be NULL for the bundled word list. */
rn_status rn_dict_classify(const char* text, const char* dictionary_csv, int* label);

/* Diebold-Mariano test (Harvey small-sample correction, one-sided p) of
 * model vs benchmark forecast errors. loss: 0 squared, 1 absolute. */
rn_status rn_dm_test(const double* e_model, const double* e_bench, int n, int loss,
                     double* statistic, double* p_value);

#ifdef __cplusplus
}
#endif

#endif /* REDNOW_H */

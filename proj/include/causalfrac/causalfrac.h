/*
 * causalfrac C API: quantify the non-classicality of conditional probability
 * distributions against finite static causal orders.
 *
 * All functions return CF_OK on success or an error code; the message for
 * the last failing call on the current thread is available through
 * cf_last_error(). Objects are created through cf_*_from_* / cf_*_builtin
 * constructors and released with the matching cf_*_free. Handles are opaque
 * and immutable once created, so they may be shared across threads.
 */

#ifndef CAUSALFRAC_H
#define CAUSALFRAC_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cf_status {
  CF_OK = 0,
  CF_ERROR_INVALID_ARGUMENT = 1,
  CF_ERROR_DUPLICATE_LABEL = 2,
  CF_ERROR_CYCLE = 3,
  CF_ERROR_UNKNOWN_EVENT = 4,
  CF_ERROR_EVENT_MISMATCH = 5,
  CF_ERROR_OUT_OF_RANGE = 6,
  CF_ERROR_SCOPE = 7,
  CF_ERROR_NOT_LOWERSET = 8,
  CF_ERROR_NOT_CAUSAL = 9,
  CF_ERROR_BUDGET_EXCEEDED = 10,
  CF_ERROR_SOLVER = 11,
  CF_ERROR_PARSE = 12,
  CF_ERROR_VALIDATION = 13,
  CF_ERROR_IO = 14,
  CF_ERROR_INTERNAL = 15
} cf_status;

/* Opaque handles. */
typedef struct cf_order cf_order;        /* causal order + per-event alphabets */
typedef struct cf_scenario cf_scenario;  /* order + alphabets + distribution */
typedef struct cf_report cf_report;      /* fraction results + witness */

const char* cf_version(void);
const char* cf_status_name(cf_status status);

/* Message describing the last failure on the calling thread. */
const char* cf_last_error(void);

/* Releases strings returned through char** out parameters. */
void cf_string_free(char* s);

/* ---------------------------------------------------------------------------
 * Orders. JSON form: {"events": ["A", ...], "covers": [["A","C"], ...],
 * "inputs": [2,...], "outputs": [2,...]} with binary alphabets by default.
 * ------------------------------------------------------------------------- */

cf_status cf_order_from_json(const char* json_text, cf_order** out);
cf_status cf_order_from_file(const char* path, cf_order** out);

/* The four-event order of the interleaved Bell protocol;
 * variant is "base" (A->C, D->B) or "extended" (additionally A->B). */
cf_status cf_order_builtin(const char* variant, cf_order** out);

void cf_order_free(cf_order* order);

cf_status cf_order_event_count(const cf_order* order, size_t* out);
/* Borrowed pointer, valid while the order lives. */
cf_status cf_order_label(const cf_order* order, size_t index, const char** out);
cf_status cf_order_leq(const cf_order* order, size_t a, size_t b, int* out);
cf_status cf_order_to_json(const cf_order* order, char** out_json);

/* ---------------------------------------------------------------------------
 * Causal function enumeration.
 * ------------------------------------------------------------------------- */

/* Count of causal functions per the product formula. *count is valid only
 * when *count_is_exact is nonzero (the count fits in 64 bits); *log2_count
 * is always filled. */
cf_status cf_enumeration_count(const cf_order* order, double* log2_count, uint64_t* count,
                               int* count_is_exact);

/* Function `index` of the deterministic enumeration, serialized as the JSON
 * list of its per-event behaviour tables. */
cf_status cf_function_json(const cf_order* order, uint64_t index, char** out_json);

/* ---------------------------------------------------------------------------
 * Scenarios. JSON form is either explicit (events/covers/inputs/outputs plus
 * a probability table, one row per joint input index, entries as decimal
 * strings) or {"builtin": name, ...params}.
 * ------------------------------------------------------------------------- */

/* tol < 0 selects the default for ingested tables (1e-6). */
cf_status cf_scenario_from_json(const char* json_text, double tol, int renormalize,
                                cf_scenario** out);
cf_status cf_scenario_from_file(const char* path, double tol, int renormalize,
                                cf_scenario** out);

/* Builtins: "interleaved-bell" (gamma0, gamma1, variant), "pr-box",
 * "bell-tsirelson". Unused parameters are ignored. */
cf_status cf_scenario_builtin(const char* name, double gamma0, double gamma1,
                              const char* variant, cf_scenario** out);

void cf_scenario_free(cf_scenario* scenario);

cf_status cf_scenario_to_json(const cf_scenario* scenario, char** out_json);
cf_status cf_scenario_event_count(const cf_scenario* scenario, size_t* out);
cf_status cf_scenario_table_size(const cf_scenario* scenario, uint64_t* input_count,
                                 uint64_t* output_count);
cf_status cf_scenario_prob(const cf_scenario* scenario, uint64_t input, uint64_t output,
                           double* out);

/* Copy of the scenario's order (caller frees). */
cf_status cf_scenario_order(const cf_scenario* scenario, cf_order** out);

/* Same distribution table checked against a different order on the same
 * event list (e.g. the extended interleaved order). */
cf_status cf_scenario_with_order(const cf_scenario* scenario, const cf_order* order,
                                 cf_scenario** out);

/* ---------------------------------------------------------------------------
 * Causality check.
 * ------------------------------------------------------------------------- */

typedef struct cf_causality {
  int causal;
  double worst_deviation;
  /* Filled when causal == 0: the first violating lowerset (event bitmask)
   * and joint input pair. */
  uint32_t lowerset_mask;
  uint64_t input_a;
  uint64_t input_b;
} cf_causality;

/* tol < 0 selects the scenario's ingestion tolerance. */
cf_status cf_check_causality(const cf_scenario* scenario, double tol, cf_causality* out);

/* ---------------------------------------------------------------------------
 * Fractions.
 * ------------------------------------------------------------------------- */

typedef struct cf_fraction_options {
  uint64_t budget;     /* max causal functions for the LP; 0 selects 2^24 */
  int collect_witness; /* nonzero: keep the local-fraction witness */
} cf_fraction_options;

/* Computes local fraction, no-signalling local fraction, no-signalling
 * fraction, and the non-classical-signalling lower bound. opts may be NULL. */
cf_status cf_fractions(const cf_scenario* scenario, const cf_fraction_options* opts,
                       cf_report** out);

void cf_report_free(cf_report* report);

/* Keys: lf, nslf, nsf, bound_raw, bound, lf_raw, nslf_raw, nsf_raw,
 * lf_seconds, nslf_seconds, nsf_seconds, lf_iterations, nslf_iterations,
 * nsf_iterations. */
cf_status cf_report_value(const cf_report* report, const char* key, double* out);

cf_status cf_report_witness_size(const cf_report* report, size_t* out);
cf_status cf_report_witness_entry(const cf_report* report, size_t k, uint64_t* function_index,
                                  double* weight);

/* ---------------------------------------------------------------------------
 * Interleaved-Bell parameter sweeps.
 * ------------------------------------------------------------------------- */

/* Quantity bitmask values for cf_sweep_options.quantities. */
enum {
  CF_QUANTITY_LF = 1,
  CF_QUANTITY_NSLF = 2,
  CF_QUANTITY_NSF = 4,
  CF_QUANTITY_BOUND = 8,
  CF_QUANTITY_ALL = 15
};

typedef struct cf_sweep_options {
  int resolution;      /* grid points per axis over [0, pi]; 0 selects 100 */
  const char* variant; /* "base" or "extended"; NULL selects base */
  const char* out_dir; /* required; receives sweep.csv and heatmaps */
  unsigned quantities; /* CF_QUANTITY_* bitmask; 0 selects all */
  int write_heatmaps;  /* nonzero: write <quantity>.ppm + .txt sidecars */
  int threads;         /* 0: CAUSALFRAC_THREADS env var, then hardware */
  uint64_t budget;     /* 0 selects 2^24 */
} cf_sweep_options;

typedef void (*cf_sweep_progress)(int done, int total, void* user);

/* Runs the grid and writes sweep.csv (columns gamma0, gamma1, lf, nslf, nsf,
 * bound_raw, bound; row-major, gamma0 outer). Per-cell solver failures are
 * recorded as NaN rows and counted in *failed_cells without aborting. */
cf_status cf_sweep_run(const cf_sweep_options* opts, cf_sweep_progress progress, void* user,
                       int* failed_cells);

#ifdef __cplusplus
}
#endif

#endif /* CAUSALFRAC_H */

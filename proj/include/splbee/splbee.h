/*
 * splbee — multi-objective bee-swarm product configuration for software
 * product lines, as a C shared-library API.
 *
 * All handles are opaque; every fallible call returns a status code and
 * leaves a human-readable message in splbee_last_error() (thread-local).
 * Strings returned through char** out-parameters are owned by the caller
 * and released with splbee_string_free().
 */
#ifndef SPLBEE_H
#define SPLBEE_H

#include <stdint.h>

#if defined(_WIN32)
#define SPLBEE_API __declspec(dllexport)
#else
#define SPLBEE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum splbee_status {
  SPLBEE_OK = 0,
  SPLBEE_ERR_IO = 1,       /* file missing or unwritable */
  SPLBEE_ERR_PARSE = 2,    /* malformed DIMACS / CSV / JSON input */
  SPLBEE_ERR_INVALID = 3,  /* argument or parameter out of contract */
  SPLBEE_ERR_UNSAT = 4,    /* model has no valid product */
  SPLBEE_ERR_LIMIT = 5,    /* enumeration bound exceeded */
  SPLBEE_ERR_INTERNAL = 6
} splbee_status;

typedef struct splbee_model splbee_model;
typedef struct splbee_attrs splbee_attrs;

SPLBEE_API const char* splbee_version(void);
SPLBEE_API const char* splbee_status_name(splbee_status status);

/* Message of the most recent failure on this thread; empty string if none. */
SPLBEE_API const char* splbee_last_error(void);

SPLBEE_API void splbee_string_free(char* s);

/* ---- feature models -------------------------------------------------- */

/* Loads a DIMACS CNF file; mandatory_path (nullable) is a sidecar listing
 * one mandatory feature index per line. */
SPLBEE_API splbee_status splbee_model_load(const char* dimacs_path,
                                           const char* mandatory_path,
                                           splbee_model** out);

SPLBEE_API splbee_status splbee_model_parse(const char* dimacs_text, const char* name,
                                            splbee_model** out);

/* Synthetic model, satisfiable by construction and deterministic in seed. */
SPLBEE_API splbee_status splbee_model_generate(uint32_t features, uint32_t clauses,
                                               uint32_t min_clause_len,
                                               uint32_t max_clause_len, uint64_t seed,
                                               splbee_model** out);

SPLBEE_API splbee_status splbee_model_dimacs(const splbee_model* model, char** out_text);
SPLBEE_API uint32_t splbee_model_features(const splbee_model* model);
SPLBEE_API uint32_t splbee_model_clauses(const splbee_model* model);
SPLBEE_API void splbee_model_free(splbee_model* model);

/* ---- feature attributes ---------------------------------------------- */

/* Random attribute table (cost / used_before / defects), deterministic in
 * (model feature count, seed). */
SPLBEE_API splbee_status splbee_attrs_augment(const splbee_model* model, uint64_t seed,
                                              splbee_attrs** out);

SPLBEE_API splbee_status splbee_attrs_load(const splbee_model* model, const char* csv_path,
                                           splbee_attrs** out);
SPLBEE_API splbee_status splbee_attrs_save(const splbee_attrs* attrs, const char* csv_path);
SPLBEE_API void splbee_attrs_free(splbee_attrs* attrs);

/* ---- preprocessing ---------------------------------------------------- */

/* JSON: {F, C, mandatory, constants_one, constants_zero, declined,
 * free_count, W}. */
SPLBEE_API splbee_status splbee_preprocess_json(const splbee_model* model, char** out_json);

/* ---- optimizer -------------------------------------------------------- */

typedef enum splbee_repair_mode {
  SPLBEE_REPAIR_FULL = 0,
  SPLBEE_REPAIR_BOUNDED = 1,
  SPLBEE_REPAIR_OFF = 2
} splbee_repair_mode;

typedef enum splbee_move_semantics {
  SPLBEE_MOVE_WORD_ARITH = 0,
  SPLBEE_MOVE_BITWISE_PROB = 1
} splbee_move_semantics;

typedef struct splbee_run_options {
  uint32_t population;           /* default 3000 */
  double scout_fraction;         /* default 0.02 */
  double leader_weight;          /* default 2.5 */
  double elite_weight;           /* default 2.12 */
  uint32_t archive_capacity;     /* default 5000 */
  uint32_t sections;             /* default 10, at most 254 */
  int64_t max_iterations;        /* default 100 */
  double budget_seconds;         /* <= 0: no wall-clock bound */
  uint64_t seed;
  uint32_t repetitions;          /* default 1 */
  int repair_mode;               /* splbee_repair_mode, default FULL */
  uint32_t repair_rounds;        /* bound for BOUNDED, default 10 */
  int move_semantics;            /* splbee_move_semantics, default WORD_ARITH */
  uint32_t workers;              /* 0: SPLBEE_WORKERS env, then hardware */
} splbee_run_options;

SPLBEE_API void splbee_run_options_init(splbee_run_options* options);

/* Runs `repetitions` independent optimizations with seeds seed+0..seed+r-1,
 * writes front_###.csv, reference.csv and report.json into out_dir, and
 * returns the report JSON. */
SPLBEE_API splbee_status splbee_run_experiment(const splbee_model* model,
                                               const splbee_attrs* attrs,
                                               const splbee_run_options* options,
                                               const char* out_dir, char** out_report_json);

/* ---- oracle and indicators -------------------------------------------- */

/* Exhaustive Pareto front for models with at most 24 free features; writes
 * the front CSV and returns a JSON summary. */
SPLBEE_API splbee_status splbee_oracle_front(const splbee_model* model,
                                             const splbee_attrs* attrs, const char* out_csv,
                                             char** out_json);

/* JSON: {hv, epsilon, igd, pfs, spread} of a front CSV scored against a
 * reference front CSV (normalization bounds come from the reference). */
SPLBEE_API splbee_status splbee_metrics_json(const char* front_csv, const char* reference_csv,
                                             char** out_json);

/* Per-metric Vargha-Delaney effect size between two report.json files:
 * probability that the first report's per-run value is larger. */
SPLBEE_API splbee_status splbee_compare_json(const char* report_a, const char* report_b,
                                             char** out_json);

/* Predicted parallel speedup (F+C+N) / ((F+C)/P + N). Returns < 0 and sets
 * splbee_last_error() if any input is not positive. */
SPLBEE_API double splbee_predict_speedup(double iterations, double population, double features,
                                         double constraints, double processors);

#ifdef __cplusplus
}
#endif

#endif /* SPLBEE_H */

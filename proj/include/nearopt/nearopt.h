/* C interface to the nearopt library. Every function returns a status code;
 * on failure nearopt_last_error() describes the error for the calling thread.
 * Objects are opaque handles released with their *_free function. */
#ifndef NEAROPT_H
#define NEAROPT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define NEAROPT_API __declspec(dllexport)
#else
#define NEAROPT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nearopt_status {
    NEAROPT_OK = 0,
    NEAROPT_INVALID_ARGUMENT = 1,
    NEAROPT_INFEASIBLE = 2,
    NEAROPT_UNBOUNDED = 3,
    NEAROPT_ITERATION_LIMIT = 4,
    NEAROPT_NUMERICAL = 5,
    NEAROPT_IO = 6,
    NEAROPT_PARSE = 7,
    NEAROPT_INTERNAL = 99
} nearopt_status;

typedef struct nearopt_lp nearopt_lp;
typedef struct nearopt_solution nearopt_solution;
typedef struct nearopt_run nearopt_run;

NEAROPT_API const char* nearopt_version(void);
NEAROPT_API const char* nearopt_status_string(nearopt_status status);
/* Message of the last failed call on this thread; "" when none. */
NEAROPT_API const char* nearopt_last_error(void);

/* Hub presets. */
NEAROPT_API size_t nearopt_preset_count(void);
NEAROPT_API const char* nearopt_preset_name(size_t index);

/* LPs. */
NEAROPT_API nearopt_status nearopt_lp_read_file(const char* path, nearopt_lp** out);
NEAROPT_API nearopt_status nearopt_lp_from_text(const char* text, nearopt_lp** out);
NEAROPT_API nearopt_status nearopt_lp_from_preset(const char* preset, nearopt_lp** out);
NEAROPT_API void nearopt_lp_free(nearopt_lp* lp);
NEAROPT_API size_t nearopt_lp_rows(const nearopt_lp* lp);
NEAROPT_API size_t nearopt_lp_cols(const nearopt_lp* lp);
/* Column name, or NULL when out of range. Valid while the LP lives. */
NEAROPT_API const char* nearopt_lp_column_name(const nearopt_lp* lp, size_t col);

/* Two-phase Simplex on the LP's own costs. */
NEAROPT_API nearopt_status nearopt_lp_solve(const nearopt_lp* lp, nearopt_solution** out);
NEAROPT_API void nearopt_solution_free(nearopt_solution* solution);
/* NEAROPT_OK, NEAROPT_INFEASIBLE or NEAROPT_UNBOUNDED. */
NEAROPT_API nearopt_status nearopt_solution_status(const nearopt_solution* solution);
NEAROPT_API double nearopt_solution_objective(const nearopt_solution* solution);
NEAROPT_API size_t nearopt_solution_pivots(const nearopt_solution* solution);
/* Copies min(len, cols) vertex values; returns the vertex length. */
NEAROPT_API size_t nearopt_solution_vertex(const nearopt_solution* solution, double* values,
                                           size_t len);

/* Experiments. `config_json` is an experiment config as a JSON string. A
 * config with a sweep section yields one record per grid point. */
NEAROPT_API nearopt_status nearopt_run_experiment(const char* config_json, nearopt_run** out);
NEAROPT_API nearopt_status nearopt_run_sweep(const char* config_json, nearopt_run** out);
NEAROPT_API void nearopt_run_free(nearopt_run* run);
NEAROPT_API size_t nearopt_run_record_count(const nearopt_run* run);
/* Record as a single-line JSON string; NULL when out of range. */
NEAROPT_API const char* nearopt_run_record(const nearopt_run* run, size_t index);
/* Sweep summary (axis, grid, pivot slopes, curves) as JSON; "{}" for a
 * single experiment. */
NEAROPT_API const char* nearopt_run_summary(const nearopt_run* run);
/* Appends every record to `jsonl_path` and writes the tables to `dir`. */
NEAROPT_API nearopt_status nearopt_run_write(const nearopt_run* run, const char* jsonl_path,
                                             const char* dir);

/* Writes tables from a file of line-delimited records. */
NEAROPT_API nearopt_status nearopt_report(const char* jsonl_path, const char* dir);

#ifdef __cplusplus
}
#endif

#endif /* NEAROPT_H */

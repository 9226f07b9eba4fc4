/*
 * nsgadyn C API.
 *
 * All objects are opaque handles created and destroyed through this API.
 * Every fallible call returns an nd_status; on failure nd_last_error()
 * describes the problem for the calling thread. Strings returned by accessor
 * functions are owned by the handle and stay valid until it is destroyed.
 */
#ifndef NSGADYN_H
#define NSGADYN_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(NSGADYN_BUILDING)
#    define ND_API __declspec(dllexport)
#  else
#    define ND_API __declspec(dllimport)
#  endif
#else
#  define ND_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nd_status {
    ND_OK = 0,
    ND_ERR_INVALID_ARGUMENT = 1, /* bad option, value or parameter */
    ND_ERR_IO = 2,               /* output files could not be written */
    ND_ERR_INTERNAL = 3
} nd_status;

typedef struct nd_config nd_config;
typedef struct nd_result nd_result;
typedef struct nd_verification nd_verification;

ND_API const char* nd_version(void);

/* Message for the last failed call on this thread ("" if none). */
ND_API const char* nd_last_error(void);

/* ---- experiment configuration ---------------------------------------- */

ND_API nd_status nd_config_create(nd_config** out);
ND_API void nd_config_destroy(nd_config* config);

/* Sets one option. Keys: benchmark (ojzj|omm), n, k, pop-factor, pop-size,
 * variant (random|fixed), selection (fair|uniform|tournament), reps, seed,
 * max-iters, out, dynamics, survival, workers, mu. Axis options accept
 * comma-separated lists. Later calls override earlier ones. */
ND_API nd_status nd_config_set(nd_config* config, const char* key, const char* value);

/* Applies a JSON object whose keys are the option names above. */
ND_API nd_status nd_config_load_file(nd_config* config, const char* path);

/* Number of grid cells the configuration expands to. */
ND_API nd_status nd_config_cell_count(const nd_config* config, size_t* out);

/* Output directory configured with "out" ("" if unset). */
ND_API const char* nd_config_out_dir(const nd_config* config);

/* ---- running experiments ---------------------------------------------- */

/* Runs a single cell; fails with ND_ERR_INVALID_ARGUMENT when the
 * configuration expands to anything other than one valid cell. */
ND_API nd_status nd_run(const nd_config* config, nd_result** out);

/* Runs every cell of the grid; invalid cells are kept with an error text. */
ND_API nd_status nd_sweep(const nd_config* config, nd_result** out);

ND_API void nd_result_destroy(nd_result* result);

typedef struct nd_cell_summary {
    size_t cell_id;
    int benchmark; /* 0 = OneJumpZeroJump, 1 = OneMinMax */
    int n;
    int k;
    size_t population_size;
    double pop_factor;
    int variant;   /* 0 = random ties, 1 = fixed shared sorting */
    int selection; /* 0 = fair, 1 = uniform, 2 = tournament */
    size_t reps;
    size_t covered;
    double mean_evals;
    double std_evals;
    double median_evals;
    uint64_t min_evals;
    uint64_t max_evals;
    double lb_evals;
    double ratio;
    int above_lower_bound;
    int failed; /* nonzero when the cell could not run; see nd_result_cell_error */
} nd_cell_summary;

typedef struct nd_rep_summary {
    uint64_t seed;
    int covered;
    uint64_t iterations;
    uint64_t evaluations;
    uint64_t invariant_violations;
} nd_rep_summary;

ND_API size_t nd_result_cell_count(const nd_result* result);
ND_API nd_status nd_result_cell(const nd_result* result, size_t cell, nd_cell_summary* out);
ND_API const char* nd_result_cell_error(const nd_result* result, size_t cell);
ND_API nd_status nd_result_rep(const nd_result* result, size_t cell, size_t rep, nd_rep_summary* out);

/* Mean occupation at a ones-count, averaged over repetitions with a valid
 * dynamics window. *reps_out receives the number of such repetitions. */
ND_API nd_status nd_result_occupation(const nd_result* result, size_t cell, int ones_count, double* out,
                                      size_t* reps_out);

/* Human-readable aggregate report. */
ND_API const char* nd_result_report(const nd_result* result);

/* Writes runs.csv, dynamics.csv (when recorded) and, if with_sweep is
 * nonzero, sweep.csv into dir. */
ND_API nd_status nd_result_write(const nd_result* result, const char* dir, int with_sweep);

/* ---- verification ------------------------------------------------------ */

typedef struct nd_verify_options {
    int n_max;        /* 2..64 */
    uint64_t trials;  /* random populations/fronts for the structural checks */
    uint64_t seed;
    /* Fault injection: when fault_n > 0, entry (fault_v, fault_w) of the
     * fault_n matrix is shifted by fault_delta before checking. */
    int fault_n;
    int fault_v;
    int fault_w;
    double fault_delta;
} nd_verify_options;

ND_API void nd_verify_options_init(nd_verify_options* options);
ND_API nd_status nd_verify(const nd_verify_options* options, nd_verification** out);
ND_API int nd_verification_passed(const nd_verification* verification);
ND_API const char* nd_verification_text(const nd_verification* verification);
ND_API const char* nd_verification_json(const nd_verification* verification);
ND_API void nd_verification_destroy(nd_verification* verification);

/* ---- closed-form constants --------------------------------------------- */

typedef struct nd_bounds {
    double jump_population;     /* c (n - 2k + 3) */
    double minmax_population;   /* c (n + 1) */
    double occ_extremal_random; /* 4e/(e-1) */
    double occ_extremal_fixed;  /* 2ec/(ec-c+2) */
    double lb_ojzj_evals;
    double rt_fixed_evals;
    double lb_omm_evals;        /* NaN unless has_mu */
    int has_mu;
    int lower_bound_in_regime;
    int fixed_in_regime;
    int minmax_in_regime;
    size_t c_seq_length;
} nd_bounds;

/* k = 0 skips the jump quantities; pass has_mu = 0 to skip the OneMinMax bound. */
ND_API nd_status nd_theory_bounds(int n, int k, double c, int has_mu, double mu, nd_bounds* out);

/* Copies up to capacity entries of the c_i sequence; *length gets the full length. */
ND_API nd_status nd_theory_c_sequence(int n, int k, double c, double* values, size_t capacity, size_t* length);

/* Writes the text report into buffer (truncated, always NUL-terminated when
 * capacity > 0); *needed receives the full length including the NUL. */
ND_API nd_status nd_theory_report(int n, int k, double c, int has_mu, double mu, char* buffer, size_t capacity,
                                  size_t* needed);

#ifdef __cplusplus
}
#endif

#endif

/*
 * C interface to the trilemma library.
 *
 * Functions returning trilemma_status report failures through the status
 * code; trilemma_last_error() then holds a message for the calling thread.
 * Command entry points (trilemma_cmd_*) return process exit codes instead:
 * 0 success, 1 data or validation failure, 2 usage or I/O failure.
 */
#ifndef TRILEMMA_H
#define TRILEMMA_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define TRILEMMA_API __declspec(dllexport)
#else
#define TRILEMMA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum trilemma_status {
    TRILEMMA_OK = 0,
    TRILEMMA_ERR_INVALID_ARGUMENT = 1,
    TRILEMMA_ERR_IO = 2,
    TRILEMMA_ERR_MISSING_COLUMN = 3,
    TRILEMMA_ERR_UNPARSABLE_DATE = 4,
    TRILEMMA_ERR_NON_NUMERIC_VALUE = 5,
    TRILEMMA_ERR_NEGATIVE_VALUE = 6,
    TRILEMMA_ERR_DUPLICATE_DATE = 7,
    TRILEMMA_ERR_DUPLICATE_FRAME = 8,
    TRILEMMA_ERR_UNKNOWN_FRAME = 9,
    TRILEMMA_ERR_NO_FRAMES_FOUND = 10,
    TRILEMMA_ERR_EMPTY_INTERSECTION = 11,
    TRILEMMA_ERR_ALL_ZERO = 12,
    TRILEMMA_ERR_FRAME_MISSING = 13,
    TRILEMMA_ERR_WINDOW_TOO_LARGE = 14,
    TRILEMMA_ERR_EMPTY_SERIES = 15,
    TRILEMMA_ERR_NON_POSITIVE_BLOCK_TIME = 16,
    TRILEMMA_ERR_ZERO_VARIANCE = 17,
    TRILEMMA_ERR_INSUFFICIENT_DATA = 18,
    TRILEMMA_ERR_INVALID_CONFIG = 19,
    TRILEMMA_ERR_INTERNAL = 99
} trilemma_status;

typedef enum trilemma_chain { TRILEMMA_CHAIN_ALGORAND = 0, TRILEMMA_CHAIN_ETHEREUM2 = 1 } trilemma_chain;

typedef enum trilemma_layer { TRILEMMA_LAYER_CONSENSUS = 0, TRILEMMA_LAYER_TRANSACTION = 1 } trilemma_layer;

typedef enum trilemma_scheme {
    TRILEMMA_SCHEME_SEED_CHAIN = 0,
    TRILEMMA_SCHEME_XOR_ACCUMULATOR = 1
} trilemma_scheme;

TRILEMMA_API const char* trilemma_version(void);
TRILEMMA_API const char* trilemma_status_name(trilemma_status status);
/* Message of the last failed call on this thread; empty after a success. */
TRILEMMA_API const char* trilemma_last_error(void);
/* Frees strings returned through char** out-parameters. */
TRILEMMA_API void trilemma_string_free(char* s);

/* ---- decentralization indices ---- */

typedef struct trilemma_indices {
    double shannon_entropy;
    double gini;
    double hhi;
    int64_t nakamoto;
    size_t unit_count;
} trilemma_indices;

/* Indices over the positive entries of values[0..n). */
TRILEMMA_API trilemma_status trilemma_compute_indices(const double* values, size_t n, double threshold,
                                                      trilemma_indices* out);

/* ---- datasets ---- */

typedef struct trilemma_dataset trilemma_dataset;

TRILEMMA_API trilemma_status trilemma_dataset_load(const char* directory, trilemma_chain chain,
                                                   trilemma_dataset** out);
TRILEMMA_API void trilemma_dataset_free(trilemma_dataset* dataset);
TRILEMMA_API size_t trilemma_dataset_frame_count(const trilemma_dataset* dataset);
/* Frame names in lexicographic order; NULL when index is out of range. */
TRILEMMA_API const char* trilemma_dataset_frame_name(const trilemma_dataset* dataset, size_t index);
/* Values of a frame in date order. The array lives as long as the dataset. */
TRILEMMA_API trilemma_status trilemma_dataset_frame_values(const trilemma_dataset* dataset, const char* frame,
                                                           const double** values, size_t* count);
/* Validation report as JSON ({"pass":..., "violations":[...]}); free with trilemma_string_free. */
TRILEMMA_API trilemma_status trilemma_dataset_validate(const trilemma_dataset* dataset, char** json_out,
                                                       int* pass);
TRILEMMA_API trilemma_status trilemma_dataset_layer_indices(const trilemma_dataset* dataset, trilemma_layer layer,
                                                            double threshold, trilemma_indices* out);

/* ---- attack simulation ---- */

typedef struct trilemma_sim_config {
    trilemma_scheme scheme;
    double adversary_stake;
    int64_t honest_validators;
    int64_t rounds;
    int64_t trials;
    uint32_t grinding_bits;
    uint64_t rng_seed;
} trilemma_sim_config;

typedef struct trilemma_sim_result {
    double adversary_share;
    double bias;
    double standard_error;
    int64_t max_consecutive_adversary;
    int64_t adversary_rounds;
    int64_t total_rounds;
    int64_t ground_rounds;
    int64_t ground_adversary_rounds;
    double conditional_share;
    double conditional_standard_error;
} trilemma_sim_result;

TRILEMMA_API void trilemma_sim_config_init(trilemma_sim_config* config);
TRILEMMA_API trilemma_status trilemma_simulate(const trilemma_sim_config* config, trilemma_sim_result* out);

/* ---- commands ---- */

typedef struct trilemma_decentralization_args {
    const char* algorand_dir;
    const char* ethereum_dir;
    const char* out_dir;
    size_t window;
    double threshold;
    const char* const* rolling_indices; /* "shannon", "gini", "nakamoto", "hhi" */
    size_t rolling_index_count;
    int compare_published;
} trilemma_decentralization_args;

typedef struct trilemma_scalability_args {
    const char* algorand_dir;
    const char* ethereum_dir;
    const char* out_dir;
    double algorand_block_time;
} trilemma_scalability_args;

typedef struct trilemma_simulate_args {
    const char* scheme; /* "seed-chain" or "xor" */
    double alpha;
    uint32_t grinding_bits;
    int64_t rounds;
    int64_t trials;
    int64_t honest_validators;
    uint64_t seed;
    const double* sweep; /* overrides alpha when sweep_count > 0 */
    size_t sweep_count;
    const char* out_dir; /* JSON to stdout when NULL */
} trilemma_simulate_args;

typedef struct trilemma_report_args {
    const char* algorand_dir;
    const char* ethereum_dir;
    const char* out_dir;
    size_t window;
    double threshold;
    double algorand_block_time;
    const double* alphas;
    size_t alpha_count;
    uint32_t grinding_bits;
    int64_t rounds;
    int64_t trials;
    int64_t honest_validators;
    uint64_t seed;
    int timestamp;
} trilemma_report_args;

/* Fill argument structs with the documented defaults. */
TRILEMMA_API void trilemma_decentralization_args_init(trilemma_decentralization_args* args);
TRILEMMA_API void trilemma_scalability_args_init(trilemma_scalability_args* args);
TRILEMMA_API void trilemma_simulate_args_init(trilemma_simulate_args* args);
TRILEMMA_API void trilemma_report_args_init(trilemma_report_args* args);

/* out_path may be NULL to print the JSON report on stdout. */
TRILEMMA_API int trilemma_cmd_validate(const char* data_dir, const char* chain, const char* out_path);
TRILEMMA_API int trilemma_cmd_decentralization(const trilemma_decentralization_args* args);
TRILEMMA_API int trilemma_cmd_scalability(const trilemma_scalability_args* args);
TRILEMMA_API int trilemma_cmd_simulate(const trilemma_simulate_args* args);
TRILEMMA_API int trilemma_cmd_report(const trilemma_report_args* args);

#ifdef __cplusplus
}
#endif

#endif /* TRILEMMA_H */

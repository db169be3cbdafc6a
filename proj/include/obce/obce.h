/* obce - one-bit channel estimation simulator, C API.
 *
 * All functions returning obce_status set a thread-local error message
 * retrievable with obce_last_error() on failure. Handles are opaque and
 * must be released with the matching *_free function.
 */
#ifndef OBCE_H
#define OBCE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define OBCE_API __declspec(dllexport)
#else
#define OBCE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    OBCE_OK = 0,
    OBCE_ERR_INVALID_ARGUMENT = 1,
    OBCE_ERR_IO = 2,
    OBCE_ERR_NUMERICAL = 3,
    OBCE_ERR_INTERNAL = 4
} obce_status;

/* Algorithm selection bitmask. */
#define OBCE_ALG_ONE_BIT_GAMP 1u
#define OBCE_ALG_AWGN_GAMP 2u
#define OBCE_ALG_LS_UNQUANTIZED 4u

/* Sweep axis. */
typedef enum {
    OBCE_AXIS_SNR_DB = 0,
    OBCE_AXIS_FRAMES = 1,
    OBCE_AXIS_RF_CHAINS = 2
} obce_axis;

typedef struct obce_config obce_config;
typedef struct obce_report obce_report;

typedef struct {
    double axis_value;
    const char* algorithm; /* owned by the report */
    double mean_nmse;
    double median_nmse;
    double stderr_nmse;
    uint32_t trials;
    uint64_t seed_lo;
    uint64_t seed_hi;
    int failed; /* nonzero when >1% of trials aborted */
} obce_report_row;

/* Last error message for the calling thread; empty string if none. */
OBCE_API const char* obce_last_error(void);

OBCE_API const char* obce_version(void);

/* Scenario configuration. A fresh config carries the default scenario
 * (64x16 antennas, 4 RF chain pairs, 2 paths, 64 frames). */
OBCE_API obce_config* obce_config_new(void);
OBCE_API void obce_config_free(obce_config* cfg);

/* Loads a flat key/value config file, replacing all fields. */
OBCE_API obce_status obce_config_load(obce_config* cfg, const char* path);

/* Sets one field by its config-file key (e.g. "n_tx", "snr_db"). */
OBCE_API obce_status obce_config_set(obce_config* cfg, const char* key,
                                     const char* value);

/* Runs one Monte Carlo trial. nmse_raw / nmse_scaled are arrays of
 * length 3 indexed by OBCE_ALG bit position; entries for unselected
 * algorithms are set to NaN. nmse_scaled and trace_csv_path may be NULL.
 * When trace_csv_path is given, per-iteration solver diagnostics are
 * written there as CSV. */
OBCE_API obce_status obce_trial_run(const obce_config* cfg, uint64_t seed,
                                    uint32_t algorithms, double nmse_raw[3],
                                    double nmse_scaled[3],
                                    const char* trace_csv_path);

/* Runs a sweep: for each axis value, `trials` trials seeded
 * seed_base + trial index, identical seed list at every value. */
OBCE_API obce_status obce_sweep_run(const obce_config* cfg, obce_axis axis,
                                    const double* values, size_t n_values,
                                    uint32_t algorithms, uint32_t trials,
                                    uint64_t seed_base, obce_report** out);

OBCE_API size_t obce_report_rows(const obce_report* report);
OBCE_API obce_status obce_report_get_row(const obce_report* report, size_t index,
                                     obce_report_row* out);
OBCE_API obce_status obce_report_write_csv(const obce_report* report,
                                           const char* path);
OBCE_API void obce_report_free(obce_report* report);

/* Writes the binary measurement dump (w_real, y_sign, h_v_real) for the
 * realization drawn from `seed`: four little-endian int64 header fields
 * (rows, cols, y length, h length) followed by row-major little-endian
 * f64 payloads. */
OBCE_API obce_status obce_dump_measurement(const obce_config* cfg,
                                           uint64_t seed, const char* path);

#ifdef __cplusplus
}
#endif

#endif /* OBCE_H */

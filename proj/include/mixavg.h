/* mixavg -- model-based clustering with Occam's-window model averaging.
 *
 * C interface to the shared library. All functions return a status code;
 * mixavg_last_error() gives a thread-local message for the last failure.
 * Objects come back as opaque handles that must be released with the
 * matching *_free function. Strings returned through out-parameters are
 * owned by the caller and released with mixavg_string_free().
 */
#ifndef MIXAVG_H
#define MIXAVG_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mixavg_status {
  MIXAVG_OK = 0,
  MIXAVG_ERR_INVALID_ARGUMENT = 1, /* bad input, file, or flag value */
  MIXAVG_ERR_FIT_FAILED = 2,       /* no model could be fitted */
  MIXAVG_ERR_INTERNAL = 3
} mixavg_status;

typedef struct mixavg_dataset mixavg_dataset;
typedef struct mixavg_sweep mixavg_sweep;

const char* mixavg_version(void);
const char* mixavg_last_error(void);
void mixavg_string_free(char* s);

/* ---- data ---- */

/* label_column may be NULL for unlabeled data. */
mixavg_status mixavg_dataset_load_csv(const char* path, const char* label_column,
                                      mixavg_dataset** out);
mixavg_status mixavg_dataset_standardize(mixavg_dataset* d);
void mixavg_dataset_free(mixavg_dataset* d);
int64_t mixavg_dataset_rows(const mixavg_dataset* d);
int64_t mixavg_dataset_cols(const mixavg_dataset* d);
int mixavg_dataset_has_labels(const mixavg_dataset* d);

/* ---- model sweep and averaging ---- */

/* structures: comma-separated three-letter codes, or NULL for all ten
 * fittable ones. threads <= 0 picks the hardware count; the
 * MIXAVG_THREADS environment variable overrides a zero value. */
mixavg_status mixavg_sweep_run(const mixavg_dataset* d, const char* structures,
                               int g_min, int g_max, int restarts, uint64_t seed,
                               double tol, int max_iter, int threads,
                               mixavg_sweep** out);
void mixavg_sweep_free(mixavg_sweep* s);

/* BIC table as a JSON document. */
mixavg_status mixavg_sweep_report_json(const mixavg_sweep* s, char** out_json);

/* Full report: window, weights (Case I and II), best/AAP/MA partitions
 * and memberships, ARI values when the dataset carries labels. */
mixavg_status mixavg_average_report_json(const mixavg_dataset* d, const mixavg_sweep* s,
                                         double c, char** out_json);

/* ---- utilities ---- */

/* Writes a labeled 500-point CSV plus a JSON sidecar recording the
 * generating spec and seed. out_meta_json may be NULL. */
mixavg_status mixavg_simulate_scenario3(uint64_t seed, const char* out_csv,
                                        const char* out_meta_json);

/* spec_json: {"seed": ..., "clusters": [{"size": n, "mean": [...],
 * "cov": [[...], ...]}, ...]} */
mixavg_status mixavg_simulate_gaussian(const char* spec_json, const char* out_csv,
                                       const char* out_meta_json);

/* Adjusted Rand index between the label columns of two CSV files.
 * Column names may be NULL, meaning the last column. */
mixavg_status mixavg_ari_csv(const char* path_a, const char* label_column_a,
                             const char* path_b, const char* label_column_b,
                             double* out_ari);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* MIXAVG_H */

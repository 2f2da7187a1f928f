/* C interface to the sparseclust library: cluster-count estimation for
 * K-means, joint (k, lambda) estimation for sparse K-means, classical
 * validity indices, synthetic benchmark designs, and a replicated benchmark
 * runner.  All functions returning sc_status use 0 for success; on failure
 * sc_last_error() describes the problem for the calling thread. */
#ifndef SPARSECLUST_H
#define SPARSECLUST_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sc_status {
  SC_OK = 0,
  SC_ERR_VALIDATION = 2, /* bad arguments or malformed input */
  SC_ERR_IO = 3,         /* file-system trouble */
  SC_ERR_DEGENERATE = 4  /* numerically meaningless request */
} sc_status;

/* Library version string, e.g. "1.0.0". */
const char* sc_version(void);

/* Message of the most recent failure on this thread ("" if none). */
const char* sc_last_error(void);

/* Shared tuning knobs.  Initialize with sc_params_init and override fields
 * as needed; all defaults are the library's documented defaults. */
typedef struct sc_params {
  int k_min;                /* smallest candidate cluster count (1) */
  int k_max;                /* largest candidate cluster count (10) */
  double fraction;          /* subsample fraction (0.7) */
  int b;                    /* subsamples / reference draws (100) */
  double rho;               /* trim percentage (5) */
  double s0;                /* concordance no-cluster cutoff (0.8) */
  int restarts;             /* full-data k-means restarts (20) */
  int subsample_restarts;   /* subsample / split / reference restarts (10) */
  int inner_restarts;       /* reweighted refit restarts (5) */
  int n_splits;             /* cross-validation splits (5) */
  double lambda0;           /* smallest penalty bound of the grid (1.2) */
  int grid_m;               /* penalty-grid refinement insertions (28) */
  double ps_threshold;      /* strength no-cluster cutoff (0.8) */
  uint64_t seed;            /* root seed (0) */
  int threads;              /* worker threads, 0 = hardware count (1) */
} sc_params;

void sc_params_init(sc_params* params);

/* ------------------------------------------------------------------ data */

typedef struct sc_dataset sc_dataset;

/* Copies an n x p row-major array (entries must be finite, n >= 2, p >= 1). */
sc_status sc_dataset_create(int n, int p, const double* values,
                            sc_dataset** out);

/* Loads a rectangular numeric CSV (rows = samples).  has_header skips the
 * first line.  truth_path (nullable) names a file of one integer cluster
 * label per row. */
sc_status sc_dataset_load(const char* csv_path, int has_header,
                          const char* truth_path, sc_dataset** out);

/* Generates a synthetic design: "setting1".."setting10", "hd-indep",
 * "gene-module", or "s1".  params is a nullable "key=value,key=value" list
 * of design parameters (e.g. "q=50,u=0.8" for hd-indep). */
sc_status sc_dataset_simulate(const char* design, const char* params,
                              uint64_t seed, sc_dataset** out);

/* Writes the matrix as CSV; truth_path (nullable) receives one ground-truth
 * label per line when the dataset has a labeled truth. */
sc_status sc_dataset_save(const sc_dataset* data, const char* csv_path,
                          const char* truth_path);

int sc_dataset_rows(const sc_dataset* data);
int sc_dataset_cols(const sc_dataset* data);
int sc_dataset_has_truth(const sc_dataset* data);
/* Copies the ground-truth labels into out (length sc_dataset_rows). */
sc_status sc_dataset_truth(const sc_dataset* data, int32_t* out);
void sc_dataset_free(sc_dataset* data);

/* ------------------------------------------------------------- estimation */

typedef struct sc_report sc_report;

/* Cluster-count estimation on plain K-means.  method: "s4", "ps", "ch",
 * "kl", "h", "silhouette", "gap-unif", "gap-pca", or "jump". */
sc_status sc_estimate_k(const sc_dataset* data, const char* method,
                        const sc_params* params, sc_report** out);

/* Joint (k, lambda) estimation on sparse K-means.  method: "s4",
 * "s4-naive", "gap", or "ps". */
sc_status sc_sparse_estimate(const sc_dataset* data, const char* method,
                             const sc_params* params, sc_report** out);

/* Evaluates every classical index curve over [k_min, k_max]; the report's
 * "curves" table has one row per k with NA outside an index's domain. */
sc_status sc_index_curves(const sc_dataset* data, const sc_params* params,
                          sc_report** out);

/* Replicated estimator comparison on a synthetic design.  methods is a
 * comma-separated list mixing plain names (as in sc_estimate_k) and
 * sparse ones prefixed "sparse-" (sparse-s4, sparse-s4-naive, sparse-gap,
 * sparse-ps).  The report carries "summary" and "details" tables. */
sc_status sc_benchmark(const char* design, const char* design_params,
                       const char* methods, int replicates,
                       const sc_params* params, sc_report** out);

/* --------------------------------------------------------------- reports */

int sc_report_k(const sc_report* report);
double sc_report_lambda(const sc_report* report);
int sc_report_n_selected(const sc_report* report);
/* Number of per-sample labels carried by the report (0 when none). */
int sc_report_label_count(const sc_report* report);
sc_status sc_report_labels(const sc_report* report, int32_t* out);

/* Serialized structured document (metadata + tables). */
size_t sc_report_text_size(const sc_report* report);
sc_status sc_report_text(const sc_report* report, char* buffer, size_t size);
sc_status sc_report_save(const sc_report* report, const char* path);
/* Writes one named table ("scores", "curves", "summary", "details", ...)
 * as a flat TSV. */
sc_status sc_report_save_table(const sc_report* report, const char* table,
                               const char* path);
void sc_report_free(sc_report* report);

/* --------------------------------------------------------------- metrics */

/* Adjusted Rand index between two label vectors of length n. */
sc_status sc_ari(const int32_t* a, const int32_t* b, int n, double* out);

/* Jaccard similarity between two 0/1 feature masks of length p. */
sc_status sc_jaccard(const uint8_t* a, const uint8_t* b, int p, double* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SPARSECLUST_H */

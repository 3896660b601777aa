/* driftscape: topological drift detection for high-dimensional data streams.
 *
 * C interface over the core library. All objects are opaque handles created
 * and destroyed through these functions; every fallible call returns a
 * ds_status, with a human-readable message available from ds_last_error()
 * until the next call on the same thread.
 */
#ifndef DRIFTSCAPE_H
#define DRIFTSCAPE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ds_status {
  DS_OK = 0,
  DS_ERR_CONFIG = 1, /* invalid configuration or arguments */
  DS_ERR_DATA = 2,   /* unreadable or malformed data files */
  DS_ERR_INTERNAL = 3,
} ds_status;

typedef struct ds_mnist ds_mnist;   /* loaded digit pool (images + labels) */
typedef struct ds_stream ds_stream; /* annotated sample stream */
typedef struct ds_config ds_config; /* pipeline run configuration */
typedef struct ds_report ds_report; /* pipeline run summary */

const char* ds_version(void);
const char* ds_last_error(void);

/* Digit pool: reads the standard 4-file IDX layout (train/t10k images and
 * labels), gzip-compressed or plain, and concatenates the splits. */
ds_status ds_mnist_open(const char* dir, ds_mnist** out);
void ds_mnist_close(ds_mnist* pool);
size_t ds_mnist_count(const ds_mnist* pool);

/* Builtin stream scenarios "A", "B", "C": segments drawn from alternating
 * digit groups, deterministic for a given seed. */
ds_status ds_stream_generate(const ds_mnist* pool, const char* case_name,
                             uint64_t seed, ds_stream** out);
/* sidecar_path may be NULL, defaulting to "<data_path>.json". */
ds_status ds_stream_write(const ds_stream* stream, const char* data_path,
                          const char* sidecar_path);
ds_status ds_stream_open(const char* data_path, const char* sidecar_path,
                         ds_stream** out);
void ds_stream_close(ds_stream* stream);
size_t ds_stream_length(const ds_stream* stream);

/* Configuration is a flat key/value set; ds_config_load reads a text file of
 * "key = value" lines with '#' comments. Keys mirror the run options, e.g.
 * case, mnist, projector, chunk_size, warmup_fraction, grid_rows, grid_cols,
 * latent_dim, kmeans_k, seed, thresholds, out_dir, model_cache. */
ds_status ds_config_create(ds_config** out);
ds_status ds_config_load(const char* path, ds_config** out);
ds_status ds_config_set(ds_config* config, const char* key, const char* value);
void ds_config_destroy(ds_config* config);

/* Runs the full pipeline (generate or load stream, warm-up fit, chunked
 * monitoring) and writes results.csv, means.csv, report.txt and report.csv
 * into the configured output directory. */
ds_status ds_run(const ds_config* config, ds_report** out);

/* Numeric report fields: "chunk_size", "seed", "n_chunks", "n_records",
 * "flags05", "flags10", "boundaries_streamed", "boundaries_total",
 * "detection_rate", "false_alarm_rate", "wall_time_sec". Unknown fields
 * return NaN. */
double ds_report_value(const ds_report* report, const char* field);
/* Rendered text summary; the pointer stays valid until the report is
 * destroyed. */
const char* ds_report_text(const ds_report* report);
void ds_report_destroy(ds_report* report);

/* Offline change-point pass over a means.csv file (chunk_index,mean_distance).
 * penalty <= 0 selects a data-driven default. Writes chunk_index,
 * mean_distance, segment_id rows to out_csv. breakpoints/breakpoint_count
 * (optional) receive a malloc'd array of breakpoint indices to free(). */
ds_status ds_pelt_csv(const char* means_csv, double penalty, const char* out_csv,
                      size_t** breakpoints, size_t* breakpoint_count);

/* Aggregates per-run report.csv files into a flags-per-method table.
 * out_txt / out_csv may be NULL to skip that output. */
ds_status ds_report_table(const char* const* report_csv_paths, size_t count,
                          const char* out_txt, const char* out_csv);

#ifdef __cplusplus
}
#endif

#endif /* DRIFTSCAPE_H */

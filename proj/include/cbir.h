/*
 * cbir — query-by-example image retrieval over local colour/texture features
 * of edge-selected sub-blocks plus global colour and shape features.
 *
 * C API of the shared library. All objects are opaque handles created and
 * released through the functions below; every fallible call returns a
 * cbir_status, with a human-readable detail message available from
 * cbir_last_error() on the failing thread.
 */

#ifndef CBIR_H
#define CBIR_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define CBIR_API __declspec(dllexport)
#else
#define CBIR_API __attribute__((visibility("default")))
#endif

typedef enum cbir_status {
  CBIR_OK = 0,
  CBIR_E_FILE_NOT_FOUND = 1,
  CBIR_E_UNSUPPORTED_FORMAT = 2,
  CBIR_E_CORRUPT_IMAGE = 3,
  CBIR_E_INVALID_PARAMETER = 4,
  CBIR_E_IMAGE_TOO_SMALL = 5,
  CBIR_E_EMPTY_RECT = 6,
  CBIR_E_RECT_TOO_SMALL = 7,
  CBIR_E_DIMENSION_MISMATCH = 8,
  CBIR_E_EMPTY_REGION_LIST = 9,
  CBIR_E_PARAMETER_MISMATCH = 10,
  CBIR_E_IO = 11,
  CBIR_E_FORMAT_VERSION_MISMATCH = 12,
  CBIR_E_CORRUPT_RECORD = 13,
  CBIR_E_EMPTY_INDEX = 14,
  CBIR_E_INSUFFICIENT_RESULTS = 15,
  CBIR_E_MISSING_CATEGORY = 16,
  CBIR_E_UNLABELED_IMAGE = 17,
  CBIR_E_UNKNOWN = 18
} cbir_status;

/* Extraction parameters. Indexes remember the parameters they were built
 * with; query signatures must be produced through the same index (or one
 * loaded from the same file) so the parameter fingerprints agree. */
typedef struct cbir_params {
  double tau_s;      /* Sobel edge threshold in (0,1), relative to max gradient */
  double tau_r;      /* ROI density threshold in (0,1], relative to max density */
  int glcm_levels;   /* gray levels for co-occurrence matrices, >= 2 */
  double t_edge;     /* edge-histogram strength threshold on the 0..255 scale */
  double sigma;      /* Gaussian sigma of the attention pipeline, > 0 */
  double low_ratio;  /* Canny low threshold ratio in (0,1) */
  double high_pct;   /* Canny high-threshold percentile in (0,100) */
  int strip_count;   /* strip partition count (fixed at 3) */
} cbir_params;

typedef struct cbir_index cbir_index;
typedef struct cbir_signature cbir_signature;
typedef struct cbir_result cbir_result;
typedef struct cbir_report cbir_report;

/* Fills `out` with the default configuration. */
CBIR_API void cbir_params_defaults(cbir_params* out);

/* Static name of a status code ("CorruptImage", ...). */
CBIR_API const char* cbir_status_name(cbir_status status);

/* Detail message of the last failing call on this thread ("" if none). */
CBIR_API const char* cbir_last_error(void);

/* ---- index lifecycle ---------------------------------------------------- */

CBIR_API cbir_status cbir_index_create(const cbir_params* params, cbir_index** out);
CBIR_API cbir_status cbir_index_open(const char* path, cbir_index** out);
CBIR_API cbir_status cbir_index_save(const cbir_index* index, const char* path);
CBIR_API void cbir_index_close(cbir_index* index);
CBIR_API size_t cbir_index_size(const cbir_index* index);

/* Extracts one image and appends it. `image_id` must be unique within the
 * index (NULL uses the filename). `category` may be NULL for unlabeled. */
CBIR_API cbir_status cbir_index_add_image(cbir_index* index, const char* image_path,
                                          const char* image_id, const char* category);

/* Bulk add with concurrent extraction. `image_ids`/`categories` may be NULL
 * (all derived / all unlabeled), as may individual elements. `threads` = 0
 * uses the hardware concurrency. `progress` (optional) is called after each
 * finished image from the calling thread's pool. Stops at the first failing
 * image; already-extracted entries remain in the index. */
typedef void (*cbir_progress_fn)(size_t done, size_t total, void* user);
CBIR_API cbir_status cbir_index_add_images(cbir_index* index, const char* const* image_paths,
                                           const char* const* image_ids,
                                           const char* const* categories, size_t count,
                                           int threads, cbir_progress_fn progress, void* user);

/* ---- querying ----------------------------------------------------------- */

/* Extracts a query signature using the index's parameters. */
CBIR_API cbir_status cbir_signature_create(const cbir_index* index, const char* image_path,
                                           cbir_signature** out);
CBIR_API void cbir_signature_free(cbir_signature* signature);

/* Ranks all index entries by distance to the query signature and keeps the
 * k nearest (ascending distance, ties by image id). */
CBIR_API cbir_status cbir_index_query(const cbir_index* index, const cbir_signature* signature,
                                      size_t k, cbir_result** out);
CBIR_API size_t cbir_result_count(const cbir_result* result);
CBIR_API const char* cbir_result_image_id(const cbir_result* result, size_t i);
CBIR_API const char* cbir_result_path(const cbir_result* result, size_t i);
CBIR_API const char* cbir_result_category(const cbir_result* result, size_t i);
CBIR_API double cbir_result_distance(const cbir_result* result, size_t i);
CBIR_API void cbir_result_free(cbir_result* result);

/* Static HTML contact sheet of a result: query image first, then the ranked
 * results with distance and category captions. */
CBIR_API cbir_status cbir_result_write_html(const cbir_result* result,
                                            const char* query_image_path, const char* out_path);

/* ---- evaluation --------------------------------------------------------- */

/* Queries the index with each entry's own signature and reports the average
 * precision@k per category plus the mean over categories. Every entry needs
 * a category. */
CBIR_API cbir_status cbir_index_evaluate(const cbir_index* index, size_t k, cbir_report** out);
CBIR_API size_t cbir_report_category_count(const cbir_report* report);
CBIR_API const char* cbir_report_category(const cbir_report* report, size_t i);
CBIR_API double cbir_report_precision(const cbir_report* report, size_t i);
CBIR_API double cbir_report_overall(const cbir_report* report);
/* Aligned text table (category rows + overall), as printed by the CLI. */
CBIR_API cbir_status cbir_report_format(const cbir_report* report, char* buf, size_t buf_len);
CBIR_API cbir_status cbir_report_write_json(const cbir_report* report, const char* path);
CBIR_API void cbir_report_free(cbir_report* report);

/* ---- helpers ------------------------------------------------------------ */

/* Category of an image file: an all-digit stem n maps to n/100; otherwise
 * the labels file (lines of `<filename-or-stem> <category>`) is consulted;
 * otherwise the parent directory name is used. Writes "" to `buf` when
 * nothing applies. `labels_file` may be NULL. */
CBIR_API cbir_status cbir_infer_category(const char* image_path, const char* labels_file,
                                         char* buf, size_t buf_len);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* CBIR_H */

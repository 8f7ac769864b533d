/*
 * lenv - lower envelopes of 2D line segments and monotone chains, computed
 * output-sensitively with exact rational arithmetic.
 *
 * C interface of the shared library. All objects are opaque handles owned by
 * the library; every function that can fail returns an lenv_status, writes
 * its result through out-parameters only on LENV_OK, and leaves a
 * human-readable message retrievable with lenv_last_error() otherwise.
 * Strings returned through char** out-parameters are released with
 * lenv_string_free().
 */

#ifndef LENV_H
#define LENV_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define LENV_API __declspec(dllexport)
#else
#define LENV_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lenv_status {
    LENV_OK = 0,
    LENV_ERR_INVALID_ARGUMENT = 1,
    LENV_ERR_PARSE = 2,
    LENV_ERR_NOMEM = 3,
    LENV_ERR_INTERNAL = 4
} lenv_status;

/* A parsed or generated set of input segments with ids 0..n-1. */
typedef struct lenv_segments lenv_segments;

/* A list of x-monotone chains parsed from a chains file. */
typedef struct lenv_chains lenv_chains;

/* The outcome of a computation: an envelope plus whatever instrumentation
 * the producing algorithm recorded, or an aborted merge. */
typedef struct lenv_result lenv_result;

/* Message describing the most recent failure on the calling thread. */
LENV_API const char* lenv_last_error(void);

/* Segments file format: one "x1 y1 x2 y2" line per segment; rational
 * literals ("7", "-12.5", "3/4"); '#' comments; blank lines ignored. */
LENV_API lenv_status lenv_segments_parse(const char* text, lenv_segments** out);

/* kind: "random", "smallk", "parabola" or "disjoint". bbox is
 * "xmin ymin xmax ymax" in rational literals, or NULL for the unit square.
 * Generation is deterministic in (kind, n, seed, bbox). */
LENV_API lenv_status lenv_segments_generate(const char* kind, uint64_t n, uint64_t seed,
                                            const char* bbox, lenv_segments** out);

LENV_API lenv_status lenv_segments_format(const lenv_segments* set, char** text_out);
LENV_API size_t lenv_segments_count(const lenv_segments* set);
LENV_API void lenv_segments_free(lenv_segments* set);

/* algo: "oracle" (brute force), "dc" (divide and conquer) or "chan"
 * (output-sensitive doubling). */
LENV_API lenv_status lenv_compute(const lenv_segments* set, const char* algo, lenv_result** out);

/* Chains file format: blocks of "x y" vertex lines separated by one blank
 * line; an optional "GAP" line between two vertices marks a gap edge. */
LENV_API lenv_status lenv_chains_parse(const char* text, lenv_chains** out);
LENV_API size_t lenv_chains_count(const lenv_chains* chains);
LENV_API void lenv_chains_free(lenv_chains* chains);

/* Lower envelope of the chains; abort_threshold > 0 aborts the merge as
 * soon as the output exceeds that many vertices (0 = no limit). */
LENV_API lenv_status lenv_merge_chains(const lenv_chains* chains, uint64_t abort_threshold,
                                       lenv_result** out);

LENV_API void lenv_result_free(lenv_result* result);

LENV_API int lenv_result_aborted(const lenv_result* result);

/* Number of envelope vertices (0 for an aborted result). */
LENV_API uint64_t lenv_result_size(const lenv_result* result);

/* Envelope document: JSON with stable key order, rationals as canonical
 * "p/q" strings; include_stats adds counters / run report blocks. Output is
 * byte-identical across runs for identical inputs. */
LENV_API lenv_status lenv_result_doc(const lenv_result* result, int include_stats,
                                     char** json_out);

/* Standalone SVG rendering; input may be NULL. */
LENV_API lenv_status lenv_result_svg(const lenv_result* result, const lenv_segments* input,
                                     char** svg_out);

/* Cross-checks all three algorithms and spot-samples the pointwise minimum;
 * *agree is 1 when everything matched. report_out (optional) receives one
 * PASS/FAIL line per check. */
LENV_API lenv_status lenv_verify(const lenv_segments* set, uint64_t samples, int* agree,
                                 char** report_out);

/* Scaling harness: sizes_csv like "16,64,256", kinds_csv like
 * "random,smallk". Returns a CSV table, one row per (kind, n); timings are
 * omitted unless requested so the bytes are reproducible. */
LENV_API lenv_status lenv_bench(const char* sizes_csv, const char* kinds_csv, uint64_t seed,
                                int include_timings, char** csv_out);

LENV_API void lenv_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* LENV_H */

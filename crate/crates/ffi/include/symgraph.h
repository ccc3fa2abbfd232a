#ifndef SYMGRAPH_H
#define SYMGRAPH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SgGrowthKind {
  SG_GROWTH_KIND_EXPONENTIAL = 0,
  SG_GROWTH_KIND_POLYNOMIAL = 1,
  SG_GROWTH_KIND_MIXED_POLYNOMIAL_EXPONENTIAL = 2,
} SgGrowthKind;

/**
 * Result code of every fallible call.
 */
typedef enum SgStatus {
  SG_STATUS_OK = 0,
  SG_STATUS_NULL_POINTER = 1,
  SG_STATUS_INVALID_UTF8 = 2,
  SG_STATUS_PARSE_ERROR = 3,
  SG_STATUS_INVALID_ARGUMENT = 4,
  SG_STATUS_ALPHABET_MISMATCH = 5,
  SG_STATUS_SCHEDULE_ERROR = 6,
  SG_STATUS_NUMERIC_ERROR = 7,
  SG_STATUS_ENUMERATION_CAP = 8,
  SG_STATUS_IO = 9,
  SG_STATUS_PANIC = 10,
} SgStatus;

/**
 * Opaque directed graph.
 */
typedef struct SgGraph SgGraph;

/**
 * Opaque scheduled combination of graphs.
 */
typedef struct SgSystem SgSystem;

/**
 * Growth class of a graph's total count.
 */
typedef struct SgGrowth {
  enum SgGrowthKind kind;
  double rho;
  size_t poly_degree;
} SgGrowth;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. Valid until the
 * next call into this library on the same thread.
 */
const char *sg_last_error_message(void);

/**
 * Library version as a static string.
 */
const char *sg_version(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void sg_string_free(char *s);

/**
 * Parses a JSON graph document `{"alphabet": [...], "edges": [[from, to], ...]}`.
 *
 * # Safety
 * `json` must be NUL-terminated; `out` must be writable.
 */
enum SgStatus sg_graph_parse(const char *json, struct SgGraph **out);

/**
 * Built-in graph by name: `G1`, `G2`, `K3`, `C2`, `CHAIN`.
 *
 * # Safety
 * `name` must be NUL-terminated; `out` must be writable.
 */
enum SgStatus sg_graph_preset(const char *name, struct SgGraph **out);

/**
 * # Safety
 * `graph` must come from this library and not have been freed. NULL is ignored.
 */
void sg_graph_free(struct SgGraph *graph);

/**
 * # Safety
 * `graph` must be a live handle; `out` must be writable.
 */
enum SgStatus sg_graph_alphabet_size(const struct SgGraph *graph, size_t *out);

/**
 * `ω^n` as a decimal string.
 *
 * # Safety
 * `graph` must be a live handle; `out` must be writable.
 */
enum SgStatus sg_graph_total_count(const struct SgGraph *graph, uint64_t n, char **out);

/**
 * `ω^n(X_i, X_j)` as a decimal string.
 *
 * # Safety
 * `graph` must be a live handle; `out` must be writable.
 */
enum SgStatus sg_graph_count_entry(const struct SgGraph *graph,
                                   uint64_t n,
                                   size_t i,
                                   size_t j,
                                   char **out);

/**
 * Characteristic polynomial coefficients, highest degree first, as a JSON
 * array of decimal strings.
 *
 * # Safety
 * `graph` must be a live handle; `out` must be writable.
 */
enum SgStatus sg_graph_char_poly(const struct SgGraph *graph, char **out);

/**
 * # Safety
 * `graph` must be a live handle; `out` must be writable.
 */
enum SgStatus sg_graph_classify(const struct SgGraph *graph, struct SgGrowth *out);

/**
 * Checks the characteristic recurrence exactly for `k < n <= n_max`.
 *
 * # Safety
 * `graph` must be a live handle; `holds` must be writable.
 */
enum SgStatus sg_graph_verify_recurrence(const struct SgGraph *graph, uint64_t n_max, bool *holds);

/**
 * The graph on the arrows of `graph`.
 *
 * # Safety
 * `graph` must be a live handle; `out` must be writable.
 */
enum SgStatus sg_graph_higher_order(const struct SgGraph *graph, struct SgGraph **out);

/**
 * # Safety
 * `graph` must be a live handle; `out` must be writable.
 */
enum SgStatus sg_graph_to_json(const struct SgGraph *graph, char **out);

/**
 * Combines `len >= 2` graphs under the schedule with boundaries
 * `g_1 < g_2 < ...`. The graphs are copied; the caller keeps ownership.
 *
 * # Safety
 * `graphs` must point to `len` live handles, `boundaries` to
 * `boundaries_len` integers; `out` must be writable.
 */
enum SgStatus sg_system_new(const struct SgGraph *const *graphs,
                            size_t len,
                            const uint64_t *boundaries,
                            size_t boundaries_len,
                            struct SgSystem **out);

/**
 * Reference system `example` (1: G1 with G2, 2: K3 with G2) over `t_max`
 * stint pairs of the reference schedule.
 *
 * # Safety
 * `out` must be writable.
 */
enum SgStatus sg_system_paper(uint8_t example, uint64_t t_max, struct SgSystem **out);

/**
 * # Safety
 * `system` must come from this library and not have been freed. NULL is ignored.
 */
void sg_system_free(struct SgSystem *system);

/**
 * `ω_F^n` as a decimal string.
 *
 * # Safety
 * `system` must be a live handle; `out` must be writable.
 */
enum SgStatus sg_system_count(const struct SgSystem *system, uint64_t n, char **out);

/**
 * Bound reports of reference system `example` for `t = 1..=t_max`, as a
 * JSON array of `{t, n, lower, actual, upper, holds}` with decimal-string
 * integers.
 *
 * # Safety
 * `out` must be writable.
 */
enum SgStatus sg_bounds(uint8_t example, uint64_t t_max, char **out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* SYMGRAPH_H */

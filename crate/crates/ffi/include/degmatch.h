#ifndef DEGMATCH_H
#define DEGMATCH_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible function.
 */
typedef enum DegmatchStatus {
  DEGMATCH_STATUS_OK = 0,
  DEGMATCH_STATUS_ARGUMENT = 1,
  DEGMATCH_STATUS_PARSE = 2,
  DEGMATCH_STATUS_SIZE = 3,
  DEGMATCH_STATUS_IO = 4,
  DEGMATCH_STATUS_PRECONDITION = 5,
  DEGMATCH_STATUS_NOT_MEMBER = 6,
  DEGMATCH_STATUS_INTERNAL = 7,
  DEGMATCH_STATUS_NULL_POINTER = 8,
  DEGMATCH_STATUS_UTF8 = 9,
  DEGMATCH_STATUS_PANIC = 10,
} DegmatchStatus;

/**
 * Opaque graph handle.
 */
typedef struct DegmatchGraph DegmatchGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the most recent failure on this thread, or null.
 *
 * The pointer stays valid until the next call into this library on the same
 * thread. Do not free it.
 */
const char *degmatch_last_error_message(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library and not yet freed.
 */
void degmatch_string_free(char *s);

/**
 * Creates an edgeless graph on `n` vertices. Returns null on allocation panic.
 */
struct DegmatchGraph *degmatch_graph_new(size_t n);

/**
 * # Safety
 * `g` must be null or a handle from this library that has not been freed.
 */
void degmatch_graph_free(struct DegmatchGraph *g);

/**
 * Adds the edge `{u, v}`.
 *
 * # Safety
 * `g` must be a live handle.
 */
enum DegmatchStatus degmatch_graph_add_edge(struct DegmatchGraph *g, size_t u, size_t v);

/**
 * Parses an edge list (`n` on the first line, then one `u v` pair per line).
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be valid for writes.
 */
enum DegmatchStatus degmatch_graph_parse(const char *text, struct DegmatchGraph **out);

/**
 * Serializes the graph as an edge list. Free the result with
 * [`degmatch_string_free`].
 *
 * # Safety
 * `g` must be a live handle; `out` must be valid for writes.
 */
enum DegmatchStatus degmatch_graph_to_edge_list(const struct DegmatchGraph *g, char **out);

/**
 * # Safety
 * `g` must be null or a live handle. Returns 0 for null.
 */
size_t degmatch_graph_vertex_count(const struct DegmatchGraph *g);

/**
 * # Safety
 * `g` must be null or a live handle. Returns 0 for null.
 */
size_t degmatch_graph_edge_count(const struct DegmatchGraph *g);

/**
 * # Safety
 * `g` must be null or a live handle. Returns 0 for null.
 */
size_t degmatch_graph_max_degree(const struct DegmatchGraph *g);

/**
 * Matching number of the graph.
 *
 * # Safety
 * `g` must be null or a live handle. Returns 0 for null.
 */
size_t degmatch_graph_nu(const struct DegmatchGraph *g);

/**
 * # Safety
 * `g` must be a live handle; `out` must be valid for writes.
 */
enum DegmatchStatus degmatch_graph_is_factor_critical(const struct DegmatchGraph *g, bool *out);

/**
 * Writes `e(d, m)`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum DegmatchStatus degmatch_e_bound(size_t d, size_t m, size_t *out);

/**
 * Writes the estimate `(m-1)(2d-3)` that ignores component structure.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum DegmatchStatus degmatch_trivial_bound(size_t d, size_t m, size_t *out);

/**
 * Writes the maximum edge count with `Δ < s` and `ν < s`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum DegmatchStatus degmatch_e_ss(size_t s, size_t *out);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum DegmatchStatus degmatch_is_extremal_unique(size_t d, size_t m, bool *out);

/**
 * Builds an extremal member of `F(d, m)`. Free with [`degmatch_graph_free`].
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum DegmatchStatus degmatch_construct_extremal(size_t d, size_t m, struct DegmatchGraph **out);

/**
 * Writes whether the graph is an edge-maximal member of `F(d, m)`.
 *
 * # Safety
 * `g` must be a live handle; `out` must be valid for writes.
 */
enum DegmatchStatus degmatch_is_member(const struct DegmatchGraph *g,
                                       size_t d,
                                       size_t m,
                                       bool *out);

/**
 * Compares the closed form with search and writes the JSON report. Free the
 * result with [`degmatch_string_free`].
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum DegmatchStatus degmatch_verify_bound_json(size_t d, size_t m, size_t n_max, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DEGMATCH_H */

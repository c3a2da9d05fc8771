#ifndef WEDGEWORK_H
#define WEDGEWORK_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Bits of the dichotomy branch mask.
 */
#define WW_BRANCH_COMPLETE_PENCIL 1

#define WW_BRANCH_LARGE_COVERAGE 2

#define WW_BRANCH_MANY_VERTICES 4

typedef enum WwStatus {
  WW_STATUS_OK = 0,
  WW_STATUS_NULL_ARGUMENT = 1,
  WW_STATUS_INVALID_UTF8 = 2,
  WW_STATUS_PARSE_ERROR = 3,
  WW_STATUS_INVALID_ARGUMENT = 4,
  WW_STATUS_INVALID_STRUCTURE = 5,
  WW_STATUS_EXPANSION_FAILED = 6,
  WW_STATUS_BUDGET_EXCEEDED = 7,
  WW_STATUS_OUT_OF_RANGE = 8,
  WW_STATUS_PANIC = 99,
} WwStatus;

/**
 * Opaque statistics of a valid structure.
 */
typedef struct WwStats WwStats;

/**
 * Opaque incidence structure.
 */
typedef struct WwStructure WwStructure;

/**
 * Opaque folded wedge.
 */
typedef struct WwWedge WwWedge;

typedef struct WwDiracReport {
  bool hypothesis_holds;
  size_t g;
  size_t h;
  bool g_ge_h;
  bool binomial_holds;
} WwDiracReport;

typedef struct WwDyadicWindow {
  uint64_t lower;
  uint64_t upper;
  uint64_t below;
  uint64_t inside;
  uint64_t above;
  bool empty;
} WwDyadicWindow;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread, or null. Valid until the
 * next call into this library on the same thread.
 */
const char *ww_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void ww_string_free(char *s);

/**
 * Parses `.acc` text.
 *
 * # Safety
 * `text` must be a nul-terminated string; `out` must be writable.
 */
enum WwStatus ww_structure_parse(const char *text_ptr, struct WwStructure **out);

/**
 * Canonical `.acc` text.
 *
 * # Safety
 * `s` must be a live structure handle; `out` must be writable.
 */
enum WwStatus ww_structure_serialize(const struct WwStructure *s, char **out);

/**
 * # Safety
 * `s` must be null or a structure handle not yet freed.
 */
void ww_structure_free(struct WwStructure *s);

/**
 * α of the structure; 0 for a null handle.
 *
 * # Safety
 * `s` must be null or a live structure handle.
 */
uint32_t ww_structure_alpha(const struct WwStructure *s);

/**
 * # Safety
 * `s` must be null or a live structure handle.
 */
size_t ww_structure_curve_count(const struct WwStructure *s);

/**
 * # Safety
 * `s` must be null or a live structure handle.
 */
size_t ww_structure_vertex_count(const struct WwStructure *s);

/**
 * Copies the curve ids of vertex `index` into `buf` (capacity `cap`) and
 * stores the vertex size in `len`. When `cap` is too small nothing is
 * copied, `len` is still set and the status is `WW_STATUS_OUT_OF_RANGE`.
 *
 * # Safety
 * `s` must be a live handle, `buf` must hold `cap` ids, `len` must be writable.
 */
enum WwStatus ww_structure_vertex(const struct WwStructure *s,
                                  size_t index,
                                  uint32_t *buf,
                                  size_t cap,
                                  size_t *len);

/**
 * Stores whether the structure is a valid α-curve combinatorics; the
 * violations, if any, become the last error message.
 *
 * # Safety
 * `s` must be a live handle; `valid` must be writable.
 */
enum WwStatus ww_structure_validate(const struct WwStructure *s, bool *valid);

/**
 * # Safety
 * `s` must be a live handle; `out` must be writable.
 */
enum WwStatus ww_structure_stats(const struct WwStructure *s, struct WwStats **out);

/**
 * # Safety
 * `st` must be null or a stats handle not yet freed.
 */
void ww_stats_free(struct WwStats *st);

/**
 * Number of curves.
 *
 * # Safety
 * `st` must be null or a live stats handle.
 */
size_t ww_stats_n(const struct WwStats *st);

/**
 * Largest number of vertices on one curve.
 *
 * # Safety
 * `st` must be null or a live stats handle.
 */
size_t ww_stats_r(const struct WwStats *st);

/**
 * Vertices on exactly `k` curves.
 *
 * # Safety
 * `st` must be null or a live stats handle.
 */
size_t ww_stats_t(const struct WwStats *st, size_t k);

/**
 * Curve pairs whose common vertices have minimum degree `d`.
 *
 * # Safety
 * `st` must be null or a live stats handle.
 */
size_t ww_stats_l(const struct WwStats *st, size_t d);

/**
 * # Safety
 * `out` must be writable.
 */
enum WwStatus ww_gen_family(uint32_t j, struct WwWedge **out);

/**
 * `n` curves through one point.
 *
 * # Safety
 * `out` must be writable.
 */
enum WwStatus ww_gen_pencil(size_t n, struct WwStructure **out);

/**
 * # Safety
 * `out` must be writable.
 */
enum WwStatus ww_gen_near_pencil(size_t n, struct WwStructure **out);

/**
 * # Safety
 * `out` must be writable.
 */
enum WwStatus ww_gen_simple(size_t n, struct WwStructure **out);

/**
 * Lines of PG(2, p): all of them when `all` is set, otherwise `n` sampled from `seed`.
 *
 * # Safety
 * `out` must be writable.
 */
enum WwStatus ww_gen_pg2(uint32_t p, size_t n, uint64_t seed, bool all, struct WwStructure **out);

/**
 * Parses `.wedge` text.
 *
 * # Safety
 * `text` must be a nul-terminated string; `out` must be writable.
 */
enum WwStatus ww_wedge_parse(const char *text_ptr, struct WwWedge **out);

/**
 * # Safety
 * `w` must be a live wedge handle; `out` must be writable.
 */
enum WwStatus ww_wedge_serialize(const struct WwWedge *w, char **out);

/**
 * # Safety
 * `w` must be null or a wedge handle not yet freed.
 */
void ww_wedge_free(struct WwWedge *w);

/**
 * Mirror count `m`; 0 for a null handle.
 *
 * # Safety
 * `w` must be null or a live wedge handle.
 */
uint32_t ww_wedge_m(const struct WwWedge *w);

/**
 * Unfolds the wedge into its arrangement.
 *
 * # Safety
 * `w` must be a live wedge handle; `out` must be writable.
 */
enum WwStatus ww_expand(const struct WwWedge *w, struct WwStructure **out);

/**
 * Both t_k bounds over every applicable k.
 *
 * # Safety
 * `st` must be a live stats handle; the out pointers must be writable.
 */
enum WwStatus ww_audit_thm3(const struct WwStats *st, bool *part1, bool *part2);

/**
 * Σ_d l_d = C(n, 2).
 *
 * # Safety
 * `st` must be a live stats handle; `holds` must be writable.
 */
enum WwStatus ww_audit_pairs(const struct WwStats *st, bool *holds);

/**
 * # Safety
 * `s` must be a live structure handle; `out` must be writable.
 */
enum WwStatus ww_audit_dirac(const struct WwStructure *s,
                             uint64_t budget,
                             struct WwDiracReport *out);

/**
 * Window bounds saturate at `UINT64_MAX`.
 *
 * # Safety
 * `st` must be a live stats handle; `out` must be writable.
 */
enum WwStatus ww_audit_dyadic(const struct WwStats *st,
                              uint64_t gamma_num,
                              uint64_t gamma_den,
                              uint32_t v,
                              struct WwDyadicWindow *out);

/**
 * Stores the `WW_BRANCH_*` bits of every branch that holds.
 *
 * # Safety
 * `s` must be a live structure handle; `mask` must be writable.
 */
enum WwStatus ww_audit_dichotomy(const struct WwStructure *s,
                                 uint64_t fraction_num,
                                 uint64_t fraction_den,
                                 uint64_t budget,
                                 uint32_t *mask);

/**
 * SVG of the folded wedge with default styling.
 *
 * # Safety
 * `w` must be a live wedge handle; `out` must be writable.
 */
enum WwStatus ww_render_wedge(const struct WwWedge *w, char **out);

/**
 * SVG of the unfolded arrangement with default styling.
 *
 * # Safety
 * `w` must be a live wedge handle; `out` must be writable.
 */
enum WwStatus ww_render_arrangement(const struct WwWedge *w, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WEDGEWORK_H */

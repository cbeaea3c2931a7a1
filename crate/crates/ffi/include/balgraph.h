#ifndef BALGRAPH_H
#define BALGRAPH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum BgStatus {
  BG_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  BG_STATUS_NULL_ARGUMENT = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  BG_STATUS_INVALID_UTF8 = 2,
  /**
   * Graph, group or labeling text did not parse.
   */
  BG_STATUS_PARSE = 3,
  /**
   * Arguments are inconsistent: missing labels, wrong graph, bad parameters.
   */
  BG_STATUS_INVALID = 4,
  /**
   * A brute-force operation exceeded its cap.
   */
  BG_STATUS_CAP_EXCEEDED = 5,
  /**
   * The result is infinite.
   */
  BG_STATUS_INFINITE = 6,
  /**
   * The result does not fit in 64 bits.
   */
  BG_STATUS_OVERFLOW = 7,
  /**
   * Internal failure; the handle arguments are still valid.
   */
  BG_STATUS_PANIC = 8,
} BgStatus;

typedef enum BgFamily {
  BG_FAMILY_HF = 0,
  BG_FAMILY_BF = 1,
  BG_FAMILY_WF = 2,
  BG_FAMILY_HR = 3,
  BG_FAMILY_BR = 4,
  BG_FAMILY_WR = 5,
} BgFamily;

/**
 * A directed multigraph.
 */
typedef struct BgGraph BgGraph;

/**
 * A finitely generated Abelian group.
 */
typedef struct BgGroup BgGroup;

/**
 * A labeling of one graph's vertices and edges over one group.
 */
typedef struct BgLabeling BgLabeling;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread. Valid until the next
 * call into this library from the same thread; never null.
 */
const char *bg_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void bg_string_free(char *s);

/**
 * Parses a group spec such as `"Z^2 x Z/4"`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string; `out_group` must be writable.
 */
enum BgStatus bg_group_parse(const char *spec, struct BgGroup **out_group);

/**
 * # Safety
 * `group` must be null or a handle from `bg_group_parse`, not yet freed.
 */
void bg_group_free(struct BgGroup *group);

/**
 * Number of elements. `BG_STATUS_INFINITE` for groups with a free factor.
 *
 * # Safety
 * `group` must be a live handle; `out_size` must be writable.
 */
enum BgStatus bg_group_cardinality(const struct BgGroup *group, uint64_t *out_size);

/**
 * Parses the line-oriented graph format (`v <id>`, `e <id> <tail> <head>`).
 *
 * # Safety
 * `source` must be a NUL-terminated string; `out_graph` must be writable.
 */
enum BgStatus bg_graph_parse(const char *source, struct BgGraph **out_graph);

/**
 * # Safety
 * `graph` must be null or a handle from `bg_graph_parse`, not yet freed.
 */
void bg_graph_free(struct BgGraph *graph);

/**
 * # Safety
 * `graph` must be null or a live handle. Returns 0 for null.
 */
size_t bg_graph_vertex_count(const struct BgGraph *graph);

/**
 * # Safety
 * `graph` must be null or a live handle. Returns 0 for null.
 */
size_t bg_graph_edge_count(const struct BgGraph *graph);

/**
 * Parses `<id> <coords>` lines against `graph` and `group`. The labeling
 * may be partial; operations that need a total labeling report
 * `BG_STATUS_INVALID`.
 *
 * # Safety
 * Handles must be live; `source` NUL-terminated; `out_labeling` writable.
 */
enum BgStatus bg_labeling_parse(const struct BgGraph *graph,
                                const struct BgGroup *group,
                                const char *source,
                                struct BgLabeling **out_labeling);

/**
 * # Safety
 * `labeling` must be null or a handle from this library, not yet freed.
 */
void bg_labeling_free(struct BgLabeling *labeling);

/**
 * Writes the labeling in its text format. Free the result with
 * `bg_string_free`.
 *
 * # Safety
 * Handles must be live and the labeling built for `graph`; `out_text` writable.
 */
enum BgStatus bg_labeling_to_text(const struct BgGraph *graph,
                                  const struct BgLabeling *labeling,
                                  char **out_text);

/**
 * Decides membership of `labeling` in `family`. For BF and BR the vertex
 * part is tested for balanceability. `*out_balanced` is 1 or 0. When not
 * balanced and `out_witness` is non-null it receives the rendered witness
 * cycle (`"x +e1 y -e2 x"`) and its sum, to be freed with `bg_string_free`;
 * otherwise it is set to null.
 *
 * # Safety
 * Handles must be live; `out_balanced` writable; `out_witness` null or writable.
 */
enum BgStatus bg_check(const struct BgGraph *graph,
                       const struct BgLabeling *labeling,
                       enum BgFamily family,
                       int32_t *out_balanced,
                       char **out_witness);

/**
 * Exponents of `A^p x A_2^q` describing `family` on `graph`.
 *
 * # Safety
 * `graph` must be live; `out_p` and `out_q` writable.
 */
enum BgStatus bg_structure(const struct BgGraph *graph,
                           enum BgFamily family,
                           size_t *out_p,
                           size_t *out_q);

/**
 * Size of `family` on `graph` over `group`, from the closed form.
 *
 * # Safety
 * Handles must be live; `out_size` writable.
 */
enum BgStatus bg_structure_cardinality(const struct BgGraph *graph,
                                       const struct BgGroup *group,
                                       enum BgFamily family,
                                       uint64_t *out_size);

/**
 * Size of `family` on `graph` over the finite `group`, by visiting every
 * labeling. `max_enumeration` of 0 uses the default cap.
 *
 * # Safety
 * Handles must be live; `out_count` writable.
 */
enum BgStatus bg_exhaustive_count(const struct BgGraph *graph,
                                  const struct BgGroup *group,
                                  enum BgFamily family,
                                  uint64_t max_enumeration,
                                  uint64_t *out_count);

/**
 * A random member of `family`, deterministic in `seed`. For BF and BR the
 * result is a balanceable vertex function.
 *
 * # Safety
 * Handles must be live; `out_labeling` writable.
 */
enum BgStatus bg_sample(const struct BgGraph *graph,
                        const struct BgGroup *group,
                        enum BgFamily family,
                        uint64_t seed,
                        struct BgLabeling **out_labeling);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BALGRAPH_H */

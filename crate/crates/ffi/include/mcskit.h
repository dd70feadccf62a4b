#ifndef MCSKIT_H
#define MCSKIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum McsStatus {
  MCS_STATUS_OK = 0,
  MCS_STATUS_NULL_ARGUMENT = 1,
  MCS_STATUS_INVALID_UTF8 = 2,
  MCS_STATUS_PARSE_ERROR = 3,
  MCS_STATUS_INVALID_PAIR = 4,
  MCS_STATUS_TIMEOUT = 5,
  MCS_STATUS_UNIVERSE_TOO_LARGE = 6,
  MCS_STATUS_IO_ERROR = 7,
  MCS_STATUS_PANIC = 8,
} McsStatus;

typedef enum McsInputFormat {
  MCS_INPUT_FORMAT_EDGE_LIST = 0,
  MCS_INPUT_FORMAT_JSON = 1,
} McsInputFormat;

typedef enum McsMethod {
  MCS_METHOD_FAST = 0,
  MCS_METHOD_SHANNON = 1,
  MCS_METHOD_COMBINATORIAL = 2,
} McsMethod;

/**
 * A family of element sets, stored as labels in canonical order.
 */
typedef struct McsFamily McsFamily;

/**
 * A parsed network.
 */
typedef struct McsTopology McsTopology;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a topology from NUL-terminated text.
 *
 * # Safety
 * `text` must be a valid C string and `out` a valid pointer.
 */
enum McsStatus mcs_topology_parse(const char *text,
                                  enum McsInputFormat format,
                                  struct McsTopology **out);

/**
 * Reads a topology file; the format follows the extension (`.json` or
 * edge list).
 *
 * # Safety
 * `path` must be a valid C string and `out` a valid pointer.
 */
enum McsStatus mcs_topology_load(const char *path, struct McsTopology **out);

/**
 * # Safety
 * `t` must come from this library and not be used afterwards. Null is a no-op.
 */
void mcs_topology_free(struct McsTopology *t);

/**
 * Number of nodes, or 0 for a null handle.
 *
 * # Safety
 * `t` must be null or a live handle.
 */
size_t mcs_topology_num_nodes(const struct McsTopology *t);

/**
 * Number of edges, or 0 for a null handle.
 *
 * # Safety
 * `t` must be null or a live handle.
 */
size_t mcs_topology_num_edges(const struct McsTopology *t);

/**
 * Minimal path sets between `src` and `dst`, as path interiors.
 *
 * # Safety
 * Pointers must be valid; `src` and `dst` must be C strings.
 */
enum McsStatus mcs_find_mps(const struct McsTopology *t,
                            const char *src,
                            const char *dst,
                            bool include_edges,
                            struct McsFamily **out);

/**
 * Minimal cut sets between `src` and `dst`. A `timeout_ms` of 0 means no
 * limit.
 *
 * # Safety
 * Pointers must be valid; `src` and `dst` must be C strings.
 */
enum McsStatus mcs_compute(const struct McsTopology *t,
                           const char *src,
                           const char *dst,
                           enum McsMethod method,
                           uint64_t timeout_ms,
                           bool include_edges,
                           struct McsFamily **out);

/**
 * Number of member sets, or 0 for a null handle.
 *
 * # Safety
 * `f` must be null or a live handle.
 */
size_t mcs_family_len(const struct McsFamily *f);

/**
 * Size of member `index`, or 0 when out of range.
 *
 * # Safety
 * `f` must be null or a live handle.
 */
size_t mcs_family_set_len(const struct McsFamily *f, size_t index);

/**
 * The family as a JSON array of label arrays. Free with [`mcs_string_free`].
 * Returns null for a null handle.
 *
 * # Safety
 * `f` must be null or a live handle.
 */
char *mcs_family_to_json(const struct McsFamily *f);

/**
 * # Safety
 * `f` must come from this library and not be used afterwards. Null is a no-op.
 */
void mcs_family_free(struct McsFamily *f);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards. Null is a no-op.
 */
void mcs_string_free(char *s);

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next call into this library on the same thread.
 */
const char *mcs_last_error_message(void);

/**
 * Static name of a status code.
 */
const char *mcs_status_name(enum McsStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MCSKIT_H */

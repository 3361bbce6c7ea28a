/* SPDX-License-Identifier: Apache-2.0 */

#ifndef AIG_ORCH_H
#define AIG_ORCH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum AigCecVerdict {
  AIG_CEC_VERDICT_EQUIVALENT = 0,
  AIG_CEC_VERDICT_COUNTEREXAMPLE = 1,
  /**
   * No difference found by random simulation.
   */
  AIG_CEC_VERDICT_UNKNOWN = 2,
} AigCecVerdict;

typedef enum AigStatus {
  AIG_STATUS_OK = 0,
  AIG_STATUS_NULL_ARGUMENT = 1,
  AIG_STATUS_IO = 2,
  AIG_STATUS_PARSE = 3,
  AIG_STATUS_INVALID_ARGUMENT = 4,
  AIG_STATUS_BUFFER_TOO_SMALL = 5,
  AIG_STATUS_INTERNAL = 6,
} AigStatus;

/**
 * An owned And-Inverter Graph.
 */
typedef struct AigHandle AigHandle;

/**
 * Summary of a pass, policy or script run.
 */
typedef struct AigPassStats {
  size_t nodes_before;
  size_t nodes_after;
  uint32_t depth_before;
  uint32_t depth_after;
  size_t valid_rw;
  size_t valid_rs;
  size_t valid_rf;
  size_t total_iterations;
} AigPassStats;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. The pointer is
 * valid until the next failing call on the same thread.
 */
const char *aig_orch_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *aig_orch_version(void);

/**
 * Reads an AIGER file (ASCII or binary).
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` a writable pointer.
 */
enum AigStatus aig_orch_read_file(const char *path, struct AigHandle **out);

/**
 * Parses AIGER data from memory.
 *
 * # Safety
 * `data` must point to `len` readable bytes and `out` be writable.
 */
enum AigStatus aig_orch_parse(const uint8_t *data, size_t len, struct AigHandle **out);

/**
 * Writes the graph; a `.aag` extension selects ASCII, anything else binary.
 *
 * # Safety
 * `h` must be a live handle and `path` a NUL-terminated string.
 */
enum AigStatus aig_orch_write_file(const struct AigHandle *h, const char *path);

/**
 * Serializes the graph as binary AIGER into `buf`. The required size is
 * always stored in `written`; `BufferTooSmall` is returned when `cap` is
 * not enough, so a first call with `cap = 0` queries the size.
 *
 * # Safety
 * `h` must be a live handle, `buf` must have room for `cap` bytes and
 * `written` must be writable.
 */
enum AigStatus aig_orch_write_binary(const struct AigHandle *h,
                                     uint8_t *buf,
                                     size_t cap,
                                     size_t *written);

/**
 * Copies a graph.
 *
 * # Safety
 * `h` must be a live handle and `out` writable.
 */
enum AigStatus aig_orch_clone(const struct AigHandle *h, struct AigHandle **out);

/**
 * Releases a handle. NULL is ignored.
 *
 * # Safety
 * `h` must come from this library and not be used afterwards.
 */
void aig_orch_free(struct AigHandle *h);

/**
 * Number of AND nodes, 0 for NULL.
 *
 * # Safety
 * `h` must be NULL or a live handle.
 */
size_t aig_orch_num_ands(const struct AigHandle *h);

/**
 * # Safety
 * `h` must be NULL or a live handle.
 */
size_t aig_orch_num_pis(const struct AigHandle *h);

/**
 * # Safety
 * `h` must be NULL or a live handle.
 */
size_t aig_orch_num_pos(const struct AigHandle *h);

/**
 * Longest PI-to-PO path in AND nodes, 0 for NULL.
 *
 * # Safety
 * `h` must be NULL or a live handle.
 */
uint32_t aig_orch_depth(const struct AigHandle *h);

/**
 * Runs one pass or policy in place: `rw`, `rs`, `rf`, `b`, `o1`..`o6`,
 * `lgp`, their zero-cost forms (`rwz`, `z1`.., `lgpz`), optionally with a
 * window such as `rs -K 6`. `stats` may be NULL.
 *
 * # Safety
 * `h` must be a live handle, `pass` a NUL-terminated string and `stats`
 * NULL or writable.
 */
enum AigStatus aig_orch_run_pass(struct AigHandle *h, const char *pass, struct AigPassStats *stats);

/**
 * Runs a `;`-separated script or a built-in flow (`resyn`, `resyn3`,
 * `o-resyn`, `o-resyn3`, `lgp-resyn`, `lgp-resyn3`) in place.
 *
 * # Safety
 * As for `aig_orch_run_pass`.
 */
enum AigStatus aig_orch_run_flow(struct AigHandle *h,
                                 const char *script,
                                 struct AigPassStats *stats);

/**
 * Combinational equivalence by simulation. With `exhaustive` the check is
 * complete (at most 16 inputs); otherwise `patterns` seeded random
 * patterns are used, or the exhaustive check when the graphs are narrow
 * enough and `patterns` is 0.
 *
 * # Safety
 * `a` and `b` must be live handles and `verdict` writable.
 */
enum AigStatus aig_orch_cec(const struct AigHandle *a,
                            const struct AigHandle *b,
                            bool exhaustive,
                            uint64_t patterns,
                            uint64_t seed,
                            enum AigCecVerdict *verdict);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* AIG_ORCH_H */

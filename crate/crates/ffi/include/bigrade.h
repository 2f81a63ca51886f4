#ifndef BIGRADE_H
#define BIGRADE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result codes shared by every entry point.
 */
typedef enum BgStatus {
  BG_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  BG_STATUS_NULL = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  BG_STATUS_UTF8 = 2,
  /**
   * Malformed word, level, ordinal or catalog text.
   */
  BG_STATUS_PARSE = 3,
  /**
   * The input parsed but the computation is undefined or failed.
   */
  BG_STATUS_MATH = 4,
  /**
   * No catalog entry of that name.
   */
  BG_STATUS_NOT_FOUND = 5,
  /**
   * Internal panic; the handle arguments are left untouched.
   */
  BG_STATUS_PANIC = 6,
} BgStatus;

/**
 * Opaque automorphism handle.
 */
typedef struct BgAut BgAut;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *bg_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void bg_string_free(char *s);

/**
 * Looks up a catalog element by `name` or `file:name`.
 *
 * # Safety
 * `name` must be a NUL-terminated string; `out` must be writable.
 */
enum BgStatus bg_aut_from_catalog(const char *name, struct BgAut **out);

/**
 * Builds an element from one catalog entry in JSON form.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum BgStatus bg_aut_from_json(const char *json, struct BgAut **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `h` must come from this library and not be freed twice.
 */
void bg_aut_free(struct BgAut *h);

/**
 * `a ∘ b` (apply `b` first).
 *
 * # Safety
 * Handles must be live; `out` must be writable.
 */
enum BgStatus bg_aut_compose(const struct BgAut *a, const struct BgAut *b, struct BgAut **out);

/**
 * # Safety
 * `a` must be live; `out` must be writable.
 */
enum BgStatus bg_aut_inverse(const struct BgAut *a, struct BgAut **out);

/**
 * Image of a word such as `x1 y2^-1`, as reduced word text.
 *
 * # Safety
 * `a` must be live, `word` NUL-terminated, `out` writable.
 */
enum BgStatus bg_aut_apply(const struct BgAut *a, const char *word, char **out);

/**
 * Whether the element fixes the boundary word of its surface alphabet.
 *
 * # Safety
 * `a` must be live; `out` writable.
 */
enum BgStatus bg_aut_fixes_boundary(const struct BgAut *a, bool *out);

/**
 * Magnus expansion of a word up to `bound`, as series text. Weights
 * `wx = wy = 1` give the ordinary expansion.
 *
 * # Safety
 * `word` NUL-terminated; `out` writable.
 */
enum BgStatus bg_expand(const char *word, uint32_t bound, uint32_t wx, uint32_t wy, char **out);

/**
 * Rank of `Lie_{m,n}` for `p` generators `a_i` and `q` generators `b_j`.
 *
 * # Safety
 * `out` writable.
 */
enum BgStatus bg_lie_dim(size_t p, size_t q, size_t m, size_t n, size_t *out);

/**
 * Natural sum of two ordinals in the text syntax `w^2*3+w+5`.
 *
 * # Safety
 * Inputs NUL-terminated; `out` writable.
 */
enum BgStatus bg_ordinal_sum(const char *a, const char *b, char **out);

/**
 * Johnson image as a JSON document. `kind` is `classical`, `double`,
 * `edge` or `alt`; `level` is `m,n` for the double kinds and a single
 * degree otherwise.
 *
 * # Safety
 * `a` live, strings NUL-terminated, `out` writable.
 */
enum BgStatus bg_tau_json(const struct BgAut *a,
                          const char *kind,
                          const char *level,
                          uint32_t bound,
                          size_t battery,
                          uint64_t seed,
                          char **out);

/**
 * Maximal verified levels and refutation witnesses as JSON.
 *
 * # Safety
 * `a` live; `out` writable.
 */
enum BgStatus bg_probe_json(const struct BgAut *a,
                            int32_t max_total,
                            uint32_t bound,
                            size_t battery,
                            uint64_t seed,
                            char **out);

/**
 * Name the handle was created under; caller frees the string.
 *
 * # Safety
 * `a` live; `out` writable.
 */
enum BgStatus bg_aut_name(const struct BgAut *a, char **out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* BIGRADE_H */

/* C interface to the rssw exact-arithmetic toolkit. */

#ifndef RSSW_H
#define RSSW_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every entry point.
 */
typedef enum RsswStatus {
  RSSW_STATUS_OK = 0,
  /**
   * malformed argument or unexpected internal state
   */
  RSSW_STATUS_INVALID_ARGUMENT = 1,
  /**
   * expression failed to parse
   */
  RSSW_STATUS_PARSE_ERROR = 2,
  /**
   * a mathematical hypothesis was violated (definite form,
   * signature not divisible by 16)
   */
  RSSW_STATUS_HYPOTHESIS_VIOLATION = 3,
  /**
   * numerical failure in the sandbox (cutoff collision,
   * non-convergent iteration)
   */
  RSSW_STATUS_NUMERIC = 4,
  /**
   * a required pointer was null or a string was not valid UTF-8
   */
  RSSW_STATUS_NULL_POINTER = 5,
  /**
   * unexpected panic inside the library
   */
  RSSW_STATUS_INTERNAL = 6,
} RsswStatus;

/**
 * Feasibility verdict for the equivariant-degree obstruction.
 */
typedef enum RsswVerdict {
  RSSW_VERDICT_NOT_EXCLUDED_K_ZERO = 0,
  RSSW_VERDICT_NOT_EXCLUDED_M_LARGE = 1,
  RSSW_VERDICT_EXCLUDED_TRACE_FRACTION = 2,
  RSSW_VERDICT_EXCLUDED_PARITY = 3,
} RsswVerdict;

/**
 * Opaque handle to a parsed and expanded manifold expression.
 */
typedef struct RsswManifold RsswManifold;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Frees a string previously returned by this library.  NULL is ignored.
 *
 * # Safety
 * `s` must have been produced by an rssw function and not freed before.
 */
void rssw_string_free(char *s);

/**
 * Library version as a static string; do not free.
 */
const char *rssw_version(void);

/**
 * Parses a connected-sum expression into an opaque handle.
 *
 * # Safety
 * `expr` must be a valid NUL-terminated string; `out` must be writable.
 */
enum RsswStatus rssw_manifold_parse(const char *expr, struct RsswManifold **out);

/**
 * Releases a manifold handle.  NULL is ignored.
 *
 * # Safety
 * `m` must come from `rssw_manifold_parse` and not be freed twice.
 */
void rssw_manifold_free(struct RsswManifold *m);

/**
 * Reads the derived intersection-form invariants from a handle.
 *
 * # Safety
 * `m` must be a live handle; the out pointers, when non-null, must be
 * writable.
 */
enum RsswStatus rssw_manifold_invariants(const struct RsswManifold *m,
                                         int64_t *b2,
                                         int64_t *sigma,
                                         int64_t *b2_plus,
                                         int64_t *b2_minus);

/**
 * Runs the full analysis on a handle and returns the report as JSON.
 *
 * # Safety
 * `m` must be a live handle; `out_json` must be writable.
 */
enum RsswStatus rssw_manifold_analyze_json(const struct RsswManifold *m, char **out_json);

/**
 * One-shot analysis of a connected-sum expression; returns JSON.
 *
 * # Safety
 * `expr` must be a valid NUL-terminated string; `out_json` writable.
 */
enum RsswStatus rssw_analyze_json(const char *expr, char **out_json);

/**
 * Index of the twisted operator, as the exact rational num/den.
 * The value is 19 sigma/8 + 5 c1sq/2 and does not depend on the Euler
 * characteristic; the full characteristic-class pipeline runs internally.
 *
 * # Safety
 * `out_num` and `out_den` must be writable.
 */
enum RsswStatus rssw_index_rs(int64_t sigma, int64_t c1sq, int64_t *out_num, int64_t *out_den);

/**
 * Index of the twisted Dirac operator, as the exact rational num/den.
 *
 * # Safety
 * `out_num` and `out_den` must be writable.
 */
enum RsswStatus rssw_index_dirac(int64_t sigma, int64_t c1sq, int64_t *out_num, int64_t *out_den);

/**
 * Verdict of the exclusion logic for counts (k, m) with free parameters
 * (r, s).
 *
 * # Safety
 * `out` must be writable.
 */
enum RsswStatus rssw_feasibility(int64_t k,
                                 uint64_t m,
                                 uint64_t r,
                                 uint64_t s,
                                 enum RsswVerdict *out);

/**
 * Evaluates a representation-ring expression; returns the normal form and
 * the three characters as JSON.
 *
 * # Safety
 * `expr` must be a valid NUL-terminated string; `out_json` writable.
 */
enum RsswStatus rssw_repring_eval_json(const char *expr, char **out_json);

/**
 * Runs the equivariance identity suite; returns the per-lemma table as
 * JSON.
 *
 * # Safety
 * `out_json` must be writable.
 */
enum RsswStatus rssw_equivariance_suite_json(size_t samples, uint64_t seed, char **out_json);

/**
 * Runs the Kuranishi sandbox battery; returns the report as JSON.
 *
 * # Safety
 * `out_json` must be writable.
 */
enum RsswStatus rssw_kuranishi_demo_json(uint64_t seed,
                                         size_t dim_c,
                                         size_t dim_r,
                                         double gamma,
                                         double cutoff,
                                         char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RSSW_H */

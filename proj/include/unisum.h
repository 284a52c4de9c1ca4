/*
 * unisum C API: exact decision, construction and verification toolkit for
 * laws of sums of n standard-uniform random variables under arbitrary
 * dependence.
 *
 * Conventions:
 *   - Every function returns a unisum_status; outputs go through pointers.
 *   - Rationals are exact decimal strings "p/q" (or "p").
 *   - Structured payloads are JSON strings; schemas are documented in the
 *     project README. Strings returned through char** are heap-allocated
 *     and must be released with unisum_string_free().
 *   - Handles are opaque; release them with the matching *_free().
 *   - unisum_last_error() describes the most recent failure on the calling
 *     thread.
 */

#ifndef UNISUM_H
#define UNISUM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define UNISUM_API __declspec(dllexport)
#else
#define UNISUM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum unisum_status {
  UNISUM_OK = 0,
  UNISUM_ERR_PARSE = 1,     /* malformed JSON or rational literal */
  UNISUM_ERR_INVARIANT = 2, /* structural invariant violated (mass != 1, ...) */
  UNISUM_ERR_DOMAIN = 3,    /* arguments outside an operation's domain */
  UNISUM_ERR_TIMEOUT = 4,   /* deadline exceeded */
  UNISUM_ERR_INTERNAL = 5
} unisum_status;

typedef struct unisum_dist unisum_dist;         /* atoms + uniform pieces, mass 1 */
typedef struct unisum_coupling unisum_coupling; /* piecewise slope +-1 coupling */

UNISUM_API const char* unisum_version(void);
UNISUM_API const char* unisum_last_error(void);
UNISUM_API void unisum_string_free(char* s);

/* ---- distributions ---------------------------------------------------- */

UNISUM_API unisum_status unisum_dist_parse_json(const char* json, unisum_dist** out);
UNISUM_API unisum_status unisum_dist_to_json(const unisum_dist* d, char** out_json);
UNISUM_API void unisum_dist_free(unisum_dist* d);

UNISUM_API unisum_status unisum_dist_mean(const unisum_dist* d, char** out_rat);
UNISUM_API unisum_status unisum_dist_stop_loss(const unisum_dist* d, const char* k,
                                               char** out_rat);
UNISUM_API unisum_status unisum_dist_quantile(const unisum_dist* d, const char* t,
                                              char** out_rat);
UNISUM_API unisum_status unisum_dist_scale_shift(const unisum_dist* d, const char* scale,
                                                 const char* shift, unisum_dist** out);

/* ---- membership -------------------------------------------------------- */

/* hint_json may be NULL (no shape hint); decision_json gets the verdict,
 * the rule that fired and a machine-checkable certificate. */
UNISUM_API unisum_status unisum_decide(const unisum_dist* d, int n, const char* hint_json,
                                       char** decision_json);
UNISUM_API unisum_status unisum_convex_order_vs_uniform(const unisum_dist* d, int n,
                                                        char** decision_json);
UNISUM_API unisum_status unisum_non_integrity(const char* x, char** out_rat);

/* ---- coupling synthesis ------------------------------------------------ */

UNISUM_API unisum_status unisum_synthesize_biatomic(long b_inv, const char* a,
                                                    unisum_coupling** out);
/* tri_case is 'a', 'b' or 'c'; T, b, p1 are rationals in the ladder frame
 * (X ~ U[0,T], Y ~ U[-T,0], sum on {b-2, b-1, b}). */
UNISUM_API unisum_status unisum_synthesize_triatomic(char tri_case, const char* T,
                                                     const char* b, const char* p1,
                                                     unisum_coupling** out);
UNISUM_API unisum_status unisum_extremal_sum_distribution(int n, const char* u, const char* v,
                                                          unisum_dist** out);

UNISUM_API unisum_status unisum_coupling_parse_json(const char* json, unisum_coupling** out);
/* unit_frame != 0 rescales to U[0,1]/U[0,1] margins before serializing. */
UNISUM_API unisum_status unisum_coupling_to_json(const unisum_coupling* c, int unit_frame,
                                                 char** out_json);
UNISUM_API void unisum_coupling_free(unisum_coupling* c);

/* Exact margin + pushforward verification. target may be NULL when the
 * coupling embeds one. */
UNISUM_API unisum_status unisum_verify_coupling(const unisum_coupling* c,
                                                const unisum_dist* target,
                                                char** report_json);
/* Deterministic sampling: fills xs/ys with count draws of (X, Y). */
UNISUM_API unisum_status unisum_coupling_sample(const unisum_coupling* c, uint64_t count,
                                                uint64_t seed, double* xs, double* ys);
/* Monte Carlo check: KS distance of the empirical sum law vs the target
 * plus the DKW 99% band for this sample size. */
UNISUM_API unisum_status unisum_coupling_ks(const unisum_coupling* c, const unisum_dist* target,
                                            uint64_t count, uint64_t seed, double* ks_out,
                                            double* dkw99_out);

/* ---- sharp bounds (n >= 3) --------------------------------------------- */

/* sense is "min" (open interval) or "max" (closed interval). */
UNISUM_API unisum_status unisum_bounds(int n, const char* a, const char* b, const char* sense,
                                       char** result_json);
UNISUM_API unisum_status unisum_cdf_bounds(int n, const char* x, char** result_json);

/* ---- discrete oracle ---------------------------------------------------- */

UNISUM_API unisum_status unisum_oracle_discretize(const unisum_dist* d, int n, int m,
                                                  char** target_json);
/* target_json: {"masses": [...]} (n/m cross-checked when present).
 * timeout_ms = 0 means no deadline. */
UNISUM_API unisum_status unisum_oracle_feasible(const char* target_json, int n, int m,
                                                int emit_witness, uint64_t timeout_ms,
                                                char** report_json);
UNISUM_API unisum_status unisum_oracle_extreme_prob(int n, int m, int lo_cell, int hi_cell,
                                                    const char* sense, uint64_t timeout_ms,
                                                    char** value_out);

#ifdef __cplusplus
}
#endif

#endif /* UNISUM_H */

/* permtyp - permutation typicality toolkit, C API.
 *
 * All functions return a pt_status; outputs are written through out
 * parameters. Heap-allocated results (strings, handles) are owned by the
 * caller and released with pt_string_free / pt_perm_free / pt_dist_free.
 * On failure pt_last_error() carries a thread-local message describing the
 * offending input.
 *
 * Conventions: permutations are 1-indexed image tables; applying a
 * permutation maps position i to the input's position pi(i). JSON payloads
 * use the schemas documented next to each function.
 */
#ifndef PERMTYP_H
#define PERMTYP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define PT_API __declspec(dllexport)
#else
#define PT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct pt_perm pt_perm; /* opaque permutation handle */
typedef struct pt_dist pt_dist; /* opaque joint-distribution handle */

typedef enum pt_status {
  PT_OK = 0,
  PT_ERR_INVALID = 1,    /* malformed or out-of-contract input */
  PT_ERR_INFEASIBLE = 2, /* exact enumeration would exceed its guard */
  PT_ERR_VERIFY = 3,     /* a verification suite found a violation */
  PT_ERR_INTERNAL = 4
} pt_status;

PT_API const char* pt_last_error(void);
PT_API void pt_string_free(char* s);

/* ---- permutations ------------------------------------------------------ */

PT_API pt_status pt_perm_identity(int32_t n, pt_perm** out);
/* image[i-1] = pi(i); must be a bijection of [1,n]. */
PT_API pt_status pt_perm_from_image(const int32_t* image, int32_t n, pt_perm** out);
/* One-line image notation, e.g. "5 1 4 3 2". */
PT_API pt_status pt_perm_parse_image(const char* text, pt_perm** out);
/* Cycle notation, e.g. "(1 2 5)(3 4)"; n = 0 infers the largest element. */
PT_API pt_status pt_perm_parse_cycles(const char* text, int32_t n, pt_perm** out);
/* Consecutive-integer cycles of the given lengths (each >= 2, laid down in
 * the order given), then m fixed points. */
PT_API pt_status pt_perm_standard(int32_t m, const int32_t* lengths, int32_t c,
                                  pt_perm** out);
/* Uniformly random permutation with the given cycle type, seeded. */
PT_API pt_status pt_perm_random_with_type(int32_t m, const int32_t* lengths, int32_t c,
                                          uint64_t seed, pt_perm** out);
PT_API void pt_perm_free(pt_perm* p);

PT_API int32_t pt_perm_n(const pt_perm* p);
/* buf must hold n entries; written 1-indexed. */
PT_API pt_status pt_perm_image(const pt_perm* p, int32_t* buf);
PT_API pt_status pt_perm_compose(const pt_perm* p, const pt_perm* q, pt_perm** out);
PT_API pt_status pt_perm_inverse(const pt_perm* p, pt_perm** out);
/* out[i-1] = in[pi(i)-1]; buffers hold n entries and may not alias. */
PT_API pt_status pt_perm_apply(const pt_perm* p, const int32_t* in, int32_t* out);
PT_API pt_status pt_perm_apply_inverse(const pt_perm* p, const int32_t* in, int32_t* out);
/* Pass lengths = NULL to query c, then call again with a buffer of size c.
 * Lengths come back sorted ascending. */
PT_API pt_status pt_perm_cycle_type(const pt_perm* p, int32_t* m, int32_t* c,
                                    int32_t* lengths);
PT_API pt_status pt_perm_cycles_text(const pt_perm* p, char** out);
PT_API pt_status pt_perm_image_text(const pt_perm* p, char** out);
PT_API int32_t pt_perm_fixed_point_count(const pt_perm* p);
/* buf must hold pt_perm_fixed_point_count(p) entries; ascending, 1-indexed. */
PT_API pt_status pt_perm_fixed_points(const pt_perm* p, int32_t* buf);
PT_API int32_t pt_perm_is_derangement(const pt_perm* p);
PT_API pt_status pt_perm_same_cycle_type(const pt_perm* p, const pt_perm* q, int32_t* out);

/* ---- set partitions and Bell signatures -------------------------------- */

/* Canonical partitions of [1,k] (block count descending, then restricted
 * growth string ascending), one per line in "{1,2}{3}" form. 1 <= k <= 12. */
PT_API pt_status pt_partitions_text(int32_t k, char** out);
/* Decimal Bell number b_k. */
PT_API pt_status pt_bell_number(int32_t k, char** out);
/* Signature of (perms[0], ..., perms[k-1]) over the canonical partition
 * order, as a comma list "2,1,0,3,1". */
PT_API pt_status pt_bell_signature(const pt_perm* const* perms, int32_t k, char** out);
PT_API pt_status pt_is_kfold_derangement(const pt_perm* const* perms, int32_t k,
                                         int32_t* out);

/* ---- distributions ------------------------------------------------------ */

/* {"alphabet_sizes":[2,2],"probs":[[0.45,0.05],[0.05,0.45]]}, probs nested
 * row-major by coordinate order. */
PT_API pt_status pt_dist_from_json(const char* json, pt_dist** out);
PT_API pt_status pt_dist_to_json(const pt_dist* d, char** out);
/* Doubly symmetric binary source with crossover p. The _exact form keeps
 * rational cells for exact typicality tests. */
PT_API pt_status pt_dist_dsbs(double p, pt_dist** out);
PT_API pt_status pt_dist_dsbs_exact(int64_t p_num, int64_t p_den, pt_dist** out);
PT_API void pt_dist_free(pt_dist* d);
PT_API int32_t pt_dist_arity(const pt_dist* d);
PT_API pt_status pt_dist_mutual_information(const pt_dist* d, double* out);
PT_API pt_status pt_dist_kl(const pt_dist* p, const pt_dist* q, double* out);

/* ---- counting ----------------------------------------------------------- */
/* Counting results carry arbitrary-precision integers, so they are returned
 * as JSON: {"lower":..,"exact":..,"upper":..,"log10_lower":..,
 * "log10_upper":..}; integers that fit 64 bits are numbers, larger ones are
 * decimal strings. with_rates adds the normalized log-count rate(s). */

PT_API pt_status pt_derangements(int64_t n, char** out);
PT_API pt_status pt_count_fixed(int64_t n, int64_t m, int32_t with_rates, char** out_json);
PT_API pt_status pt_count_kfold(int32_t n, int32_t k, char** out_json);
PT_API pt_status pt_count_bell(int32_t n, int32_t k, const int64_t* sig, int32_t sig_len,
                               int32_t with_rates, char** out_json);

/* ---- probability bounds -------------------------------------------------- */
/* BoundReport JSON: {"kind":..,"exponent_rate_bits":..,"explicit_bound":..,
 * "polynomial_factor":..,"log2_polynomial_factor":..,"vacuous":..,
 * "params":{...}}. */

PT_API pt_status pt_bound_thm1(const pt_dist* d, int64_t n, int64_t m, double eps,
                               char** out_json);
PT_API pt_status pt_bound_lemma4(const pt_dist* d, int64_t n, double eps, char** out_json);
PT_API pt_status pt_bound_lemma5(const pt_dist* d, int64_t n, int32_t s, double eps,
                                 char** out_json);
PT_API pt_status pt_bound_thm2(const pt_dist* d, int64_t n, const int64_t* sig,
                               int32_t sig_len, double eps, char** out_json);

/* ---- estimation and verification ---------------------------------------- */

/* Exact probability that the permuted sample is typical; perms has one entry
 * per coordinate of d, each on [1,n]. PT_ERR_INFEASIBLE past ~1e7 outcomes. */
PT_API pt_status pt_exact_typicality_prob(const pt_dist* d, const pt_perm* const* perms,
                                          int32_t k, int32_t n, double eps, double* out);

/* Monte Carlo estimate; deterministic in (seed, trials) for any worker count.
 * Attaches the exact value when enumeration is feasible and the matching
 * bound (thm1 for pairs, thm2 otherwise). EstimateReport JSON:
 * {"p_hat":..,"stderr":..,"trials":..,"seed":..,"exact":..?,"bound":{..}?,
 *  "notice":..?}. */
PT_API pt_status pt_simulate(const pt_dist* d, const pt_perm* const* perms, int32_t k,
                             int32_t n, double eps, int64_t trials, uint64_t seed,
                             int32_t workers, char** out_json);

/* Permutation-invariance checks by exact enumeration. Returns PT_ERR_VERIFY
 * when the max discrepancy exceeds 1e-12. */
PT_API pt_status pt_verify_prop1(const pt_dist* d, int32_t n, double eps, uint64_t seed,
                                 char** out_json);

/* Bound soundness sweep (CSV, one row per configuration). Returns
 * PT_ERR_VERIFY when any configuration violates its bound. */
PT_API pt_status pt_verify_bounds_default(char** out_csv);

#ifdef __cplusplus
}
#endif

#endif /* PERMTYP_H */

#ifndef LREG_LREG_H
#define LREG_LREG_H

/* C interface to the lreg library.
 *
 * Every fallible call returns an lreg_status. On failure lreg_last_error()
 * describes the problem; the message belongs to the calling thread and stays
 * valid until its next lreg call. Strings handed out through char** outputs
 * are owned by the caller and released with lreg_string_free. Reports are JSON
 * documents.
 *
 * Rings are named "exact", "mod2^k" (1 <= k <= 63) or by a power of two ("8").
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define LREG_API __declspec(dllexport)
#else
#define LREG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lreg_status {
  LREG_OK = 0,
  LREG_INVALID_ARGUMENT = 1,
  LREG_RING_MISMATCH = 2,
  LREG_NON_UNIT = 3,
  LREG_TRUNCATION = 4,
  LREG_INAPPLICABLE = 5,
  LREG_NOMEM = 6,
  LREG_INTERNAL = 7
} lreg_status;

/* Outcome of a check; numerically equal to the CLI exit code. */
typedef enum lreg_verdict { LREG_VERDICT_PASS = 0, LREG_VERDICT_FAIL = 1, LREG_VERDICT_INAPPLICABLE = 2 } lreg_verdict;

typedef struct lreg_series lreg_series;

LREG_API const char* lreg_version(void);
LREG_API const char* lreg_status_name(lreg_status status);
LREG_API const char* lreg_last_error(void);
LREG_API void lreg_string_free(char* s);

/* Series construction. spec is one of b<ell>, b3even, b9odd, b9mult4,
 * b21odd4, eta:<d:r,...> or expr:<expression>. */
LREG_API lreg_status lreg_series_from_spec(const char* spec, int64_t trunc, const char* ring, lreg_series** out);
LREG_API lreg_status lreg_series_from_json(const char* json, lreg_series** out);
LREG_API lreg_status lreg_series_theta(int64_t a, int64_t b, int64_t c, int positive_only, int64_t trunc,
                                       const char* ring, lreg_series** out);
LREG_API void lreg_series_free(lreg_series* s);

LREG_API int64_t lreg_series_trunc(const lreg_series* s);
/* Writes the coefficient of q^n as a decimal string. */
LREG_API lreg_status lreg_series_coeff(const lreg_series* s, int64_t n, char** out);
LREG_API lreg_status lreg_series_to_json(const lreg_series* s, char** out);

LREG_API lreg_status lreg_series_add(const lreg_series* x, const lreg_series* y, lreg_series** out);
LREG_API lreg_status lreg_series_sub(const lreg_series* x, const lreg_series* y, lreg_series** out);
LREG_API lreg_status lreg_series_mul(const lreg_series* x, const lreg_series* y, lreg_series** out);
LREG_API lreg_status lreg_series_inverse(const lreg_series* x, lreg_series** out);
LREG_API lreg_status lreg_series_dissect(const lreg_series* x, int64_t d, int64_t r, lreg_series** out);
LREG_API lreg_status lreg_series_inflate(const lreg_series* x, int64_t d, lreg_series** out);
LREG_API lreg_status lreg_series_hecke(const lreg_series* x, int64_t p, int64_t weight, int chi_p,
                                       lreg_series** out);
/* equal is set to 1 or 0; first_mismatch to the first differing exponent or -1. */
LREG_API lreg_status lreg_series_compare(const lreg_series* x, const lreg_series* y, int* equal,
                                         int64_t* first_mismatch);

/* Checks c(A n + B) = 0 (mod modulus) for 0 <= n <= nmax. */
LREG_API lreg_status lreg_claim_check(const lreg_series* source, int64_t A, int64_t B, const char* modulus,
                                      int64_t nmax, lreg_verdict* verdict, char** report);

LREG_API lreg_status lreg_identity_catalog(char** report);
LREG_API lreg_status lreg_identity_verify(const char* id, int64_t trunc_exact, int64_t trunc_modular,
                                          lreg_verdict* verdict, char** report);
LREG_API lreg_status lreg_identity_check(const char* lhs, const char* rhs, const char* ring, int64_t trunc,
                                         lreg_verdict* verdict, char** report);

LREG_API lreg_status lreg_etaform_inspect(const char* exponents, int64_t level, char** report);
LREG_API lreg_status lreg_sturm_bound(int64_t weight, int64_t level, int same_character, int64_t* out);
LREG_API lreg_status lreg_sturm_level51(lreg_verdict* verdict, char** report);
LREG_API lreg_status lreg_cotron(const char* numerator, const char* denominator, int64_t p, int64_t a,
                                 lreg_verdict* verdict, char** report);

/* rprime may be NULL or "" for the zero vector. verdict is PASS for proven. */
LREG_API lreg_status lreg_radu_verify(int64_t m, int64_t M, int64_t N, const char* r, int64_t t,
                                      const char* rprime, const char* modulus, lreg_verdict* verdict,
                                      char** report);

LREG_API lreg_status lreg_hecke_selfsim(int64_t p, int64_t bound, lreg_verdict* verdict, char** report);
LREG_API lreg_status lreg_hecke_scan(int64_t pmin, int64_t pmax, int64_t bound, int jobs, char** report);
LREG_API lreg_status lreg_hecke_family(int64_t k, int64_t nmax, lreg_verdict* verdict, char** report);

/* Measures r = 0, or every residue when all_residues is nonzero. csv and
 * report may each be NULL. */
LREG_API lreg_status lreg_density_curve(const char* spec, const char* modulus, const int64_t* checkpoints,
                                        size_t n_checkpoints, int all_residues, char** csv, char** report);

LREG_API lreg_status lreg_reproduce(const char* theorem, lreg_verdict* verdict, char** report);

#ifdef __cplusplus
}
#endif

#endif /* LREG_LREG_H */

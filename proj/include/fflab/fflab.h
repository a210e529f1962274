/* fflab C API.
 *
 * All functions return an fflab_status. On failure fflab_last_error() gives a
 * message for the calling thread. Strings returned through char** out
 * parameters are owned by the caller and must be released with
 * fflab_string_free. Handles are released with their *_free function.
 */
#ifndef FFLAB_H
#define FFLAB_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define FFLAB_API __declspec(dllexport)
#else
#define FFLAB_API __attribute__((visibility("default")))
#endif

typedef enum fflab_status {
  FFLAB_OK = 0,
  FFLAB_E_NON_ODD_PRIME = 1,
  FFLAB_E_INVALID_DEGREE,
  FFLAB_E_PARSE,
  FFLAB_E_NOT_SQUARE_FREE,
  FFLAB_E_DEGREE_ZERO,
  FFLAB_E_EVEN_DEGREE,
  FFLAB_E_POLE_AT_EVALUATION,
  FFLAB_E_ZERO_POLYNOMIAL,
  FFLAB_E_NOT_IRREDUCIBLE,
  FFLAB_E_SQUARE_MODULUS,
  FFLAB_E_DOMAIN,
  FFLAB_E_INSUFFICIENT_DECAY,
  FFLAB_E_MASS_DEFECT,
  FFLAB_E_SUPPORT_EXCEEDED,
  FFLAB_E_NON_TERMINATING,
  FFLAB_E_IO,
  FFLAB_E_INVALID_ARGUMENT,
  FFLAB_E_UNSUPPORTED,
  FFLAB_E_VERIFICATION = 64, /* a check ran and failed; output is still produced */
  FFLAB_E_INTERNAL = 99
} fflab_status;

typedef struct fflab_field fflab_field;
typedef struct fflab_cache fflab_cache;

FFLAB_API const char* fflab_version(void);
FFLAB_API const char* fflab_status_name(fflab_status s);
FFLAB_API const char* fflab_last_error(void);
FFLAB_API void fflab_string_free(char* s);

/* q = p^k with p an odd prime */
FFLAB_API fflab_status fflab_field_new(uint32_t q, fflab_field** out);
FFLAB_API void fflab_field_free(fflab_field* f);
FFLAB_API uint32_t fflab_field_order(const fflab_field* f);

/* dir == NULL: $FFLAB_CACHE_DIR, else ./fflab_cache */
FFLAB_API fflab_status fflab_cache_open(const char* dir, fflab_cache** out);
FFLAB_API void fflab_cache_free(fflab_cache* c);

/* D as comma separated coefficients, constant term first. method: auto, direct,
 * pointcount, euler. JSON report; FFLAB_E_VERIFICATION if a check failed. */
FFLAB_API fflab_status fflab_lfun(const fflab_field* f, const char* D, const char* method, char** json_out);

/* Populates H_n. JSON {q, n, count, digest, computed}. */
FFLAB_API fflab_status fflab_sweep(const fflab_field* f, const fflab_cache* c, int n, int workers, char** json_out);

FFLAB_API fflab_status fflab_moments_csv(const fflab_field* f, const fflab_cache* c, int n_lo, int n_hi, int r_lo,
                                         int r_hi, double tol, int workers, char** csv_out);

/* Monte Carlo moments and the density grid. steps <= 0 skips the density.
 * U <= 0 and h <= 0 select the inversion parameters automatically. */
FFLAB_API fflab_status fflab_model_csv(uint32_t q, int cutoff, uint64_t seed, uint64_t samples, int r_max,
                                       int workers, double y_min, double y_max, int steps, double U, double h,
                                       char** moments_csv_out, char** density_csv_out);

FFLAB_API fflab_status fflab_discrepancy_csv(const fflab_field* f, const fflab_cache* c, int n_lo, int n_hi,
                                             int cutoff, uint64_t seed, int workers, char** csv_out);
FFLAB_API fflab_status fflab_histogram_csv(const fflab_field* f, const fflab_cache* c, int n, double bin_width,
                                           int workers, char** csv_out);

/* omega = +1 or -1 */
FFLAB_API fflab_status fflab_omega_csv(const fflab_field* f, const fflab_cache* c, int n, int m, int omega,
                                       int workers, char** summary_csv_out, char** members_csv_out);

/* n odd */
FFLAB_API fflab_status fflab_heights_csv(const fflab_field* f, const fflab_cache* c, int n, double eps, int workers,
                                         char** csv_out);

/* level: fast or full. JSON report; FFLAB_E_VERIFICATION if any check failed. */
FFLAB_API fflab_status fflab_verify(const char* level, int workers, char** json_out);

#ifdef __cplusplus
}
#endif

#endif

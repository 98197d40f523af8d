#ifndef TEMAX_H
#define TEMAX_H

#include <stddef.h>

#if defined(TEMAX_BUILDING_LIBRARY)
#define TE_API __attribute__((visibility("default")))
#else
#define TE_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum te_status {
  TE_OK = 0,
  TE_INVALID_ARGUMENT = 1,
  TE_INVALID_MEDIA = 2,
  TE_BRANCH_DEGENERACY = 3,
  TE_DEGENERATE_SYMBOL = 4,
  TE_UNDEFINED_RATIO = 5,
  TE_CONTOUR_THROUGH_ZERO = 6,
  TE_REFINE_FAILURE = 7,
  TE_DISCRETIZATION = 8,
  TE_DEGENERATE_CONTRAST = 9,
  TE_SWEEP_DIVERGENCE = 10,
  TE_DECAY_VIOLATION = 11,
  TE_PARSE_ERROR = 12,
  TE_INTERNAL_ERROR = 13
} te_status;

typedef enum te_polarization { TE_POL_TE = 0, TE_POL_TM = 1 } te_polarization;

typedef struct te_media te_media;
typedef struct te_run te_run;

/* Message of the last failing call on this thread; empty after a success. */
TE_API const char* te_last_error(void);
TE_API const char* te_status_name(te_status status);
/* 1 for malformed input (parse, invalid argument or media), 0 otherwise. */
TE_API int te_status_is_input_error(te_status status);

TE_API te_status te_media_create(double eps, double mu, double eps_hat, double mu_hat, te_media** out);
/* Constant or radial descriptor, as accepted by the command line tool. */
TE_API te_status te_media_from_json(const char* json, te_media** out);
TE_API void te_media_free(te_media* media);
TE_API te_status te_media_admissible(const te_media* media, int* ok, double margins[3]);

/* Half-space amplitudes at one tangential frequency. Complex values are (re, im) pairs:
   fe, fm, a, a_hat hold two complex numbers each. */
TE_API te_status te_halfspace_solve(const te_media* media, double xi1, double xi2, double k_re, double k_im,
                                    double gamma, const double fe[4], const double fm[4], double a[4],
                                    double a_hat[4], double* maxwell_res, double* bc_res);

TE_API te_status te_symbol_scan(const te_media* media, double gamma, int threads, double* min_ratio_a,
                                double* min_ratio_b);

TE_API te_status te_ball_determinant(const te_media* media, int n, te_polarization pol, double omega_re,
                                     double omega_im, double* f_re, double* f_im);
/* Roots with |omega| <= radius over degrees 1..n_max; omega is filled with up to capacity (re, im) pairs. */
TE_API te_status te_ball_census(const te_media* media, int n_max, double radius, int threads, size_t* count,
                                double* min_gap, double* max_residual, double* omega, size_t capacity);

/* Runs one batch command ("certify", "halfspace", "ball-eigs", "wedge-scan", "operator-spec", "decay")
   on a JSON config. */
TE_API te_status te_run_create(const char* command, const char* config_json, te_run** out);
TE_API void te_run_free(te_run* run);
/* 1 when the command completed with a negative result (e.g. certification failed). */
TE_API int te_run_failed(const te_run* run);
TE_API te_status te_run_report(const te_run* run, char** json_out);
TE_API size_t te_run_table_count(const te_run* run);
TE_API te_status te_run_table(const te_run* run, size_t index, char** name_out, char** csv_out);

TE_API void te_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif

/* C interface of the fermichain library. All functions return an fc_status;
   on failure fc_last_error() describes the problem (thread-local). */
#ifndef FERMICHAIN_H
#define FERMICHAIN_H

#include <stddef.h>

#if defined(_WIN32)
#define FC_API __declspec(dllexport)
#else
#define FC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  FC_OK = 0,
  FC_ERR_DOMAIN = 1,
  FC_ERR_INVALID_ARGUMENT = 2,
  FC_ERR_CONVERGENCE = 3,
  FC_ERR_SINGULAR = 4,
  FC_ERR_DEGENERATE = 5,
  FC_ERR_INTERNAL = 6
} fc_status;

typedef enum {
  FC_PHASE_GAPPED_BELOW = 0,
  FC_PHASE_GAPPED_ABOVE = 1,
  FC_PHASE_CRITICAL = 2,
  FC_PHASE_MULTIPLE_ROOT = 3,
  FC_PHASE_BOUNDARY = 4
} fc_phase;

typedef struct {
  double re;
  double im;
} fc_complex;

typedef struct fc_model fc_model;
typedef struct fc_analysis fc_analysis;

FC_API const char* fc_version(void);
FC_API const char* fc_last_error(void);
FC_API const char* fc_status_name(fc_status status);
FC_API const char* fc_phase_name(fc_phase phase);

/* special functions */
FC_API fc_status fc_zeta(double nu, double* out);
FC_API fc_status fc_polylog_circle(double nu, double p, fc_complex* out);
FC_API fc_status fc_digamma(fc_complex z, fc_complex* out);
FC_API fc_status fc_log_barnes_pair(fc_complex beta, fc_complex* out);
FC_API fc_status fc_entropy_kernel(double alpha, double x, double* out);

/* models; the handle owns its dispersion profile */
FC_API fc_status fc_model_haldane_shastry(fc_model** out);
FC_API fc_status fc_model_finite_range(const double* coefficients, size_t n, fc_model** out);
FC_API fc_status fc_model_power_law(double exponent, double amplitude, fc_model** out);
FC_API fc_status fc_model_rational_cubic(double J, fc_model** out);
/* h(j) = strength(j, user); tail(n, user) must bound Sum_{j>n} |h(j)|. */
FC_API fc_status fc_model_custom(double (*strength)(long, void*), double (*tail)(long, void*), void* user,
                                 fc_model** out);
FC_API void fc_model_free(fc_model* model);
FC_API const char* fc_model_family(const fc_model* model);
FC_API fc_status fc_mode_energy(const fc_model* model, long N, long l, double* out);
FC_API fc_status fc_dispersion(const fc_model* model, double p, double* out);
FC_API fc_status fc_dispersion_derivative(const fc_model* model, double p, int order, double* out);

typedef struct {
  int monotonic;
  size_t n_critical;
  double e_min;
  double e_max;
} fc_monotonicity_info;
/* Writes up to `capacity` interior critical points into `critical` (may be NULL). */
FC_API fc_status fc_monotonicity(const fc_model* model, int grid, fc_monotonicity_info* out, double* critical,
                                 size_t capacity);

/* Fermi points and phase */
typedef struct {
  double momentum;
  int multiplicity;
  double velocity;
  double scale;
  int curvature_sign;
} fc_fermi_point;

typedef struct {
  double mu;
  fc_phase phase;
  int central_charge;
  size_t n_roots;
  size_t n_sea;
  int sea_contains_origin;
  double sea_measure;
  double e_min;
  double e_max;
} fc_analysis_info;

FC_API fc_status fc_analysis_create(const fc_model* model, double mu, fc_analysis** out);
FC_API void fc_analysis_free(fc_analysis* analysis);
FC_API fc_status fc_analysis_get_info(const fc_analysis* analysis, fc_analysis_info* out);
FC_API fc_status fc_analysis_root(const fc_analysis* analysis, size_t i, fc_fermi_point* out);
FC_API fc_status fc_analysis_sea(const fc_analysis* analysis, size_t i, double* lo, double* hi);

typedef struct {
  double T;
  double f;
  double f0;
  double excess;
  double abs_error;
} fc_thermal;
FC_API fc_status fc_free_energy(const fc_analysis* analysis, double T, fc_thermal* out);

typedef struct {
  double exponent;
  double coefficient;
  double predicted_exponent;
  double predicted_coefficient; /* NaN when no prediction applies */
  double residual;
} fc_scaling_fit;
FC_API fc_status fc_low_temperature_fit(const fc_model* model, double mu, const double* temperatures, size_t n,
                                        fc_scaling_fit* out);

/* correlation matrices; arrays have length L */
FC_API fc_status fc_correlation_row(const fc_analysis* analysis, long L, double* row);
FC_API fc_status fc_correlation_row_finite(const fc_model* model, double mu, long L, long N, double* row);
FC_API fc_status fc_eigenvalues_symmetric(const double* row, long L, double* eigenvalues);
FC_API fc_status fc_log_det_char(const double* eigenvalues, long L, fc_complex lambda, fc_complex* out);

/* entropies; alpha may be INFINITY */
FC_API fc_status fc_renyi_exact(const double* eigenvalues, long L, double alpha, double* out);
FC_API fc_status fc_f_factor(const double* roots, size_t n, double* out);
FC_API fc_status fc_i1(double alpha, double* out);
FC_API fc_status fc_i1_quadrature(double alpha, double* out);
FC_API fc_status fc_c_tilde(double alpha, double* out);
FC_API fc_status fc_c_tilde_oracle(double alpha, double* out);

typedef struct {
  double alpha;
  long L;
  double s_exact;
  double s_asymptotic;
  double c_alpha;
  double c_tilde;
  double f_factor;
  double r_L;
} fc_entropy_report;
/* One report per block length. With with_asymptotic = 0 only s_exact is set
   and the analysis may be in any phase. threads = 0 uses all cores. */
FC_API fc_status fc_entropy_sweep(const fc_analysis* analysis, const long* L, size_t n, double alpha,
                                  int with_asymptotic, unsigned threads, fc_entropy_report* out);

/* Fisher-Hartwig */
typedef struct {
  fc_complex lambda;
  fc_complex beta;
  fc_complex b;
  double P;
} fc_fh_symbol;
FC_API fc_status fc_symbol_params(const double* roots, size_t n, fc_complex lambda, fc_fh_symbol* out);
FC_API fc_status fc_log_dl_asymptotic(const double* roots, size_t n, fc_complex lambda, long L, fc_complex* out);

typedef struct {
  long L;
  fc_complex exact;
  fc_complex asymptotic;
  double deviation;
} fc_fh_row;
FC_API fc_status fc_fh_deviation(const fc_analysis* analysis, fc_complex lambda, const long* L, size_t n,
                                 unsigned threads, fc_fh_row* out);

#ifdef __cplusplus
}
#endif

#endif

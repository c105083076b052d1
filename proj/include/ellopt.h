/* ellopt: solvers and benchmark harness for tracking-type elliptic optimal
 * control problems with L2 regularization on the unit square/cube.
 *
 * C interface of the shared library. All functions return an ellopt_status;
 * results come back through out-parameters or opaque handles. On failure a
 * human-readable message is available from ellopt_last_error() (thread-local,
 * valid until the next failing call on the same thread).
 */
#ifndef ELLOPT_H
#define ELLOPT_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ellopt_status {
  ELLOPT_OK = 0,
  ELLOPT_ERR_INVALID_ARG = 1, /* bad config value, range, or name */
  ELLOPT_ERR_SOLVER = 2,      /* iteration failed to converge or broke down */
  ELLOPT_ERR_IO = 3,          /* file could not be read or written */
  ELLOPT_ERR_INTERNAL = 4     /* anything else */
} ellopt_status;

/* Mirrors the study configuration. Initialize with ellopt_config_init, which
 * sets the reference setup: dim=3, levels 1..5, target 1, mg-minres,
 * rho = h^4, rtol 1e-11, quadrature order 4, lumped diagonal, single thread. */
typedef struct ellopt_config {
  int dim;            /* 2 or 3 */
  int level_min;      /* >= 1 */
  int level_max;      /* >= level_min */
  int target;         /* 1..4 */
  const char* solver; /* "mg-minres" | "diag-minres" | "bp-pcg" | "inex-sc-pcg" */
  double rho_exponent;
  double rtol;
  int quad_order;           /* 1, 2, or 4 */
  const char* diag_variant; /* "diag" | "lump" | "area" */
  int max_iterations;       /* 0 = automatic cap */
  uint64_t seed;            /* random-vector experiments */
  int threads;              /* spmv workers; 1 = serial */
} ellopt_config;

void ellopt_config_init(ellopt_config* cfg);

/* One row of a convergence study. eoc is meaningful only if has_eoc != 0. */
typedef struct ellopt_level_row {
  int level;
  double h;
  double rho;
  int n_dofs;
  double l2_error;
  double eoc;
  int has_eoc;
  int iterations;
  int converged;
  double initial_prec_residual;
  double final_prec_residual;
  double time_seconds;
} ellopt_level_row;

typedef struct ellopt_study ellopt_study; /* opaque */

/* Runs the convergence study described by cfg. A level whose solver did not
 * converge is flagged in its row; the study still completes and ELLOPT_OK is
 * returned. The handle must be released with ellopt_study_destroy. */
ellopt_status ellopt_run_study(const ellopt_config* cfg, ellopt_study** out);

int ellopt_study_row_count(const ellopt_study* study);
ellopt_status ellopt_study_row(const ellopt_study* study, int index, ellopt_level_row* out);

/* Serializes the study; format is "csv", "json", or "md". The returned string
 * is owned by the caller and released with ellopt_free. */
ellopt_status ellopt_study_format(const ellopt_study* study, const char* format, char** out);

void ellopt_study_destroy(ellopt_study* study);
void ellopt_free(char* ptr);

/* Solves once per rho value at the fixed level with the multigrid MINRES
 * approach and reports (rho, error) pairs plus the fitted log-log slope over
 * the regularization-dominated points. errors_out must hold n_rho doubles.
 * slope_out, points_in_fit_out, baseline_error_out may be NULL. */
ellopt_status ellopt_rho_sweep(const ellopt_config* cfg, int level, const double* rho_values,
                               int n_rho, double* errors_out, double* slope_out,
                               int* points_in_fit_out, double* baseline_error_out);

typedef struct ellopt_spectral_result {
  int level;
  double lambda_max_MinvK;
  double lambda_max_MinvK_times_h2;
  double rayleigh_S_over_M_min;
  double rayleigh_S_over_M_max;
  double rayleigh_A_over_M_min;
  double rayleigh_A_over_M_max;
} ellopt_spectral_result;

/* Power-iteration estimate of lambda_max(M^-1 K) and Rayleigh-quotient
 * extremes of the Schur complement and of A = M + sqrt(rho) K against M over
 * n_samples seeded random vectors. Levels above 4 are rejected (cost). */
ellopt_status ellopt_spectral(const ellopt_config* cfg, int level, int n_samples,
                              ellopt_spectral_result* out);

/* Writes the stiffness and mass matrices (Matrix Market, symmetric) and the
 * load vector for one level of the configured problem. */
ellopt_status ellopt_export_matrices(const ellopt_config* cfg, int level, const char* k_path,
                                     const char* m_path, const char* f_path);

const char* ellopt_last_error(void);
const char* ellopt_version(void);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* ELLOPT_H */

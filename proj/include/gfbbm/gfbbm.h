/* C interface to the gfBBM solver suite.
 *
 * All objects are opaque handles created/destroyed through this API; every
 * fallible call returns a gfbbm_status and writes results through out
 * parameters. gfbbm_last_error() returns a thread-local detail message for
 * the most recent failure on the calling thread.
 */
#ifndef GFBBM_H
#define GFBBM_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct gfbbm_grid gfbbm_grid;
typedef struct gfbbm_profile gfbbm_profile;
typedef struct gfbbm_solve_result gfbbm_solve_result;
typedef struct gfbbm_evolution gfbbm_evolution;

typedef enum gfbbm_status {
  GFBBM_OK = 0,
  GFBBM_ERR_INVALID_ARGUMENT = 1,
  GFBBM_ERR_INADMISSIBLE = 2,
  GFBBM_ERR_DIVERGENCE = 3,
  GFBBM_ERR_DEGENERATE = 4,
  GFBBM_ERR_SYMMETRY = 5,
  GFBBM_ERR_IO = 6,
  GFBBM_ERR_INTERNAL = 7
} gfbbm_status;

typedef struct gfbbm_params {
  double alpha; /* fractional order, in (0, 2) */
  int p;        /* nonlinearity exponent, >= 1 */
  double c;     /* wave speed */
} gfbbm_params;

typedef enum gfbbm_admissibility_tag {
  GFBBM_ADMISSIBLE_OK = 0,
  GFBBM_NONEXIST_CASE_I = 1,
  GFBBM_NONEXIST_CASE_II = 2,
  GFBBM_NONEXIST_CASE_III = 3,
  GFBBM_NO_POSITIVE_WAVE = 4,
  GFBBM_SUPERCRITICAL_P = 5,
  GFBBM_HAMILTONIAN_ILL_DEFINED = 6
} gfbbm_admissibility_tag;

typedef struct gfbbm_solver_config {
  double tol_increment;
  double tol_residual;
  double tol_factor;
  int64_t max_iterations;
  double nu;              /* <= 0 selects the default (p+1)/p */
  int allow_inadmissible; /* nonzero forces a run with rejected parameters */
} gfbbm_solver_config;

typedef enum gfbbm_solve_status {
  GFBBM_SOLVE_CONVERGED = 0,
  GFBBM_SOLVE_ITERATION_LIMIT = 1,
  GFBBM_SOLVE_DIVERGED = 2,
  GFBBM_SOLVE_DEGENERATE = 3
} gfbbm_solve_status;

const char* gfbbm_version(void);
const char* gfbbm_status_string(gfbbm_status status);
const char* gfbbm_admissibility_tag_string(gfbbm_admissibility_tag tag);
const char* gfbbm_last_error(void);

/* ---- grids and profiles ------------------------------------------------ */

gfbbm_status gfbbm_grid_create(int64_t n_points, double half_length, int dealias,
                               gfbbm_grid** out);
void gfbbm_grid_destroy(gfbbm_grid* grid);
int64_t gfbbm_grid_size(const gfbbm_grid* grid);
double gfbbm_grid_half_length(const gfbbm_grid* grid);
gfbbm_status gfbbm_grid_nodes(const gfbbm_grid* grid, double* out /* n_points */);

gfbbm_status gfbbm_profile_create(const gfbbm_grid* grid, const double* values,
                                  gfbbm_profile** out);
gfbbm_status gfbbm_profile_clone(const gfbbm_profile* profile, gfbbm_profile** out);
void gfbbm_profile_destroy(gfbbm_profile* profile);
int64_t gfbbm_profile_size(const gfbbm_profile* profile);
gfbbm_status gfbbm_profile_values(const gfbbm_profile* profile, double* out);
/* max_j |u_j| */
double gfbbm_profile_sup_norm(const gfbbm_profile* profile);
/* value at the first node (domain-truncation diagnostic) */
double gfbbm_profile_boundary_value(const gfbbm_profile* profile);

/* ---- theory ------------------------------------------------------------ */

gfbbm_status gfbbm_validate_params(const gfbbm_params* params,
                                   gfbbm_admissibility_tag* tag, int* admissible);
gfbbm_status gfbbm_critical_exponent(double alpha, double* p_max);
gfbbm_status gfbbm_exact_soliton_eval(double c, double t, const double* x, int64_t n,
                                      double* out);
gfbbm_status gfbbm_pohozaev_defect(const gfbbm_profile* q, const gfbbm_params* params,
                                   double* defect);
gfbbm_status gfbbm_energy_identity_defect(const gfbbm_profile* q,
                                          const gfbbm_params* params, double* defect);

/* ---- model diagnostics -------------------------------------------------- */

gfbbm_status gfbbm_conserved_quantities(const gfbbm_profile* u, const gfbbm_params* params,
                                        double* i0, double* i1, double* hamiltonian);
/* sup-norm of the traveling-wave residual S(Q) */
gfbbm_status gfbbm_residual_sup(const gfbbm_profile* q, const gfbbm_params* params,
                                double* res);

/* ---- Petviashvili solver ------------------------------------------------ */

void gfbbm_solver_config_defaults(gfbbm_solver_config* config);
gfbbm_status gfbbm_default_seed(const gfbbm_grid* grid, const gfbbm_params* params,
                                gfbbm_profile** out);
gfbbm_status gfbbm_solve(const gfbbm_profile* initial, const gfbbm_params* params,
                         const gfbbm_solver_config* config, gfbbm_solve_result** out);
void gfbbm_solve_result_destroy(gfbbm_solve_result* result);
gfbbm_solve_status gfbbm_solve_result_status(const gfbbm_solve_result* result);
int gfbbm_solve_result_converged(const gfbbm_solve_result* result);
int64_t gfbbm_solve_result_iterations(const gfbbm_solve_result* result);
gfbbm_status gfbbm_solve_result_profile(const gfbbm_solve_result* result,
                                        gfbbm_profile** out);
int64_t gfbbm_solve_result_history_size(const gfbbm_solve_result* result);
/* parallel arrays of length history_size; any pointer may be NULL to skip */
gfbbm_status gfbbm_solve_result_history(const gfbbm_solve_result* result, double* error,
                                        double* factor_error, double* res);

/* ---- time evolution ------------------------------------------------------ */

gfbbm_status gfbbm_evolve(const gfbbm_profile* initial, const gfbbm_params* params,
                          double t_final, int64_t n_steps, const double* output_times,
                          int64_t n_output, int64_t drift_stride, gfbbm_evolution** out);
void gfbbm_evolution_destroy(gfbbm_evolution* evolution);
int gfbbm_evolution_completed(const gfbbm_evolution* evolution);
int64_t gfbbm_evolution_steps_completed(const gfbbm_evolution* evolution);
int64_t gfbbm_evolution_snapshot_count(const gfbbm_evolution* evolution);
gfbbm_status gfbbm_evolution_snapshot_time(const gfbbm_evolution* evolution, int64_t i,
                                           double* t);
gfbbm_status gfbbm_evolution_snapshot(const gfbbm_evolution* evolution, int64_t i,
                                      gfbbm_profile** out);
int64_t gfbbm_evolution_drift_size(const gfbbm_evolution* evolution);
/* parallel arrays of length drift_size; any pointer may be NULL to skip */
gfbbm_status gfbbm_evolution_drift(const gfbbm_evolution* evolution, double* t,
                                   double* di0, double* di1);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* GFBBM_H */

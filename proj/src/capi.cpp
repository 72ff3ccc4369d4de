#include "gfbbm/gfbbm.h"

#include <cstring>
#include <string>
#include <vector>

#include "gfbbm/errors.hpp"
#include "gfbbm/evolution.hpp"
#include "gfbbm/model.hpp"
#include "gfbbm/petviashvili.hpp"
#include "gfbbm/spectral.hpp"
#include "gfbbm/theory.hpp"

struct gfbbm_grid {
  gfbbm::GridPtr g;
};
struct gfbbm_profile {
  gfbbm::WaveProfile p;
};
struct gfbbm_solve_result {
  gfbbm::petviashvili::SolverResult r;
};
struct gfbbm_evolution {
  gfbbm::evolution::EvolutionTrace t;
};

namespace {

thread_local std::string g_last_error;

gfbbm_status map_code(gfbbm::ErrorCode code) {
  using gfbbm::ErrorCode;
  switch (code) {
    case ErrorCode::invalid_argument: return GFBBM_ERR_INVALID_ARGUMENT;
    case ErrorCode::inadmissible_params: return GFBBM_ERR_INADMISSIBLE;
    case ErrorCode::divergence: return GFBBM_ERR_DIVERGENCE;
    case ErrorCode::degenerate_denominator: return GFBBM_ERR_DEGENERATE;
    case ErrorCode::symmetry_violation: return GFBBM_ERR_SYMMETRY;
    case ErrorCode::io_error: return GFBBM_ERR_IO;
  }
  return GFBBM_ERR_INTERNAL;
}

template <class F>
gfbbm_status wrap(F&& f) noexcept {
  try {
    f();
    return GFBBM_OK;
  } catch (const gfbbm::Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return GFBBM_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return GFBBM_ERR_INTERNAL;
  }
}

gfbbm_status require(bool ok, const char* msg) noexcept {
  if (ok) return GFBBM_OK;
  g_last_error = msg;
  return GFBBM_ERR_INVALID_ARGUMENT;
}

gfbbm::ModelParams to_params(const gfbbm_params& p) {
  return {p.alpha, p.p, p.c};
}

gfbbm_admissibility_tag to_c_tag(gfbbm::theory::AdmissibilityTag tag) {
  using gfbbm::theory::AdmissibilityTag;
  switch (tag) {
    case AdmissibilityTag::ok: return GFBBM_ADMISSIBLE_OK;
    case AdmissibilityTag::nonexist_case_i: return GFBBM_NONEXIST_CASE_I;
    case AdmissibilityTag::nonexist_case_ii: return GFBBM_NONEXIST_CASE_II;
    case AdmissibilityTag::nonexist_case_iii: return GFBBM_NONEXIST_CASE_III;
    case AdmissibilityTag::no_positive_wave: return GFBBM_NO_POSITIVE_WAVE;
    case AdmissibilityTag::supercritical_p: return GFBBM_SUPERCRITICAL_P;
    case AdmissibilityTag::hamiltonian_ill_defined: return GFBBM_HAMILTONIAN_ILL_DEFINED;
  }
  return GFBBM_ADMISSIBLE_OK;
}

}  // namespace

extern "C" {

const char* gfbbm_version(void) { return "1.0.0"; }

const char* gfbbm_status_string(gfbbm_status status) {
  switch (status) {
    case GFBBM_OK: return "ok";
    case GFBBM_ERR_INVALID_ARGUMENT: return "invalid argument";
    case GFBBM_ERR_INADMISSIBLE: return "inadmissible parameters";
    case GFBBM_ERR_DIVERGENCE: return "numerical divergence";
    case GFBBM_ERR_DEGENERATE: return "degenerate denominator";
    case GFBBM_ERR_SYMMETRY: return "conjugate-symmetry violation";
    case GFBBM_ERR_IO: return "i/o error";
    case GFBBM_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* gfbbm_admissibility_tag_string(gfbbm_admissibility_tag tag) {
  switch (tag) {
    case GFBBM_ADMISSIBLE_OK: return "OK";
    case GFBBM_NONEXIST_CASE_I: return "NONEXIST_CASE_I";
    case GFBBM_NONEXIST_CASE_II: return "NONEXIST_CASE_II";
    case GFBBM_NONEXIST_CASE_III: return "NONEXIST_CASE_III";
    case GFBBM_NO_POSITIVE_WAVE: return "NO_POSITIVE_WAVE";
    case GFBBM_SUPERCRITICAL_P: return "SUPERCRITICAL_P";
    case GFBBM_HAMILTONIAN_ILL_DEFINED: return "HAMILTONIAN_ILL_DEFINED";
  }
  return "UNKNOWN";
}

const char* gfbbm_last_error(void) { return g_last_error.c_str(); }

gfbbm_status gfbbm_grid_create(int64_t n_points, double half_length, int dealias,
                               gfbbm_grid** out) {
  if (auto s = require(out != nullptr, "out must not be null")) return s;
  return wrap([&] {
    if (n_points < 0) gfbbm::fail(gfbbm::ErrorCode::invalid_argument, "n_points < 0");
    *out = new gfbbm_grid{gfbbm::make_grid(static_cast<std::size_t>(n_points),
                                           half_length, dealias != 0)};
  });
}

void gfbbm_grid_destroy(gfbbm_grid* grid) { delete grid; }

int64_t gfbbm_grid_size(const gfbbm_grid* grid) {
  return grid ? static_cast<int64_t>(grid->g->size()) : 0;
}

double gfbbm_grid_half_length(const gfbbm_grid* grid) {
  return grid ? grid->g->half_length() : 0.0;
}

gfbbm_status gfbbm_grid_nodes(const gfbbm_grid* grid, double* out) {
  if (auto s = require(grid && out, "grid and out must not be null")) return s;
  const auto xs = grid->g->nodes();
  std::memcpy(out, xs.data(), xs.size() * sizeof(double));
  return GFBBM_OK;
}

gfbbm_status gfbbm_profile_create(const gfbbm_grid* grid, const double* values,
                                  gfbbm_profile** out) {
  if (auto s = require(grid && values && out, "grid, values, out must not be null")) return s;
  return wrap([&] {
    std::vector<double> v(values, values + grid->g->size());
    *out = new gfbbm_profile{gfbbm::WaveProfile(grid->g, std::move(v))};
  });
}

gfbbm_status gfbbm_profile_clone(const gfbbm_profile* profile, gfbbm_profile** out) {
  if (auto s = require(profile && out, "profile and out must not be null")) return s;
  return wrap([&] { *out = new gfbbm_profile{profile->p}; });
}

void gfbbm_profile_destroy(gfbbm_profile* profile) { delete profile; }

int64_t gfbbm_profile_size(const gfbbm_profile* profile) {
  return profile ? static_cast<int64_t>(profile->p.size()) : 0;
}

gfbbm_status gfbbm_profile_values(const gfbbm_profile* profile, double* out) {
  if (auto s = require(profile && out, "profile and out must not be null")) return s;
  const auto v = profile->p.values();
  std::memcpy(out, v.data(), v.size() * sizeof(double));
  return GFBBM_OK;
}

double gfbbm_profile_sup_norm(const gfbbm_profile* profile) {
  return profile ? gfbbm::sup_norm(profile->p) : 0.0;
}

double gfbbm_profile_boundary_value(const gfbbm_profile* profile) {
  return profile ? profile->p.values().front() : 0.0;
}

gfbbm_status gfbbm_validate_params(const gfbbm_params* params, gfbbm_admissibility_tag* tag,
                                   int* admissible) {
  if (auto s = require(params != nullptr, "params must not be null")) return s;
  return wrap([&] {
    const auto report = gfbbm::theory::validate_params(to_params(*params));
    if (tag) *tag = to_c_tag(report.tag());
    if (admissible) *admissible = report.admissible ? 1 : 0;
  });
}

gfbbm_status gfbbm_critical_exponent(double alpha, double* p_max) {
  if (auto s = require(p_max != nullptr, "p_max must not be null")) return s;
  return wrap([&] { *p_max = gfbbm::theory::critical_exponent(alpha); });
}

gfbbm_status gfbbm_exact_soliton_eval(double c, double t, const double* x, int64_t n,
                                      double* out) {
  if (auto s = require(x && out && n >= 0, "bad buffer arguments")) return s;
  return wrap([&] {
    for (int64_t i = 0; i < n; ++i) out[i] = gfbbm::theory::exact_soliton(x[i], t, c);
  });
}

gfbbm_status gfbbm_pohozaev_defect(const gfbbm_profile* q, const gfbbm_params* params,
                                   double* defect) {
  if (auto s = require(q && params && defect, "null argument")) return s;
  return wrap([&] { *defect = gfbbm::theory::pohozaev_check(q->p, to_params(*params)); });
}

gfbbm_status gfbbm_energy_identity_defect(const gfbbm_profile* q, const gfbbm_params* params,
                                          double* defect) {
  if (auto s = require(q && params && defect, "null argument")) return s;
  return wrap(
      [&] { *defect = gfbbm::theory::energy_identity_check(q->p, to_params(*params)); });
}

gfbbm_status gfbbm_conserved_quantities(const gfbbm_profile* u, const gfbbm_params* params,
                                        double* i0, double* i1, double* hamiltonian) {
  if (auto s = require(u && params, "null argument")) return s;
  return wrap([&] {
    const auto snap = gfbbm::conserved_quantities(u->p, to_params(*params));
    if (i0) *i0 = snap.i0;
    if (i1) *i1 = snap.i1;
    if (hamiltonian) *hamiltonian = snap.hamiltonian;
  });
}

gfbbm_status gfbbm_residual_sup(const gfbbm_profile* q, const gfbbm_params* params,
                                double* res) {
  if (auto s = require(q && params && res, "null argument")) return s;
  return wrap([&] {
    *res = gfbbm::sup_norm(gfbbm::residual_operator(q->p, to_params(*params)));
  });
}

void gfbbm_solver_config_defaults(gfbbm_solver_config* config) {
  if (!config) return;
  config->tol_increment = 1e-12;
  config->tol_residual = 1e-6;
  config->tol_factor = 1e-10;
  config->max_iterations = 500;
  config->nu = 0.0;
  config->allow_inadmissible = 0;
}

gfbbm_status gfbbm_default_seed(const gfbbm_grid* grid, const gfbbm_params* params,
                                gfbbm_profile** out) {
  if (auto s = require(grid && params && out, "null argument")) return s;
  return wrap([&] {
    *out = new gfbbm_profile{gfbbm::petviashvili::default_seed(grid->g, to_params(*params))};
  });
}

gfbbm_status gfbbm_solve(const gfbbm_profile* initial, const gfbbm_params* params,
                         const gfbbm_solver_config* config, gfbbm_solve_result** out) {
  if (auto s = require(initial && params && out, "null argument")) return s;
  return wrap([&] {
    gfbbm::petviashvili::SolverConfig cfg;
    if (config) {
      cfg.tol_increment = config->tol_increment;
      cfg.tol_residual = config->tol_residual;
      cfg.tol_factor = config->tol_factor;
      if (config->max_iterations < 1)
        gfbbm::fail(gfbbm::ErrorCode::invalid_argument, "max_iterations must be >= 1");
      cfg.max_iterations = static_cast<std::size_t>(config->max_iterations);
      if (config->nu > 0.0) cfg.nu = config->nu;
      cfg.allow_inadmissible = config->allow_inadmissible != 0;
    }
    *out = new gfbbm_solve_result{
        gfbbm::petviashvili::solve(initial->p, to_params(*params), cfg)};
  });
}

void gfbbm_solve_result_destroy(gfbbm_solve_result* result) { delete result; }

gfbbm_solve_status gfbbm_solve_result_status(const gfbbm_solve_result* result) {
  using gfbbm::petviashvili::SolveStatus;
  if (!result) return GFBBM_SOLVE_DIVERGED;
  switch (result->r.status) {
    case SolveStatus::converged: return GFBBM_SOLVE_CONVERGED;
    case SolveStatus::iteration_limit: return GFBBM_SOLVE_ITERATION_LIMIT;
    case SolveStatus::diverged: return GFBBM_SOLVE_DIVERGED;
    case SolveStatus::degenerate: return GFBBM_SOLVE_DEGENERATE;
  }
  return GFBBM_SOLVE_DIVERGED;
}

int gfbbm_solve_result_converged(const gfbbm_solve_result* result) {
  return result && result->r.converged ? 1 : 0;
}

int64_t gfbbm_solve_result_iterations(const gfbbm_solve_result* result) {
  return result ? static_cast<int64_t>(result->r.iterations_used) : 0;
}

gfbbm_status gfbbm_solve_result_profile(const gfbbm_solve_result* result,
                                        gfbbm_profile** out) {
  if (auto s = require(result && out, "null argument")) return s;
  return wrap([&] { *out = new gfbbm_profile{result->r.profile}; });
}

int64_t gfbbm_solve_result_history_size(const gfbbm_solve_result* result) {
  return result ? static_cast<int64_t>(result->r.history.size()) : 0;
}

gfbbm_status gfbbm_solve_result_history(const gfbbm_solve_result* result, double* error,
                                        double* factor_error, double* res) {
  if (auto s = require(result != nullptr, "result must not be null")) return s;
  const auto& h = result->r.history;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (error) error[i] = h[i].increment_error;
    if (factor_error) factor_error[i] = h[i].factor_error;
    if (res) res[i] = h[i].residual_error;
  }
  return GFBBM_OK;
}

gfbbm_status gfbbm_evolve(const gfbbm_profile* initial, const gfbbm_params* params,
                          double t_final, int64_t n_steps, const double* output_times,
                          int64_t n_output, int64_t drift_stride, gfbbm_evolution** out) {
  if (auto s = require(initial && params && out, "null argument")) return s;
  if (auto s = require(n_output == 0 || output_times != nullptr,
                       "output_times must not be null")) return s;
  return wrap([&] {
    if (n_steps < 1) gfbbm::fail(gfbbm::ErrorCode::invalid_argument, "n_steps must be >= 1");
    if (drift_stride < 1)
      gfbbm::fail(gfbbm::ErrorCode::invalid_argument, "drift_stride must be >= 1");
    const gfbbm::evolution::TimeGrid time(t_final, static_cast<std::size_t>(n_steps));
    std::span<const double> times(output_times, static_cast<std::size_t>(n_output));
    *out = new gfbbm_evolution{gfbbm::evolution::evolve(
        initial->p, to_params(*params), time, times, static_cast<std::size_t>(drift_stride))};
  });
}

void gfbbm_evolution_destroy(gfbbm_evolution* evolution) { delete evolution; }

int gfbbm_evolution_completed(const gfbbm_evolution* evolution) {
  return evolution && evolution->t.status == gfbbm::evolution::EvolveStatus::completed ? 1 : 0;
}

int64_t gfbbm_evolution_steps_completed(const gfbbm_evolution* evolution) {
  return evolution ? static_cast<int64_t>(evolution->t.steps_completed) : 0;
}

int64_t gfbbm_evolution_snapshot_count(const gfbbm_evolution* evolution) {
  return evolution ? static_cast<int64_t>(evolution->t.snapshots.size()) : 0;
}

gfbbm_status gfbbm_evolution_snapshot_time(const gfbbm_evolution* evolution, int64_t i,
                                           double* t) {
  if (auto s = require(evolution && t, "null argument")) return s;
  if (auto s = require(i >= 0 && i < gfbbm_evolution_snapshot_count(evolution),
                       "snapshot index out of range")) return s;
  *t = evolution->t.times[static_cast<std::size_t>(i)];
  return GFBBM_OK;
}

gfbbm_status gfbbm_evolution_snapshot(const gfbbm_evolution* evolution, int64_t i,
                                      gfbbm_profile** out) {
  if (auto s = require(evolution && out, "null argument")) return s;
  if (auto s = require(i >= 0 && i < gfbbm_evolution_snapshot_count(evolution),
                       "snapshot index out of range")) return s;
  return wrap([&] {
    *out = new gfbbm_profile{evolution->t.snapshots[static_cast<std::size_t>(i)]};
  });
}

int64_t gfbbm_evolution_drift_size(const gfbbm_evolution* evolution) {
  return evolution ? static_cast<int64_t>(evolution->t.drift_times.size()) : 0;
}

gfbbm_status gfbbm_evolution_drift(const gfbbm_evolution* evolution, double* t, double* di0,
                                   double* di1) {
  if (auto s = require(evolution != nullptr, "evolution must not be null")) return s;
  const auto& tr = evolution->t;
  for (std::size_t i = 0; i < tr.drift_times.size(); ++i) {
    if (t) t[i] = tr.drift_times[i];
    if (di0) di0[i] = tr.i0_drift[i];
    if (di1) di1[i] = tr.i1_drift[i];
  }
  return GFBBM_OK;
}

}  // extern "C"

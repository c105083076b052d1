// C surface of the shared library: translates between the C structs/handles
// declared in ellopt.h and the C++ core, and converts exceptions into status
// codes with a thread-local message.
#include "ellopt.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <stdexcept>
#include <string>

#include "core/study.hpp"

struct ellopt_study {
  ellopt::EocTable table;
  ellopt::RunConfig config;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

ellopt_status fail(ellopt_status code, const std::string& msg) {
  set_error(msg);
  return code;
}

// Runs fn, mapping exceptions onto status codes. std::invalid_argument is the
// core's signal for bad configs; std::runtime_error covers solver and I/O
// failures, disambiguated by the caller where it matters.
template <typename Fn>
ellopt_status guarded(ellopt_status runtime_code, Fn&& fn) {
  try {
    fn();
    return ELLOPT_OK;
  } catch (const std::invalid_argument& e) {
    return fail(ELLOPT_ERR_INVALID_ARG, e.what());
  } catch (const std::bad_alloc&) {
    return fail(ELLOPT_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(runtime_code, e.what());
  } catch (...) {
    return fail(ELLOPT_ERR_INTERNAL, "unknown error");
  }
}

ellopt::RunConfig to_run_config(const ellopt_config& c) {
  ellopt::RunConfig cfg;
  cfg.dim = c.dim;
  cfg.level_min = c.level_min;
  cfg.level_max = c.level_max;
  cfg.target = ellopt::target_from_int(c.target);
  if (!c.solver) throw std::invalid_argument("config.solver is null");
  cfg.solver = ellopt::solver_from_string(c.solver);
  cfg.rho_exponent = c.rho_exponent;
  cfg.rtol = c.rtol;
  cfg.quad_order = c.quad_order;
  if (!c.diag_variant) throw std::invalid_argument("config.diag_variant is null");
  cfg.diag_variant = ellopt::diag_variant_from_string(c.diag_variant);
  cfg.max_iterations = c.max_iterations;
  cfg.seed = c.seed;
  cfg.threads = c.threads;
  return cfg;
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

void ellopt_config_init(ellopt_config* cfg) {
  if (!cfg) return;
  *cfg = ellopt_config{};
  cfg->dim = 3;
  cfg->level_min = 1;
  cfg->level_max = 5;
  cfg->target = 1;
  cfg->solver = "mg-minres";
  cfg->rho_exponent = 4.0;
  cfg->rtol = 1e-11;
  cfg->quad_order = 4;
  cfg->diag_variant = "lump";
  cfg->max_iterations = 0;
  cfg->seed = 0;
  cfg->threads = 1;
}

ellopt_status ellopt_run_study(const ellopt_config* cfg, ellopt_study** out) {
  if (!cfg || !out) return fail(ELLOPT_ERR_INVALID_ARG, "null argument");
  *out = nullptr;
  return guarded(ELLOPT_ERR_SOLVER, [&] {
    auto study = std::make_unique<ellopt_study>();
    study->config = to_run_config(*cfg);
    study->table = ellopt::run_study(study->config);
    *out = study.release();
  });
}

int ellopt_study_row_count(const ellopt_study* study) {
  return study ? static_cast<int>(study->table.size()) : 0;
}

ellopt_status ellopt_study_row(const ellopt_study* study, int index, ellopt_level_row* out) {
  if (!study || !out) return fail(ELLOPT_ERR_INVALID_ARG, "null argument");
  if (index < 0 || index >= static_cast<int>(study->table.size())) {
    return fail(ELLOPT_ERR_INVALID_ARG, "row index out of range");
  }
  const ellopt::LevelResult& r = study->table[index];
  *out = ellopt_level_row{};
  out->level = r.level;
  out->h = r.h;
  out->rho = r.rho;
  out->n_dofs = r.n_dofs;
  out->l2_error = r.l2_error;
  out->eoc = r.eoc.value_or(0.0);
  out->has_eoc = r.eoc.has_value() ? 1 : 0;
  out->iterations = r.stats.iterations;
  out->converged = r.stats.converged ? 1 : 0;
  out->initial_prec_residual = r.stats.initial_prec_residual;
  out->final_prec_residual = r.stats.final_prec_residual;
  out->time_seconds = r.stats.wall_seconds;
  return ELLOPT_OK;
}

ellopt_status ellopt_study_format(const ellopt_study* study, const char* format, char** out) {
  if (!study || !format || !out) return fail(ELLOPT_ERR_INVALID_ARG, "null argument");
  *out = nullptr;
  return guarded(ELLOPT_ERR_INTERNAL, [&] {
    const auto fmt = ellopt::format_from_string(format);
    *out = copy_string(ellopt::format_table(study->table, study->config, fmt));
  });
}

void ellopt_study_destroy(ellopt_study* study) { delete study; }

void ellopt_free(char* ptr) { std::free(ptr); }

ellopt_status ellopt_rho_sweep(const ellopt_config* cfg, int level, const double* rho_values,
                               int n_rho, double* errors_out, double* slope_out,
                               int* points_in_fit_out, double* baseline_error_out) {
  if (!cfg || !rho_values || !errors_out || n_rho <= 0) {
    return fail(ELLOPT_ERR_INVALID_ARG, "null argument or empty rho list");
  }
  return guarded(ELLOPT_ERR_SOLVER, [&] {
    const auto run_cfg = to_run_config(*cfg);
    const std::vector<double> rhos(rho_values, rho_values + n_rho);
    const auto result = ellopt::rho_sweep(run_cfg, level, rhos);
    for (int i = 0; i < n_rho; ++i) errors_out[i] = result.points[i].second;
    if (slope_out) *slope_out = result.fitted_slope;
    if (points_in_fit_out) *points_in_fit_out = result.points_in_fit;
    if (baseline_error_out) *baseline_error_out = result.baseline_error;
  });
}

ellopt_status ellopt_spectral(const ellopt_config* cfg, int level, int n_samples,
                              ellopt_spectral_result* out) {
  if (!cfg || !out) return fail(ELLOPT_ERR_INVALID_ARG, "null argument");
  if (level > 4) return fail(ELLOPT_ERR_INVALID_ARG, "spectral report limited to levels <= 4");
  if (n_samples <= 0) return fail(ELLOPT_ERR_INVALID_ARG, "n_samples must be positive");
  return guarded(ELLOPT_ERR_SOLVER, [&] {
    const auto run_cfg = to_run_config(*cfg);
    const auto rep = ellopt::spectral_report(run_cfg, level, n_samples);
    *out = ellopt_spectral_result{};
    out->level = rep.level;
    out->lambda_max_MinvK = rep.lambda_max_MinvK;
    out->lambda_max_MinvK_times_h2 = rep.lambda_max_MinvK_times_h2;
    out->rayleigh_S_over_M_min = rep.rayleigh_S_over_M_min;
    out->rayleigh_S_over_M_max = rep.rayleigh_S_over_M_max;
    out->rayleigh_A_over_M_min = rep.rayleigh_A_over_M_min;
    out->rayleigh_A_over_M_max = rep.rayleigh_A_over_M_max;
  });
}

ellopt_status ellopt_export_matrices(const ellopt_config* cfg, int level, const char* k_path,
                                     const char* m_path, const char* f_path) {
  if (!cfg || !k_path || !m_path || !f_path) return fail(ELLOPT_ERR_INVALID_ARG, "null argument");
  return guarded(ELLOPT_ERR_IO, [&] {
    ellopt::export_matrices(to_run_config(*cfg), level, k_path, m_path, f_path);
  });
}

const char* ellopt_last_error(void) { return g_last_error.c_str(); }

const char* ellopt_version(void) { return "1.0.0"; }

}  // extern "C"

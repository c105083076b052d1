#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>

#include "core/study.hpp"
#include "ellopt.h"

TEST_CASE("config initialization defaults") {
  ellopt_config cfg;
  ellopt_config_init(&cfg);
  CHECK(cfg.dim == 3);
  CHECK(cfg.level_min == 1);
  CHECK(cfg.level_max == 5);
  CHECK(cfg.target == 1);
  CHECK(std::strcmp(cfg.solver, "mg-minres") == 0);
  CHECK(cfg.rho_exponent == 4.0);
  CHECK(cfg.rtol == 1e-11);
  CHECK(cfg.quad_order == 4);
  CHECK(std::strcmp(cfg.diag_variant, "lump") == 0);
  CHECK(cfg.max_iterations == 0);
  CHECK(cfg.threads == 1);
  ellopt_config_init(nullptr);  // must be a harmless no-op
}

TEST_CASE("study round trip matches the C++ core") {
  ellopt_config cfg;
  ellopt_config_init(&cfg);
  cfg.level_max = 2;
  cfg.solver = "inex-sc-pcg";
  ellopt_study* study = nullptr;
  REQUIRE(ellopt_run_study(&cfg, &study) == ELLOPT_OK);
  REQUIRE(study != nullptr);
  REQUIRE(ellopt_study_row_count(study) == 2);

  ellopt::RunConfig core_cfg;
  core_cfg.level_max = 2;
  core_cfg.solver = ellopt::SolverKind::InexactSchurPcg;
  const auto core = ellopt::run_study(core_cfg);

  for (int i = 0; i < 2; ++i) {
    ellopt_level_row row;
    REQUIRE(ellopt_study_row(study, i, &row) == ELLOPT_OK);
    CHECK(row.level == core[i].level);
    CHECK(row.h == core[i].h);
    CHECK(row.rho == core[i].rho);
    CHECK(row.n_dofs == core[i].n_dofs);
    CHECK(row.l2_error == core[i].l2_error);  // deterministic: exact equality
    CHECK(row.iterations == core[i].stats.iterations);
    CHECK(row.converged == 1);
    CHECK(row.has_eoc == (i == 1 ? 1 : 0));
    if (row.has_eoc) CHECK(row.eoc == *core[i].eoc);
  }
  ellopt_level_row row;
  CHECK(ellopt_study_row(study, 2, &row) == ELLOPT_ERR_INVALID_ARG);
  CHECK(ellopt_study_row(study, -1, &row) == ELLOPT_ERR_INVALID_ARG);

  char* text = nullptr;
  REQUIRE(ellopt_study_format(study, "csv", &text) == ELLOPT_OK);
  REQUIRE(text != nullptr);
  CHECK(std::string(text).rfind("level,", 0) == 0);
  ellopt_free(text);
  CHECK(ellopt_study_format(study, "xml", &text) == ELLOPT_ERR_INVALID_ARG);
  ellopt_study_destroy(study);
  ellopt_study_destroy(nullptr);  // harmless
}

TEST_CASE("invalid configurations are rejected with messages") {
  ellopt_config cfg;
  ellopt_config_init(&cfg);
  cfg.solver = "newton";
  ellopt_study* study = nullptr;
  CHECK(ellopt_run_study(&cfg, &study) == ELLOPT_ERR_INVALID_ARG);
  CHECK(study == nullptr);
  CHECK(std::strlen(ellopt_last_error()) > 0);

  ellopt_config_init(&cfg);
  cfg.dim = 4;
  cfg.level_max = 1;
  CHECK(ellopt_run_study(&cfg, &study) == ELLOPT_ERR_INVALID_ARG);

  ellopt_config_init(&cfg);
  cfg.solver = nullptr;
  CHECK(ellopt_run_study(&cfg, &study) == ELLOPT_ERR_INVALID_ARG);

  CHECK(ellopt_run_study(nullptr, &study) == ELLOPT_ERR_INVALID_ARG);
  ellopt_config_init(&cfg);
  CHECK(ellopt_run_study(&cfg, nullptr) == ELLOPT_ERR_INVALID_ARG);
}

TEST_CASE("rho sweep through the C API") {
  ellopt_config cfg;
  ellopt_config_init(&cfg);
  const double rhos[3] = {1e-4, 1e-3, 1e-2};
  double errors[3] = {0, 0, 0};
  double slope = 0.0, baseline = 0.0;
  int in_fit = 0;
  REQUIRE(ellopt_rho_sweep(&cfg, 3, rhos, 3, errors, &slope, &in_fit, &baseline) == ELLOPT_OK);
  CHECK(errors[0] > 0.0);
  CHECK(errors[1] > errors[0]);
  CHECK(errors[2] > errors[1]);
  CHECK(baseline > 0.0);
  CHECK(in_fit >= 2);
  CHECK(slope > 0.0);
  CHECK(ellopt_rho_sweep(&cfg, 2, nullptr, 3, errors, nullptr, nullptr, nullptr) ==
        ELLOPT_ERR_INVALID_ARG);
  CHECK(ellopt_rho_sweep(&cfg, 2, rhos, 0, errors, nullptr, nullptr, nullptr) ==
        ELLOPT_ERR_INVALID_ARG);
}

TEST_CASE("spectral report through the C API") {
  ellopt_config cfg;
  ellopt_config_init(&cfg);
  ellopt_spectral_result rep;
  REQUIRE(ellopt_spectral(&cfg, 1, 50, &rep) == ELLOPT_OK);
  CHECK(rep.level == 1);
  CHECK(rep.lambda_max_MinvK > 0.0);
  CHECK(rep.lambda_max_MinvK_times_h2 ==
        doctest::Approx(rep.lambda_max_MinvK / 16.0).epsilon(1e-12));
  CHECK(rep.rayleigh_S_over_M_min >= 1.0);
  CHECK(rep.rayleigh_S_over_M_max >= rep.rayleigh_S_over_M_min);
  CHECK(rep.rayleigh_A_over_M_min >= 1.0);
  CHECK(ellopt_spectral(&cfg, 5, 50, &rep) == ELLOPT_ERR_INVALID_ARG);
  CHECK(ellopt_spectral(&cfg, 1, 0, &rep) == ELLOPT_ERR_INVALID_ARG);
  CHECK(ellopt_spectral(&cfg, 1, 50, nullptr) == ELLOPT_ERR_INVALID_ARG);
}

TEST_CASE("matrix export through the C API") {
  ellopt_config cfg;
  ellopt_config_init(&cfg);
  REQUIRE(ellopt_export_matrices(&cfg, 1, "capi_K.mtx", "capi_M.mtx", "capi_f.vec") == ELLOPT_OK);
  const auto K = ellopt::read_matrix_market("capi_K.mtx");
  const auto M = ellopt::read_matrix_market("capi_M.mtx");
  const auto f = ellopt::read_vector_market("capi_f.vec");
  CHECK(K.n_rows == 27);
  CHECK(M.n_rows == 27);
  CHECK(f.size() == 27);
  CHECK(ellopt_export_matrices(&cfg, 1, "/nonexistent_dir/x.mtx", "capi_M.mtx", "capi_f.vec") ==
        ELLOPT_ERR_IO);
  std::remove("capi_K.mtx");
  std::remove("capi_M.mtx");
  std::remove("capi_f.vec");
}

TEST_CASE("version string") {
  CHECK(std::string(ellopt_version()) == "1.0.0");
}

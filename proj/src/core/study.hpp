#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/approaches.hpp"
#include "core/assembly.hpp"

namespace ellopt {

enum class SolverKind { MgMinres, DiagMinres, BpPcg, InexactSchurPcg };

SolverKind solver_from_string(const std::string& s);
std::string to_string(SolverKind s);

struct RunConfig {
  int dim = 3;
  int level_min = 1;
  int level_max = 5;
  Target target = Target::SmoothSine;
  SolverKind solver = SolverKind::MgMinres;
  double rho_exponent = 4.0;  // rho(level) = h(level)^rho_exponent
  double rtol = 1e-11;
  int quad_order = 4;
  DiagVariant diag_variant = DiagVariant::Lump;
  int max_iterations = 0;  // 0 = auto
  std::uint64_t seed = 0;
  int threads = 1;
};

struct LevelResult {
  int level = 0;
  double h = 0.0;
  double rho = 0.0;
  int n_dofs = 0;  // interior dofs N_h
  double l2_error = 0.0;
  std::optional<double> eoc;
  SolveStats stats;
};

using EocTable = std::vector<LevelResult>;

// Per level: build mesh, assemble, set rho = h^alpha, solve with the chosen
// approach, compute the L2 error against the target and the EOC against the
// previous level. Non-convergence flags the row; the study continues.
EocTable run_study(const RunConfig& cfg);

// Solves once per rho value at a fixed level (Approach 1) and fits the
// log-log slope over the regularization-dominated points, i.e. those whose
// error exceeds 3x the rho = h^4 baseline error.
struct RhoSweepResult {
  std::vector<std::pair<double, double>> points;  // (rho, l2_error)
  double fitted_slope = 0.0;
  int points_in_fit = 0;
  double baseline_error = 0.0;  // error at rho = h^4
};
RhoSweepResult rho_sweep(const RunConfig& cfg, int level, const std::vector<double>& rho_values);

// Measured surrogates for the eigenvalue and spectral-equivalence bounds:
// power iteration for lambda_max(M^-1 K) (dense mass solve on levels <= 2,
// inner CG above), and Rayleigh-quotient extremes of S vs M and
// A = M + sqrt(rho) K vs M over random vectors.
struct SpectralReport {
  int level = 0;
  double lambda_max_MinvK = 0.0;
  double lambda_max_MinvK_times_h2 = 0.0;
  double rayleigh_S_over_M_min = 0.0;
  double rayleigh_S_over_M_max = 0.0;
  double rayleigh_A_over_M_min = 0.0;
  double rayleigh_A_over_M_max = 0.0;
};
SpectralReport spectral_report(const RunConfig& cfg, int level, int n_samples = 200);

enum class TableFormat { Csv, Json, Markdown };
TableFormat format_from_string(const std::string& s);

std::string format_table(const EocTable& table, const RunConfig& cfg, TableFormat format);

// Writes K, M (symmetric Matrix Market) and the load vector for one level.
void export_matrices(const RunConfig& cfg, int level, const std::string& k_path,
                     const std::string& m_path, const std::string& f_path);

}  // namespace ellopt

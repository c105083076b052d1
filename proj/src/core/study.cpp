#include "core/study.hpp"

#include <cmath>
#include <memory>
#include <random>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "core/dense.hpp"

namespace ellopt {

SolverKind solver_from_string(const std::string& s) {
  if (s == "mg-minres") return SolverKind::MgMinres;
  if (s == "diag-minres") return SolverKind::DiagMinres;
  if (s == "bp-pcg") return SolverKind::BpPcg;
  if (s == "inex-sc-pcg") return SolverKind::InexactSchurPcg;
  throw std::invalid_argument("unknown solver: " + s);
}

std::string to_string(SolverKind s) {
  switch (s) {
    case SolverKind::MgMinres: return "mg-minres";
    case SolverKind::DiagMinres: return "diag-minres";
    case SolverKind::BpPcg: return "bp-pcg";
    case SolverKind::InexactSchurPcg: return "inex-sc-pcg";
  }
  return "?";
}

namespace {

KrylovOptions krylov_options(const RunConfig& cfg) {
  KrylovOptions opt;
  opt.rtol = cfg.rtol;
  opt.max_iterations = cfg.max_iterations;
  return opt;
}

struct SolveOutcome {
  std::vector<double> u;
  SolveStats stats;
};

SolveOutcome solve_level(const RunConfig& cfg, const MeshHierarchy& hier, int level,
                         const AssembledProblem& problem) {
  const KrylovOptions opt = krylov_options(cfg);
  switch (cfg.solver) {
    case SolverKind::MgMinres: {
      MgHierarchy mg(hier, level, problem.M, problem.K, problem.rho);
      auto sol = solve_mg_minres(problem, mg, opt);
      return {std::move(sol.u), sol.stats};
    }
    case SolverKind::DiagMinres: {
      auto sol = solve_diag_minres(problem, opt);
      return {std::move(sol.u), sol.stats};
    }
    case SolverKind::BpPcg: {
      auto sol = solve_bp_pcg(problem, opt);
      return {std::move(sol.u), sol.stats};
    }
    case SolverKind::InexactSchurPcg: {
      auto sol = solve_inexact_schur(problem, cfg.diag_variant, opt);
      return {std::move(sol.u), sol.stats};
    }
  }
  throw std::logic_error("solve_level: unreachable");
}

}  // namespace

EocTable run_study(const RunConfig& cfg) {
  if (cfg.level_min < 1 || cfg.level_max < cfg.level_min) {
    throw std::invalid_argument("run_study: invalid level range");
  }
  set_spmv_threads(cfg.threads);
  // The hierarchy is built once up to the finest requested level; each study
  // level uses its prefix.
  const MeshHierarchy hier = build_hierarchy(cfg.dim, cfg.level_max);
  EocTable table;
  for (int level = cfg.level_min; level <= cfg.level_max; ++level) {
    const auto& mesh = hier.meshes[level - 1];
    const double rho = std::pow(mesh.h, cfg.rho_exponent);
    const AssembledProblem problem = assemble_problem(mesh, cfg.target, rho, cfg.quad_order);
    const SolveOutcome out = solve_level(cfg, hier, level, problem);

    LevelResult row;
    row.level = level;
    row.h = mesh.h;
    row.rho = rho;
    row.n_dofs = mesh.n_interior();
    row.l2_error = l2_error(mesh, out.u, cfg.target, cfg.quad_order);
    row.stats = out.stats;
    if (!table.empty()) row.eoc = eoc(table.back().l2_error, row.l2_error);
    table.push_back(std::move(row));
  }
  return table;
}

RhoSweepResult rho_sweep(const RunConfig& cfg, int level, const std::vector<double>& rho_values) {
  if (rho_values.empty()) throw std::invalid_argument("rho_sweep: no rho values");
  set_spmv_threads(cfg.threads);
  const MeshHierarchy hier = build_hierarchy(cfg.dim, level);
  const auto& mesh = hier.meshes[level - 1];
  const KrylovOptions opt = krylov_options(cfg);

  AssembledProblem problem = assemble_problem(mesh, cfg.target, 1.0, cfg.quad_order);
  auto solve_for = [&](double rho) {
    problem.rho = rho;
    MgHierarchy mg(hier, level, problem.M, problem.K, rho);
    const auto sol = solve_mg_minres(problem, mg, opt);
    if (!sol.stats.converged) throw std::runtime_error("rho_sweep: solver did not converge");
    return l2_error(mesh, sol.u, cfg.target, cfg.quad_order);
  };

  RhoSweepResult result;
  result.baseline_error = solve_for(std::pow(mesh.h, 4.0));
  for (const double rho : rho_values) {
    result.points.emplace_back(rho, solve_for(rho));
  }

  // Ordinary least squares of log e against log rho over the points clear of
  // the discretization floor.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (const auto& [rho, err] : result.points) {
    if (err <= 3.0 * result.baseline_error) continue;
    const double lx = std::log(rho);
    const double ly = std::log(err);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++m;
  }
  result.points_in_fit = m;
  if (m >= 2) {
    result.fitted_slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  }
  return result;
}

SpectralReport spectral_report(const RunConfig& cfg, int level, int n_samples) {
  set_spmv_threads(cfg.threads);
  const auto mesh = build_mesh(cfg.dim, level);
  const CsrMatrix K = assemble_stiffness(mesh);
  const CsrMatrix M = assemble_mass(mesh);
  const auto m_diag = mass_diagonal(M, mesh, DiagVariant::Diag);
  const double rho = std::pow(mesh.h, cfg.rho_exponent);
  const int n = mesh.n_interior();

  // Mass solves: dense factorization on small levels, Jacobi-preconditioned
  // CG above (M is uniformly well conditioned, so this stays exact to the
  // tight tolerance in a handful of iterations).
  std::unique_ptr<LuFactorization> m_lu;
  if (level <= 2) m_lu = std::make_unique<LuFactorization>(dense_from_csr(M));
  auto mass_solve = [&](const std::vector<double>& r) {
    if (m_lu) return m_lu->solve(r);
    KrylovOptions opt;
    opt.rtol = 1e-13;
    SolveStats st;
    auto z = pcg([&](const std::vector<double>& x) { return spmv(M, x); },
                 [&](const std::vector<double>& x) {
                   std::vector<double> y(n);
                   for (int i = 0; i < n; ++i) y[i] = x[i] / m_diag[i];
                   return y;
                 },
                 r, opt, st);
    if (!st.converged) throw std::runtime_error("spectral_report: mass solve did not converge");
    return z;
  };

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  auto random_vector = [&]() {
    std::vector<double> v(n);
    for (double& x : v) x = unit(rng);
    return v;
  };

  // Power iteration on M^-1 K with Rayleigh-quotient convergence test.
  std::vector<double> v = random_vector();
  double lambda = 0.0;
  bool converged = false;
  for (int it = 0; it < 10000; ++it) {
    const auto Kv = spmv(K, v);
    const auto Mv = spmv(M, v);
    const double next = dot(Kv, v) / dot(Mv, v);
    v = mass_solve(Kv);
    const double nrm = norm2(v);
    for (double& x : v) x /= nrm;
    if (it > 0 && std::abs(next - lambda) <= 1e-10 * std::abs(next)) {
      lambda = next;
      converged = true;
      break;
    }
    lambda = next;
  }
  if (!converged) throw std::runtime_error("spectral_report: power iteration did not converge");

  SpectralReport rep;
  rep.level = level;
  rep.lambda_max_MinvK = lambda;
  rep.lambda_max_MinvK_times_h2 = lambda * mesh.h * mesh.h;

  auto schur_apply = [&](const std::vector<double>& x) {
    const auto Kx = spmv(K, x);
    auto y = spmv(K, mass_solve(Kx));
    const auto Mx = spmv(M, x);
    for (int i = 0; i < n; ++i) y[i] = rho * y[i] + Mx[i];
    return y;
  };

  rep.rayleigh_S_over_M_min = rep.rayleigh_A_over_M_min = 1e300;
  rep.rayleigh_S_over_M_max = rep.rayleigh_A_over_M_max = 0.0;
  const double sqrt_rho = std::sqrt(rho);
  for (int s = 0; s < n_samples; ++s) {
    const auto x = random_vector();
    const auto Mx = spmv(M, x);
    const double mxx = dot(Mx, x);
    const double sq = dot(schur_apply(x), x) / mxx;
    const auto Kx = spmv(K, x);
    const double aq = (mxx + sqrt_rho * dot(Kx, x)) / mxx;
    rep.rayleigh_S_over_M_min = std::min(rep.rayleigh_S_over_M_min, sq);
    rep.rayleigh_S_over_M_max = std::max(rep.rayleigh_S_over_M_max, sq);
    rep.rayleigh_A_over_M_min = std::min(rep.rayleigh_A_over_M_min, aq);
    rep.rayleigh_A_over_M_max = std::max(rep.rayleigh_A_over_M_max, aq);
  }
  return rep;
}

TableFormat format_from_string(const std::string& s) {
  if (s == "csv") return TableFormat::Csv;
  if (s == "json") return TableFormat::Json;
  if (s == "md") return TableFormat::Markdown;
  throw std::invalid_argument("unknown format: " + s);
}

namespace {

std::string num17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string num3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.5e", v);
  return buf;
}

}  // namespace

std::string format_table(const EocTable& table, const RunConfig& cfg, TableFormat format) {
  std::ostringstream os;
  switch (format) {
    case TableFormat::Csv: {
      os << "level,h,rho,n_dofs,l2_error,eoc,iterations,converged,"
            "initial_prec_residual,final_prec_residual,time_seconds\r\n";
      for (const auto& r : table) {
        os << r.level << ',' << num17(r.h) << ',' << num17(r.rho) << ',' << r.n_dofs << ','
           << num17(r.l2_error) << ',' << (r.eoc ? num17(*r.eoc) : std::string()) << ','
           << r.stats.iterations << ',' << (r.stats.converged ? 1 : 0) << ','
           << num17(r.stats.initial_prec_residual) << ',' << num17(r.stats.final_prec_residual)
           << ',' << num17(r.stats.wall_seconds) << "\r\n";
      }
      break;
    }
    case TableFormat::Json: {
      nlohmann::json j;
      j["config"] = {{"dim", cfg.dim},
                     {"level_min", cfg.level_min},
                     {"level_max", cfg.level_max},
                     {"target", static_cast<int>(cfg.target)},
                     {"solver", to_string(cfg.solver)},
                     {"rho_exponent", cfg.rho_exponent},
                     {"rtol", cfg.rtol},
                     {"quad_order", cfg.quad_order},
                     {"seed", cfg.seed},
                     {"threads", cfg.threads}};
      j["rows"] = nlohmann::json::array();
      for (const auto& r : table) {
        nlohmann::json row = {{"level", r.level},
                              {"h", r.h},
                              {"rho", r.rho},
                              {"n_dofs", r.n_dofs},
                              {"l2_error", r.l2_error},
                              {"iterations", r.stats.iterations},
                              {"converged", r.stats.converged},
                              {"initial_prec_residual", r.stats.initial_prec_residual},
                              {"final_prec_residual", r.stats.final_prec_residual},
                              {"time_seconds", r.stats.wall_seconds}};
        if (r.eoc) row["eoc"] = *r.eoc;
        j["rows"].push_back(std::move(row));
      }
      os << j.dump(2) << "\n";
      break;
    }
    case TableFormat::Markdown: {
      os << "| Level | error | eoc | #Its | Time (s) |\n";
      os << "|-------|-------|-----|------|----------|\n";
      for (const auto& r : table) {
        os << "| L" << r.level << " | " << num3(r.l2_error) << " | "
           << (r.eoc ? num3(*r.eoc) : std::string("-")) << " | " << r.stats.iterations
           << (r.stats.converged ? "" : " (not converged)") << " | " << num3(r.stats.wall_seconds)
           << " |\n";
      }
      break;
    }
  }
  return os.str();
}

void export_matrices(const RunConfig& cfg, int level, const std::string& k_path,
                     const std::string& m_path, const std::string& f_path) {
  const auto mesh = build_mesh(cfg.dim, level);
  write_matrix_market(assemble_stiffness(mesh), k_path, /*symmetric=*/true);
  write_matrix_market(assemble_mass(mesh), m_path, /*symmetric=*/true);
  write_vector_market(assemble_load(mesh, cfg.target, cfg.quad_order), f_path);
}

}  // namespace ellopt

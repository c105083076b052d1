#include "core/approaches.hpp"

#include <cmath>
#include <stdexcept>

#include "core/operators.hpp"

namespace ellopt {

namespace {

std::vector<double> stacked_rhs(const std::vector<double>& top, const std::vector<double>& bottom) {
  std::vector<double> b(top.size() + bottom.size());
  std::copy(top.begin(), top.end(), b.begin());
  std::copy(bottom.begin(), bottom.end(), b.begin() + top.size());
  return b;
}

KrylovOptions with_default_maxit(KrylovOptions options, int n) {
  if (options.max_iterations <= 0) options.max_iterations = default_max_iterations(n);
  return options;
}

}  // namespace

MixedSolution solve_mg_minres(const AssembledProblem& problem, const MgHierarchy& mg,
                              KrylovOptions options) {
  const int n = problem.M.n_rows;
  const double rho = problem.rho;
  MixedSaddleOperator op{problem.M, problem.K, rho};
  const LinearOp apply = [&](const std::vector<double>& x) { return op.apply(x); };
  const LinearOp prec = [&, n, rho](const std::vector<double>& r) {
    const std::vector<double> r1(r.begin(), r.begin() + n);
    const std::vector<double> r2(r.begin() + n, r.end());
    const auto z1 = mg.apply(r1);
    auto z2 = mg.apply(r2);
    std::vector<double> z(2 * n);
    for (int i = 0; i < n; ++i) {
      z[i] = z1[i];
      z[n + i] = rho * z2[i];  // inverse of the rho^-1-scaled block
    }
    return z;
  };
  MixedSolution sol;
  const auto b = stacked_rhs(problem.f, std::vector<double>(n, 0.0));
  const auto x = minres(apply, prec, b, with_default_maxit(options, 2 * n), sol.stats);
  sol.u.assign(x.begin(), x.begin() + n);
  sol.p_hat.assign(x.begin() + n, x.end());
  return sol;
}

MixedSolution solve_diag_minres(const AssembledProblem& problem, KrylovOptions options) {
  const int n = problem.M.n_rows;
  const double rho = problem.rho;
  MixedSaddleOperator op{problem.M, problem.K, rho};
  const LinearOp apply = [&](const std::vector<double>& x) { return op.apply(x); };
  const auto& d = problem.m_diag;
  const LinearOp prec = [&, n, rho](const std::vector<double>& r) {
    std::vector<double> z(2 * n);
    for (int i = 0; i < n; ++i) {
      z[i] = r[i] / d[i];
      z[n + i] = rho * r[n + i] / d[i];
    }
    return z;
  };
  MixedSolution sol;
  const auto b = stacked_rhs(problem.f, std::vector<double>(n, 0.0));
  const auto x = minres(apply, prec, b, with_default_maxit(options, 2 * n), sol.stats);
  sol.u.assign(x.begin(), x.begin() + n);
  sol.p_hat.assign(x.begin() + n, x.end());
  return sol;
}

BpSolution solve_bp_pcg(const AssembledProblem& problem, KrylovOptions options) {
  const int n = problem.M.n_rows;
  if (!(problem.rho > 0.0)) throw std::invalid_argument("solve_bp_pcg: rho must be positive");
  std::vector<double> c_m(n);
  for (int i = 0; i < n; ++i) c_m[i] = 0.25 * problem.m_diag[i];
  BpTransformedOperator op{problem.M, problem.K, problem.rho, c_m};
  const LinearOp apply = [&](const std::vector<double>& x) { return op.apply(x); };
  // Inexact BP preconditioner, fully diagonal:
  //   first block: M - C inverted through its spectrally equivalent diagonal
  //     0.75 diag(M);
  //   second block: the (2,2) block of the transformed matrix is
  //     rho K C^-1 K + M = 4 rho K diag(M)^-1 K + M <= 4 (rho K diag(M)^-1 K + M),
  //     so the diagonal surrogate for it carries the C^-1 scaling of 4; plain
  //     diag(M) leaves that factor in the condition number and roughly
  //     doubles the iteration counts. The extra 1.5 centers the spectral
  //     interval [0.5, 2.5] of diag(M)^-1 M.
  const auto& d = problem.m_diag;
  const LinearOp prec = [&, n](const std::vector<double>& r) {
    std::vector<double> z(2 * n);
    for (int i = 0; i < n; ++i) {
      z[i] = r[i] / (0.75 * d[i]);
      z[n + i] = r[n + i] / (6.0 * d[i]);
    }
    return z;
  };
  // Transformed right-hand side T [0; -f] = [0; f].
  const auto b = stacked_rhs(std::vector<double>(n, 0.0), problem.f);
  BpSolution sol;
  const auto x = pcg(apply, prec, b, with_default_maxit(options, 2 * n), sol.stats);
  sol.p_tilde.assign(x.begin(), x.begin() + n);
  sol.u.assign(x.begin() + n, x.end());
  return sol;
}

SchurSolution solve_inexact_schur(const AssembledProblem& problem, DiagVariant diag_variant,
                                  KrylovOptions options) {
  const int n = problem.M.n_rows;
  InexactSchurOperator op{problem.M, problem.K, problem.rho, problem.m_lump};
  const LinearOp apply = [&](const std::vector<double>& u) { return op.apply(u); };
  const std::vector<double>* d = &problem.m_lump;
  if (diag_variant == DiagVariant::Diag) d = &problem.m_diag;
  if (diag_variant == DiagVariant::Area) d = &problem.m_area;
  const LinearOp prec = [d, n](const std::vector<double>& r) {
    std::vector<double> z(n);
    for (int i = 0; i < n; ++i) z[i] = r[i] / (*d)[i];
    return z;
  };
  SchurSolution sol;
  sol.u = pcg(apply, prec, problem.f, with_default_maxit(options, n), sol.stats);
  return sol;
}

std::vector<double> recover_control(const std::vector<double>& p_hat, double rho) {
  if (!(rho > 0.0)) throw std::invalid_argument("recover_control: rho must be positive");
  std::vector<double> z = p_hat;
  for (double& v : z) v /= rho;
  return z;
}

}  // namespace ellopt

#pragma once

#include <vector>

#include "core/assembly.hpp"
#include "core/krylov.hpp"
#include "core/multigrid.hpp"

namespace ellopt {

struct MixedSolution {
  std::vector<double> u;      // state coefficients
  std::vector<double> p_hat;  // p_hat = -p = -sqrt(rho) p_tilde
  SolveStats stats;
};

struct SchurSolution {
  std::vector<double> u;
  SolveStats stats;
};

// Approach 1: MINRES on the mixed saddle system with the block-diagonal
// multigrid preconditioner blockdiag(C_mg, rho^-1 C_mg).
MixedSolution solve_mg_minres(const AssembledProblem& problem, const MgHierarchy& mg,
                              KrylovOptions options = {});

// Approach 2: MINRES on the mixed saddle system preconditioned by
// blockdiag(diag(M), rho^-1 diag(M)).
MixedSolution solve_diag_minres(const AssembledProblem& problem, KrylovOptions options = {});

// Approach 3: Bramble-Pasciak PCG on the transformed system with
// C_M = 0.25 diag(M); returns u and p_tilde (p_hat = -sqrt(rho) p_tilde).
struct BpSolution {
  std::vector<double> u;
  std::vector<double> p_tilde;
  SolveStats stats;
};
BpSolution solve_bp_pcg(const AssembledProblem& problem, KrylovOptions options = {});

// Approach 4: PCG on the inexact Schur complement system
// (rho K lump(M)^-1 K + M) u = f with a diagonal mass preconditioner.
SchurSolution solve_inexact_schur(const AssembledProblem& problem,
                                  DiagVariant diag_variant = DiagVariant::Lump,
                                  KrylovOptions options = {});

// Control recovery from the gradient equation p + rho z = 0 with p = -p_hat.
std::vector<double> recover_control(const std::vector<double>& p_hat, double rho);

}  // namespace ellopt

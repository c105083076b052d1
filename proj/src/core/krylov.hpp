#pragma once

#include <functional>
#include <vector>

namespace ellopt {

using LinearOp = std::function<std::vector<double>(const std::vector<double>&)>;

struct SolveStats {
  int iterations = 0;
  double initial_prec_residual = 0.0;
  double final_prec_residual = 0.0;
  bool converged = false;
  bool breakdown = false;
  bool residual_monotone = true;  // preconditioned residual never increased
  double wall_seconds = 0.0;
};

struct KrylovOptions {
  double rtol = 1e-11;     // reduction factor of the preconditioned residual
  int max_iterations = 0;  // 0 = auto: 10 sqrt(n) + 500, capped at 20000
};

int default_max_iterations(int n);

// Preconditioned MINRES (two-term Lanczos recurrence, SPD preconditioner)
// from zero initial guess. Stops when sqrt(r, C^-1 r) falls below
// rtol times its initial value; that norm is a recurrence by-product.
std::vector<double> minres(const LinearOp& apply_op, const LinearOp& apply_prec,
                           const std::vector<double>& b, KrylovOptions options,
                           SolveStats& stats);

// Standard preconditioned CG, zero initial guess, same stopping rule.
// Non-positive curvature (p, Ap) <= 0 is reported via stats.breakdown.
std::vector<double> pcg(const LinearOp& apply_op, const LinearOp& apply_prec,
                        const std::vector<double>& b, KrylovOptions options,
                        SolveStats& stats);

}  // namespace ellopt

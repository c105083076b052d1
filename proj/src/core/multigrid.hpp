#pragma once

#include <memory>
#include <vector>

#include "core/csr.hpp"
#include "core/dense.hpp"
#include "core/mesh.hpp"

namespace ellopt {

enum class CycleType { V, W };

struct MgOptions {
  CycleType cycle = CycleType::W;
  int pre_sweeps = 2;
  int post_sweeps = 2;
  int cycles_per_application = 1;  // k
};

// In-place successive displacement sweep; forward sweeps run in the interior
// dof order, backward sweeps in reverse. Throws on zero diagonal.
void gauss_seidel_sweep(const CsrMatrix& A, std::vector<double>& x,
                        const std::vector<double>& b, bool forward);

// Symmetric geometric multigrid preconditioner for A = M + sqrt(rho) K.
// Coarse operators are Galerkin products P^T A P; the coarsest level is
// solved exactly by a dense factorization. With forward presmoothing,
// backward postsmoothing and restriction = prolongation transpose, the
// preconditioner action is symmetric and positive definite.
class MgHierarchy {
 public:
  MgHierarchy(const MeshHierarchy& hier, const CsrMatrix& M, const CsrMatrix& K,
              double rho, MgOptions options = {});
  // Uses only the first `depth` levels of the hierarchy; M and K must live on
  // level `depth`.
  MgHierarchy(const MeshHierarchy& hier, int depth, const CsrMatrix& M, const CsrMatrix& K,
              double rho, MgOptions options = {});

  // z such that z = (I - MG^k) A^-1 r: k cycles for A z = r from zero guess.
  std::vector<double> apply(const std::vector<double>& r) const;

  int depth() const { return static_cast<int>(levels_.size()); }
  const CsrMatrix& finest() const { return levels_.back(); }

 private:
  void cycle(int level, const std::vector<double>& b, std::vector<double>& x) const;

  std::vector<CsrMatrix> levels_;         // coarsest first
  std::vector<CsrMatrix> prolongations_;  // prolongations_[l]: level l -> l+1
  std::vector<CsrMatrix> restrictions_;
  std::unique_ptr<LuFactorization> coarse_solver_;
  MgOptions options_;
};

}  // namespace ellopt

#pragma once

#include <vector>

#include "core/csr.hpp"

namespace ellopt {

// Matrix-free application of the three equivalent system formulations.
// Operators hold read-only references; distinct calls may run concurrently
// on distinct output buffers.

// [ M  K  ] [u]    applied to stacked [u; p_hat], p_hat = -sqrt(rho) p_tilde.
// [ K  -M/rho ]
struct MixedSaddleOperator {
  const CsrMatrix& M;
  const CsrMatrix& K;
  double rho;

  int size() const { return 2 * M.n_rows; }
  std::vector<double> apply(const std::vector<double>& x) const;
};

// Bramble-Pasciak transformed matrix applied to stacked [p_tilde; u]:
//   T * [[M, sqrt(rho) K], [sqrt(rho) K, -M]]
// with T = [[M C^-1 - I, 0], [sqrt(rho) K C^-1, -I]] and diagonal C < M.
// The product is never assembled; each application costs two K- and two
// M-spmv plus diagonal scalings.
struct BpTransformedOperator {
  const CsrMatrix& M;
  const CsrMatrix& K;
  double rho;
  const std::vector<double>& c_m;  // diagonal of C_M

  int size() const { return 2 * M.n_rows; }
  std::vector<double> apply(const std::vector<double>& x) const;
};

// rho K lump(M)^-1 K + M
struct InexactSchurOperator {
  const CsrMatrix& M;
  const CsrMatrix& K;
  double rho;
  const std::vector<double>& lump;

  int size() const { return M.n_rows; }
  std::vector<double> apply(const std::vector<double>& u) const;
};

}  // namespace ellopt

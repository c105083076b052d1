#include "core/multigrid.hpp"

#include <cmath>
#include <stdexcept>

namespace ellopt {

void gauss_seidel_sweep(const CsrMatrix& A, std::vector<double>& x,
                        const std::vector<double>& b, bool forward) {
  const int n = A.n_rows;
  auto update = [&](int i) {
    double s = b[i];
    double diag = 0.0;
    for (int k = A.row_offsets[i]; k < A.row_offsets[i + 1]; ++k) {
      const int j = A.col_indices[k];
      if (j == i) {
        diag = A.values[k];
      } else {
        s -= A.values[k] * x[j];
      }
    }
    if (diag == 0.0) throw std::runtime_error("gauss_seidel_sweep: zero diagonal");
    x[i] = s / diag;
  };
  if (forward) {
    for (int i = 0; i < n; ++i) update(i);
  } else {
    for (int i = n - 1; i >= 0; --i) update(i);
  }
}

namespace {

CsrMatrix csr_add_scaled(const CsrMatrix& M, double alpha, const CsrMatrix& K) {
  std::vector<std::vector<std::pair<int, double>>> rows(M.n_rows);
  for (int i = 0; i < M.n_rows; ++i) {
    for (int k = M.row_offsets[i]; k < M.row_offsets[i + 1]; ++k) {
      rows[i].emplace_back(M.col_indices[k], M.values[k]);
    }
    for (int k = K.row_offsets[i]; k < K.row_offsets[i + 1]; ++k) {
      rows[i].emplace_back(K.col_indices[k], alpha * K.values[k]);
    }
  }
  return csr_from_rows(M.n_rows, M.n_cols, rows);
}

}  // namespace

MgHierarchy::MgHierarchy(const MeshHierarchy& hier, const CsrMatrix& M, const CsrMatrix& K,
                         double rho, MgOptions options)
    : MgHierarchy(hier, static_cast<int>(hier.meshes.size()), M, K, rho, options) {}

MgHierarchy::MgHierarchy(const MeshHierarchy& hier, int depth, const CsrMatrix& M,
                         const CsrMatrix& K, double rho, MgOptions options)
    : options_(options) {
  if (depth < 1 || depth > static_cast<int>(hier.meshes.size())) {
    throw std::invalid_argument("MgHierarchy: depth out of range");
  }
  if (!(rho > 0.0)) throw std::invalid_argument("MgHierarchy: rho must be positive");
  if (M.n_rows != hier.meshes[depth - 1].n_interior()) {
    throw std::invalid_argument("MgHierarchy: matrix size does not match level");
  }

  levels_.resize(depth);
  levels_[depth - 1] = csr_add_scaled(M, std::sqrt(rho), K);
  prolongations_.assign(hier.prolongations.begin(), hier.prolongations.begin() + (depth - 1));
  restrictions_.reserve(prolongations_.size());
  for (const auto& P : prolongations_) restrictions_.push_back(csr_transpose(P));
  for (int l = depth - 2; l >= 0; --l) {
    // Galerkin coarse operator P^T A P
    levels_[l] = csr_multiply(restrictions_[l], csr_multiply(levels_[l + 1], prolongations_[l]));
  }
  coarse_solver_ = std::make_unique<LuFactorization>(dense_from_csr(levels_[0]));
}

void MgHierarchy::cycle(int level, const std::vector<double>& b, std::vector<double>& x) const {
  if (level == 0) {
    x = coarse_solver_->solve(b);
    return;
  }
  const CsrMatrix& A = levels_[level];
  for (int s = 0; s < options_.pre_sweeps; ++s) gauss_seidel_sweep(A, x, b, true);

  auto r = spmv(A, x);
  for (int i = 0; i < A.n_rows; ++i) r[i] = b[i] - r[i];
  const auto rc = spmv(restrictions_[level - 1], r);
  std::vector<double> xc(rc.size(), 0.0);
  const int gamma = options_.cycle == CycleType::W ? 2 : 1;
  for (int g = 0; g < gamma; ++g) cycle(level - 1, rc, xc);
  const auto corr = spmv(prolongations_[level - 1], xc);
  for (int i = 0; i < A.n_rows; ++i) x[i] += corr[i];

  for (int s = 0; s < options_.post_sweeps; ++s) gauss_seidel_sweep(A, x, b, false);
}

std::vector<double> MgHierarchy::apply(const std::vector<double>& r) const {
  std::vector<double> z(r.size(), 0.0);
  for (int k = 0; k < options_.cycles_per_application; ++k) {
    cycle(depth() - 1, r, z);
  }
  return z;
}

}  // namespace ellopt

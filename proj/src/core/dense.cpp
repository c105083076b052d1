#include "core/dense.hpp"

#include <cmath>
#include <stdexcept>

#include "core/csr.hpp"

namespace ellopt {

std::vector<double> DenseMatrix::multiply(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != n_cols_) throw std::invalid_argument("DenseMatrix::multiply: dimension mismatch");
  std::vector<double> y(n_rows_, 0.0);
  for (int i = 0; i < n_rows_; ++i) {
    double s = 0.0;
    for (int j = 0; j < n_cols_; ++j) s += (*this)(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

DenseMatrix dense_from_csr(const CsrMatrix& A) {
  DenseMatrix D(A.n_rows, A.n_cols);
  for (int i = 0; i < A.n_rows; ++i) {
    for (int k = A.row_offsets[i]; k < A.row_offsets[i + 1]; ++k) {
      D(i, A.col_indices[k]) = A.values[k];
    }
  }
  return D;
}

LuFactorization::LuFactorization(DenseMatrix A) : lu_(std::move(A)) {
  if (lu_.rows() != lu_.cols()) throw std::invalid_argument("LuFactorization: matrix not square");
  const int n = lu_.rows();
  pivots_.resize(n);
  for (int k = 0; k < n; ++k) {
    int p = k;
    double best = std::abs(lu_(k, k));
    for (int i = k + 1; i < n; ++i) {
      if (std::abs(lu_(i, k)) > best) {
        best = std::abs(lu_(i, k));
        p = i;
      }
    }
    if (best < 1e-300) throw std::runtime_error("LuFactorization: singular matrix");
    pivots_[k] = p;
    if (p != k) {
      for (int j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(p, j));
    }
    const double inv = 1.0 / lu_(k, k);
    for (int i = k + 1; i < n; ++i) {
      const double l = lu_(i, k) * inv;
      lu_(i, k) = l;
      for (int j = k + 1; j < n; ++j) lu_(i, j) -= l * lu_(k, j);
    }
  }
}

std::vector<double> LuFactorization::solve(const std::vector<double>& b) const {
  const int n = lu_.rows();
  if (static_cast<int>(b.size()) != n) throw std::invalid_argument("LuFactorization::solve: dimension mismatch");
  std::vector<double> x = b;
  // The factorization swaps whole rows, so the recorded interchanges must be
  // applied to the right-hand side in full before the triangular solves.
  for (int k = 0; k < n; ++k) std::swap(x[k], x[pivots_[k]]);
  for (int k = 0; k < n; ++k) {
    for (int i = k + 1; i < n; ++i) x[i] -= lu_(i, k) * x[k];
  }
  for (int i = n - 1; i >= 0; --i) {
    for (int j = i + 1; j < n; ++j) x[i] -= lu_(i, j) * x[j];
    x[i] /= lu_(i, i);
  }
  return x;
}

std::vector<double> dense_solve(const DenseMatrix& A, const std::vector<double>& b) {
  return LuFactorization(A).solve(b);
}

}  // namespace ellopt

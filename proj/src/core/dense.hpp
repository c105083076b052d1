#pragma once

#include <vector>

namespace ellopt {

struct CsrMatrix;

// Row-major dense matrix, used for test oracles and the multigrid coarse solve.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(int rows, int cols) : n_rows_(rows), n_cols_(cols), data_(static_cast<std::size_t>(rows) * cols, 0.0) {}

  int rows() const { return n_rows_; }
  int cols() const { return n_cols_; }
  double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * n_cols_ + j]; }
  double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * n_cols_ + j]; }

  std::vector<double> multiply(const std::vector<double>& x) const;

 private:
  int n_rows_ = 0;
  int n_cols_ = 0;
  std::vector<double> data_;
};

DenseMatrix dense_from_csr(const CsrMatrix& A);

// LU factorization with partial pivoting; throws on singular-to-working-precision pivots.
class LuFactorization {
 public:
  explicit LuFactorization(DenseMatrix A);
  std::vector<double> solve(const std::vector<double>& b) const;

 private:
  DenseMatrix lu_;
  std::vector<int> pivots_;
};

std::vector<double> dense_solve(const DenseMatrix& A, const std::vector<double>& b);

}  // namespace ellopt

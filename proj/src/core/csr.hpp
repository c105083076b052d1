#pragma once

#include <string>
#include <vector>

namespace ellopt {

// Compressed sparse row matrix. Symmetric matrices store both triangles so
// that spmv never needs the transpose pattern. Column indices are sorted
// within each row.
struct CsrMatrix {
  int n_rows = 0;
  int n_cols = 0;
  std::vector<int> row_offsets;  // size n_rows + 1
  std::vector<int> col_indices;
  std::vector<double> values;

  int nnz() const { return static_cast<int>(col_indices.size()); }
  double operator()(int i, int j) const;  // 0 if not stored
};

// Builds a CSR matrix from per-row (column, value) pairs. Pairs within a row
// need not be sorted; duplicates are summed in the given order.
CsrMatrix csr_from_rows(int n_rows, int n_cols,
                        const std::vector<std::vector<std::pair<int, double>>>& rows);

// y = A * x with fixed left-to-right accumulation per row. Each row is
// accumulated serially regardless of the worker count, so the result is
// bit-identical for any thread setting. threads <= 0 uses the process-wide
// default set below.
void spmv(const CsrMatrix& A, const std::vector<double>& x, std::vector<double>& y,
          int threads = 0);
std::vector<double> spmv(const CsrMatrix& A, const std::vector<double>& x, int threads = 0);

void set_spmv_threads(int threads);
int spmv_threads();

CsrMatrix csr_transpose(const CsrMatrix& A);
CsrMatrix csr_multiply(const CsrMatrix& A, const CsrMatrix& B);

std::vector<double> csr_diagonal(const CsrMatrix& A);
std::vector<double> csr_row_sums(const CsrMatrix& A);

// Matrix Market coordinate I/O (real, general or symmetric). Values are
// written with 17 significant digits so the round trip is exact in binary64.
void write_matrix_market(const CsrMatrix& A, const std::string& path, bool symmetric = false);
CsrMatrix read_matrix_market(const std::string& path);

// Dense vector in Matrix Market array format (n x 1).
void write_vector_market(const std::vector<double>& v, const std::string& path);
std::vector<double> read_vector_market(const std::string& path);

// Basic vector kernels used by all solvers; serial, fixed order.
double dot(const std::vector<double>& a, const std::vector<double>& b);
double norm2(const std::vector<double>& a);
void axpy(double alpha, const std::vector<double>& x, std::vector<double>& y);  // y += alpha x
void scale(std::vector<double>& x, double alpha);

}  // namespace ellopt

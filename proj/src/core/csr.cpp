#include "core/csr.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace ellopt {

double CsrMatrix::operator()(int i, int j) const {
  for (int k = row_offsets[i]; k < row_offsets[i + 1]; ++k) {
    if (col_indices[k] == j) return values[k];
  }
  return 0.0;
}

CsrMatrix csr_from_rows(int n_rows, int n_cols,
                        const std::vector<std::vector<std::pair<int, double>>>& rows) {
  if (static_cast<int>(rows.size()) != n_rows) throw std::invalid_argument("csr_from_rows: row count mismatch");
  CsrMatrix A;
  A.n_rows = n_rows;
  A.n_cols = n_cols;
  A.row_offsets.assign(n_rows + 1, 0);
  for (int i = 0; i < n_rows; ++i) {
    std::vector<std::pair<int, double>> row = rows[i];
    std::stable_sort(row.begin(), row.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    int prev = -1;
    for (const auto& [j, v] : row) {
      if (j < 0 || j >= n_cols) throw std::invalid_argument("csr_from_rows: column out of range");
      if (j == prev) {
        A.values.back() += v;
      } else {
        A.col_indices.push_back(j);
        A.values.push_back(v);
        prev = j;
      }
    }
    A.row_offsets[i + 1] = static_cast<int>(A.col_indices.size());
  }
  return A;
}

namespace {
std::atomic<int> g_spmv_threads{1};
}  // namespace

void set_spmv_threads(int threads) { g_spmv_threads = threads < 1 ? 1 : threads; }

int spmv_threads() { return g_spmv_threads; }

void spmv(const CsrMatrix& A, const std::vector<double>& x, std::vector<double>& y, int threads) {
  if (static_cast<int>(x.size()) != A.n_cols) throw std::invalid_argument("spmv: dimension mismatch");
  if (threads <= 0) threads = g_spmv_threads;
  y.resize(A.n_rows);
  auto run_rows = [&](int r0, int r1) {
    for (int i = r0; i < r1; ++i) {
      double s = 0.0;
      for (int k = A.row_offsets[i]; k < A.row_offsets[i + 1]; ++k) {
        s += A.values[k] * x[A.col_indices[k]];
      }
      y[i] = s;
    }
  };
  if (threads <= 1 || A.n_rows < 4096) {
    run_rows(0, A.n_rows);
    return;
  }
  // Row-block parallelism; each output row is written by exactly one worker,
  // and the per-row accumulation order is identical to the serial path.
  std::vector<std::thread> pool;
  const int nt = std::min<int>(threads, std::thread::hardware_concurrency());
  const int chunk = (A.n_rows + nt - 1) / nt;
  for (int t = 0; t < nt; ++t) {
    const int r0 = t * chunk;
    const int r1 = std::min(A.n_rows, r0 + chunk);
    if (r0 < r1) pool.emplace_back(run_rows, r0, r1);
  }
  for (auto& th : pool) th.join();
}

std::vector<double> spmv(const CsrMatrix& A, const std::vector<double>& x, int threads) {
  std::vector<double> y;
  spmv(A, x, y, threads);
  return y;
}

CsrMatrix csr_transpose(const CsrMatrix& A) {
  CsrMatrix T;
  T.n_rows = A.n_cols;
  T.n_cols = A.n_rows;
  T.row_offsets.assign(T.n_rows + 1, 0);
  for (int k = 0; k < A.nnz(); ++k) T.row_offsets[A.col_indices[k] + 1]++;
  for (int i = 0; i < T.n_rows; ++i) T.row_offsets[i + 1] += T.row_offsets[i];
  T.col_indices.resize(A.nnz());
  T.values.resize(A.nnz());
  std::vector<int> next(T.row_offsets.begin(), T.row_offsets.end() - 1);
  for (int i = 0; i < A.n_rows; ++i) {
    for (int k = A.row_offsets[i]; k < A.row_offsets[i + 1]; ++k) {
      const int p = next[A.col_indices[k]]++;
      T.col_indices[p] = i;  // rows visited in order, so columns come out sorted
      T.values[p] = A.values[k];
    }
  }
  return T;
}

CsrMatrix csr_multiply(const CsrMatrix& A, const CsrMatrix& B) {
  if (A.n_cols != B.n_rows) throw std::invalid_argument("csr_multiply: dimension mismatch");
  CsrMatrix C;
  C.n_rows = A.n_rows;
  C.n_cols = B.n_cols;
  C.row_offsets.assign(C.n_rows + 1, 0);
  std::vector<double> acc(B.n_cols, 0.0);
  std::vector<int> marked;
  for (int i = 0; i < A.n_rows; ++i) {
    marked.clear();
    for (int ka = A.row_offsets[i]; ka < A.row_offsets[i + 1]; ++ka) {
      const int j = A.col_indices[ka];
      const double aij = A.values[ka];
      for (int kb = B.row_offsets[j]; kb < B.row_offsets[j + 1]; ++kb) {
        const int c = B.col_indices[kb];
        if (acc[c] == 0.0 &&
            std::find(marked.begin(), marked.end(), c) == marked.end()) {
          marked.push_back(c);
        }
        acc[c] += aij * B.values[kb];
      }
    }
    std::sort(marked.begin(), marked.end());
    for (const int c : marked) {
      C.col_indices.push_back(c);
      C.values.push_back(acc[c]);
      acc[c] = 0.0;
    }
    C.row_offsets[i + 1] = static_cast<int>(C.col_indices.size());
  }
  return C;
}

std::vector<double> csr_diagonal(const CsrMatrix& A) {
  std::vector<double> d(A.n_rows, 0.0);
  for (int i = 0; i < A.n_rows; ++i) d[i] = A(i, i);
  return d;
}

std::vector<double> csr_row_sums(const CsrMatrix& A) {
  std::vector<double> s(A.n_rows, 0.0);
  for (int i = 0; i < A.n_rows; ++i) {
    double t = 0.0;
    for (int k = A.row_offsets[i]; k < A.row_offsets[i + 1]; ++k) t += A.values[k];
    s[i] = t;
  }
  return s;
}

namespace {
std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}
}  // namespace

void write_matrix_market(const CsrMatrix& A, const std::string& path, bool symmetric) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os << "%%MatrixMarket matrix coordinate real "
     << (symmetric ? "symmetric" : "general") << "\n";
  int nnz = 0;
  for (int i = 0; i < A.n_rows; ++i) {
    for (int k = A.row_offsets[i]; k < A.row_offsets[i + 1]; ++k) {
      if (!symmetric || A.col_indices[k] <= i) ++nnz;
    }
  }
  os << A.n_rows << " " << A.n_cols << " " << nnz << "\n";
  for (int i = 0; i < A.n_rows; ++i) {
    for (int k = A.row_offsets[i]; k < A.row_offsets[i + 1]; ++k) {
      const int j = A.col_indices[k];
      if (symmetric && j > i) continue;
      os << (i + 1) << " " << (j + 1) << " " << fmt17(A.values[k]) << "\n";
    }
  }
  if (!os) throw std::runtime_error("write failed: " + path);
}

CsrMatrix read_matrix_market(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open: " + path);
  std::string header;
  std::getline(is, header);
  if (header.rfind("%%MatrixMarket", 0) != 0) throw std::runtime_error("not a Matrix Market file: " + path);
  const bool symmetric = header.find("symmetric") != std::string::npos;
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line[0] != '%') break;
  }
  std::istringstream dims(line);
  int nr = 0, nc = 0, nnz = 0;
  dims >> nr >> nc >> nnz;
  std::vector<std::vector<std::pair<int, double>>> rows(nr);
  for (int k = 0; k < nnz; ++k) {
    int i = 0, j = 0;
    double v = 0.0;
    is >> i >> j >> v;
    rows[i - 1].emplace_back(j - 1, v);
    if (symmetric && i != j) rows[j - 1].emplace_back(i - 1, v);
  }
  if (!is) throw std::runtime_error("truncated Matrix Market file: " + path);
  return csr_from_rows(nr, nc, rows);
}

void write_vector_market(const std::vector<double>& v, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os << "%%MatrixMarket matrix array real general\n";
  os << v.size() << " 1\n";
  for (const double x : v) os << fmt17(x) << "\n";
  if (!os) throw std::runtime_error("write failed: " + path);
}

std::vector<double> read_vector_market(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open: " + path);
  std::string header;
  std::getline(is, header);
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line[0] != '%') break;
  }
  std::istringstream dims(line);
  int n = 0, one = 0;
  dims >> n >> one;
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) is >> v[i];
  if (!is) throw std::runtime_error("truncated vector file: " + path);
  return v;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

void axpy(double alpha, const std::vector<double>& x, std::vector<double>& y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

void scale(std::vector<double>& x, double alpha) {
  for (double& v : x) v *= alpha;
}

}  // namespace ellopt

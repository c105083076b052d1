#include "core/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace ellopt {

namespace {

void check_stacked(int n, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != 2 * n) throw std::invalid_argument("block operator: dimension mismatch");
}

}  // namespace

std::vector<double> MixedSaddleOperator::apply(const std::vector<double>& x) const {
  const int n = M.n_rows;
  check_stacked(n, x);
  if (!(rho > 0.0)) throw std::invalid_argument("MixedSaddleOperator: rho must be positive");
  const std::vector<double> u(x.begin(), x.begin() + n);
  const std::vector<double> p(x.begin() + n, x.end());
  const auto Mu = spmv(M, u);
  const auto Kp = spmv(K, p);
  const auto Ku = spmv(K, u);
  const auto Mp = spmv(M, p);
  std::vector<double> y(2 * n);
  const double inv_rho = 1.0 / rho;
  for (int i = 0; i < n; ++i) {
    y[i] = Mu[i] + Kp[i];
    y[n + i] = Ku[i] - inv_rho * Mp[i];
  }
  return y;
}

std::vector<double> BpTransformedOperator::apply(const std::vector<double>& x) const {
  const int n = M.n_rows;
  check_stacked(n, x);
  const double sr = std::sqrt(rho);
  const std::vector<double> pt(x.begin(), x.begin() + n);
  const std::vector<double> u(x.begin() + n, x.end());
  // w1 = M pt + sqrt(rho) K u,  w2 = sqrt(rho) K pt - M u
  auto w1 = spmv(M, pt);
  const auto Ku = spmv(K, u);
  for (int i = 0; i < n; ++i) w1[i] += sr * Ku[i];
  auto w2 = spmv(K, pt);
  const auto Mu = spmv(M, u);
  for (int i = 0; i < n; ++i) w2[i] = sr * w2[i] - Mu[i];
  // z = C^-1 w1;  y1 = M z - w1;  y2 = sqrt(rho) K z - w2
  std::vector<double> z(n);
  for (int i = 0; i < n; ++i) {
    if (c_m[i] == 0.0) throw std::runtime_error("BpTransformedOperator: zero diagonal in C_M");
    z[i] = w1[i] / c_m[i];
  }
  const auto Mz = spmv(M, z);
  const auto Kz = spmv(K, z);
  std::vector<double> y(2 * n);
  for (int i = 0; i < n; ++i) {
    y[i] = Mz[i] - w1[i];
    y[n + i] = sr * Kz[i] - w2[i];
  }
  return y;
}

std::vector<double> InexactSchurOperator::apply(const std::vector<double>& u) const {
  if (static_cast<int>(u.size()) != M.n_rows) throw std::invalid_argument("InexactSchurOperator: dimension mismatch");
  auto Ku = spmv(K, u);
  for (int i = 0; i < K.n_rows; ++i) Ku[i] /= lump[i];
  auto y = spmv(K, Ku);
  const auto Mu = spmv(M, u);
  for (int i = 0; i < M.n_rows; ++i) y[i] = rho * y[i] + Mu[i];
  return y;
}

}  // namespace ellopt

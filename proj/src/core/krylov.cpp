#include "core/krylov.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "core/csr.hpp"

namespace ellopt {

int default_max_iterations(int n) {
  const int it = static_cast<int>(10.0 * std::sqrt(static_cast<double>(n))) + 500;
  return std::min(it, 20000);
}

namespace {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

std::vector<double> minres(const LinearOp& apply_op, const LinearOp& apply_prec,
                           const std::vector<double>& b, KrylovOptions options,
                           SolveStats& stats) {
  const Stopwatch timer;
  stats = SolveStats{};
  const std::size_t n = b.size();
  if (options.max_iterations <= 0) options.max_iterations = default_max_iterations(static_cast<int>(n));
  std::vector<double> x(n, 0.0);

  std::vector<double> v = b;  // unnormalized Lanczos vector
  std::vector<double> v_prev(n, 0.0);
  std::vector<double> z = apply_prec(v);
  const double gamma1_sq = dot(v, z);
  if (gamma1_sq < 0.0) throw std::runtime_error("minres: preconditioner is not positive definite");
  double gamma = std::sqrt(gamma1_sq);
  stats.initial_prec_residual = gamma;
  stats.final_prec_residual = gamma;
  if (gamma == 0.0) {
    stats.converged = true;
    stats.wall_seconds = timer.seconds();
    return x;
  }
  const double target = options.rtol * gamma;

  double gamma_prev = 1.0;
  double eta = gamma;
  double s_prev = 0.0, s = 0.0, c_prev = 1.0, c = 1.0;
  std::vector<double> w(n, 0.0), w_prev(n, 0.0);

  double prec_res = gamma;
  for (int it = 1; it <= options.max_iterations; ++it) {
    // Lanczos step on the C^-1-preconditioned operator
    for (std::size_t i = 0; i < n; ++i) z[i] /= gamma;
    const std::vector<double> Az = apply_op(z);
    const double delta = dot(Az, z);
    std::vector<double> v_next = Az;
    axpy(-delta / gamma, v, v_next);
    axpy(-gamma / gamma_prev, v_prev, v_next);
    std::vector<double> z_next = apply_prec(v_next);
    const double gamma_next_sq = dot(v_next, z_next);
    if (gamma_next_sq < 0.0) throw std::runtime_error("minres: preconditioner is not positive definite");
    const double gamma_next = std::sqrt(gamma_next_sq);

    // Givens rotation update of the tridiagonal QR
    const double alpha0 = c * delta - c_prev * s * gamma;
    const double alpha1 = std::sqrt(alpha0 * alpha0 + gamma_next * gamma_next);
    const double alpha2 = s * delta + c_prev * c * gamma;
    const double alpha3 = s_prev * gamma;
    if (alpha1 == 0.0) {
      stats.breakdown = true;
      break;
    }
    c_prev = c;
    s_prev = s;
    c = alpha0 / alpha1;
    s = gamma_next / alpha1;

    std::vector<double> w_next = z;
    axpy(-alpha3, w_prev, w_next);
    axpy(-alpha2, w, w_next);
    scale(w_next, 1.0 / alpha1);
    axpy(c * eta, w_next, x);
    eta = -s * eta;

    stats.iterations = it;
    const double new_res = std::abs(eta);
    if (new_res > prec_res * (1.0 + 1e-12)) stats.residual_monotone = false;
    prec_res = new_res;
    stats.final_prec_residual = prec_res;
    if (prec_res <= target) {
      stats.converged = true;
      break;
    }
    if (gamma_next < 1e-300) {  // Lanczos breakdown: Krylov space exhausted
      stats.breakdown = true;
      break;
    }

    w_prev = std::move(w);
    w = std::move(w_next);
    v_prev = std::move(v);
    v = std::move(v_next);
    z = std::move(z_next);
    gamma_prev = gamma;
    gamma = gamma_next;
  }
  stats.wall_seconds = timer.seconds();
  return x;
}

std::vector<double> pcg(const LinearOp& apply_op, const LinearOp& apply_prec,
                        const std::vector<double>& b, KrylovOptions options,
                        SolveStats& stats) {
  const Stopwatch timer;
  stats = SolveStats{};
  const std::size_t n = b.size();
  if (options.max_iterations <= 0) options.max_iterations = default_max_iterations(static_cast<int>(n));
  std::vector<double> x(n, 0.0);
  std::vector<double> r = b;
  std::vector<double> z = apply_prec(r);
  double rz = dot(r, z);
  if (rz < 0.0) throw std::runtime_error("pcg: preconditioner is not positive definite");
  double prec_res = std::sqrt(rz);
  stats.initial_prec_residual = prec_res;
  stats.final_prec_residual = prec_res;
  if (prec_res == 0.0) {
    stats.converged = true;
    stats.wall_seconds = timer.seconds();
    return x;
  }
  const double target = options.rtol * prec_res;

  std::vector<double> p = z;
  for (int it = 1; it <= options.max_iterations; ++it) {
    const std::vector<double> Ap = apply_op(p);
    const double pAp = dot(p, Ap);
    if (pAp <= 0.0) {
      stats.breakdown = true;  // operator not SPD on this direction
      break;
    }
    const double alpha = rz / pAp;
    axpy(alpha, p, x);
    axpy(-alpha, Ap, r);
    z = apply_prec(r);
    const double rz_new = dot(r, z);
    if (rz_new < 0.0) throw std::runtime_error("pcg: preconditioner is not positive definite");

    stats.iterations = it;
    const double new_res = std::sqrt(rz_new);
    if (new_res > prec_res * (1.0 + 1e-12)) stats.residual_monotone = false;
    prec_res = new_res;
    stats.final_prec_residual = prec_res;
    if (prec_res <= target) {
      stats.converged = true;
      break;
    }
    const double beta = rz_new / rz;
    rz = rz_new;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  stats.wall_seconds = timer.seconds();
  return x;
}

}  // namespace ellopt

#include "core/targets.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "core/quadrature.hpp"

namespace ellopt {

Target target_from_int(int id) {
  switch (id) {
    case 1: return Target::SmoothSine;
    case 2: return Target::Pyramid;
    case 3: return Target::CubeIndicator;
    case 4: return Target::ShiftedSine;
    default: throw std::invalid_argument("target must be 1, 2, 3 or 4");
  }
}

double evaluate_target(Target t, const std::array<double, 3>& x, int dim) {
  constexpr double pi = std::numbers::pi;
  switch (t) {
    case Target::SmoothSine: {
      double v = 1.0;
      for (int c = 0; c < dim; ++c) v *= std::sin(pi * x[c]);
      return v;
    }
    case Target::Pyramid: {
      double m = 0.0;
      for (int c = 0; c < dim; ++c) m = std::max(m, std::abs(x[c] - 0.5));
      return std::max(0.0, 1.0 - 2.0 * m);
    }
    case Target::CubeIndicator: {
      for (int c = 0; c < dim; ++c) {
        if (x[c] <= 0.25 || x[c] >= 0.75) return 0.0;
      }
      return 1.0;
    }
    case Target::ShiftedSine: {
      double v = 1.0;
      for (int c = 0; c < dim; ++c) v *= std::sin(pi * x[c]);
      return 1.0 + v;
    }
  }
  return 0.0;
}

double l2_error(const StructuredSimplicialMesh& mesh, const std::vector<double>& u_coeffs,
                Target t, int quad_order) {
  const auto full = mesh.expand_interior(u_coeffs);
  const auto& quad = simplex_quadrature(mesh.dim, quad_order);
  const int nv = mesh.dim + 1;
  double total = 0.0;
  for (int e = 0; e < mesh.n_simplices(); ++e) {
    const auto& s = mesh.simplices[e];
    const double vol = mesh.simplex_volume(e);
    double elem = 0.0;
    for (std::size_t q = 0; q < quad.weights.size(); ++q) {
      std::array<double, 3> x = {0.0, 0.0, 0.0};
      double uh = 0.0;
      for (int k = 0; k < nv; ++k) {
        const double lam = quad.barycentric[q][k];
        for (int c = 0; c < mesh.dim; ++c) x[c] += lam * mesh.vertices[s[k]][c];
        uh += lam * full[s[k]];
      }
      const double diff = uh - evaluate_target(t, x, mesh.dim);
      elem += quad.weights[q] * diff * diff;
    }
    total += vol * elem;
  }
  return std::sqrt(total);
}

double eoc(double e_coarse, double e_fine) {
  if (e_coarse <= 0.0 || e_fine <= 0.0) throw std::invalid_argument("eoc: errors must be positive");
  return std::log2(e_coarse / e_fine);
}

std::vector<double> nodal_interpolant(const StructuredSimplicialMesh& mesh, Target t) {
  std::vector<double> u(mesh.n_interior(), 0.0);
  for (int v = 0; v < mesh.n_vertices(); ++v) {
    const int i = mesh.interior_index[v];
    if (i >= 0) u[i] = evaluate_target(t, mesh.vertices[v], mesh.dim);
  }
  return u;
}

}  // namespace ellopt

// Independent dense assembly oracle. Deliberately avoids the production code
// paths: barycentric gradients come from a pivoted LU solve of the affine
// interpolation system (not the inverse-Jacobian formula), and mass entries
// are integrated by a degree-2 quadrature rule (exact for P1 products)
// instead of the closed-form element matrix. Assembles over all vertices so
// the full-matrix identities (partition of unity, zero stiffness row sums)
// can be checked before boundary elimination.
#pragma once

#include <array>
#include <vector>

#include "core/dense.hpp"
#include "core/mesh.hpp"
#include "core/quadrature.hpp"

namespace ellopt_test {

struct DenseAssembly {
  ellopt::DenseMatrix K_full;  // n_vertices x n_vertices
  ellopt::DenseMatrix M_full;
};

inline DenseAssembly oracle_assemble(const ellopt::StructuredSimplicialMesh& mesh) {
  const int d = mesh.dim;
  const int nv = mesh.n_vertices();
  DenseAssembly out{ellopt::DenseMatrix(nv, nv), ellopt::DenseMatrix(nv, nv)};
  const auto& quad = ellopt::simplex_quadrature(d, 2);
  for (int t = 0; t < mesh.n_simplices(); ++t) {
    const auto& simplex = mesh.simplices[t];
    const double vol = mesh.simplex_volume(t);
    // Coefficients of the barycentric functions lambda_k(x) = a_k + g_k . x,
    // obtained column by column from V c = e_k with V_ij = (1, x_i).
    ellopt::DenseMatrix V(d + 1, d + 1);
    for (int i = 0; i <= d; ++i) {
      V(i, 0) = 1.0;
      for (int j = 0; j < d; ++j) V(i, j + 1) = mesh.vertices[simplex[i]][j];
    }
    std::vector<std::array<double, 3>> grads(d + 1);
    for (int k = 0; k <= d; ++k) {
      std::vector<double> e(d + 1, 0.0);
      e[k] = 1.0;
      const auto coeff = ellopt::dense_solve(V, e);
      for (int j = 0; j < d; ++j) grads[k][j] = coeff[j + 1];
    }
    for (int a = 0; a <= d; ++a) {
      for (int b = 0; b <= d; ++b) {
        double gdot = 0.0;
        for (int j = 0; j < d; ++j) gdot += grads[a][j] * grads[b][j];
        out.K_full(simplex[a], simplex[b]) += vol * gdot;
        double mass = 0.0;
        for (std::size_t q = 0; q < quad.weights.size(); ++q) {
          mass += quad.weights[q] * quad.barycentric[q][a] * quad.barycentric[q][b];
        }
        out.M_full(simplex[a], simplex[b]) += vol * mass;
      }
    }
  }
  return out;
}

}  // namespace ellopt_test

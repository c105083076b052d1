#pragma once

#include <array>
#include <string>

#include "core/mesh.hpp"

namespace ellopt {

// The four benchmark desired states on (0,1)^d. T1 and T2 vanish on the
// boundary, T3 is a cube indicator, T4 is a sine shifted to violate the
// homogeneous Dirichlet condition.
enum class Target {
  SmoothSine = 1,    // prod_i sin(pi x_i)
  Pyramid = 2,       // max(0, 1 - 2 max_i |x_i - 1/2|)
  CubeIndicator = 3, // 1 on (1/4,3/4)^d, 0 elsewhere
  ShiftedSine = 4,   // 1 + prod_i sin(pi x_i)
};

Target target_from_int(int id);

double evaluate_target(Target t, const std::array<double, 3>& x, int dim);

// || u_h - target ||_{L^2} by per-element quadrature; u_coeffs lives on
// interior dofs, the boundary trace of u_h is zero.
double l2_error(const StructuredSimplicialMesh& mesh, const std::vector<double>& u_coeffs,
                Target t, int quad_order = 4);

// Experimental order of convergence between two consecutive levels.
double eoc(double e_coarse, double e_fine);

// Nodal interpolant of the target on interior dofs.
std::vector<double> nodal_interpolant(const StructuredSimplicialMesh& mesh, Target t);

}  // namespace ellopt

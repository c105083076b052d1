#pragma once

#include <array>
#include <vector>

namespace ellopt {

// Symmetric quadrature rule on the reference simplex, given in barycentric
// coordinates (d+1 entries per point). Weights sum to one and are applied
// against the physical simplex measure.
struct SimplexQuadrature {
  std::vector<std::array<double, 4>> barycentric;
  std::vector<double> weights;
};

// order 1: centroid; order 2: degree-2 rules; order 4: degree >= 4 rules
// (6-point Dunavant for triangles, 14-point Keast for tetrahedra).
const SimplexQuadrature& simplex_quadrature(int dim, int order);

}  // namespace ellopt

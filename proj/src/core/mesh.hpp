#pragma once

#include <array>
#include <string>
#include <vector>

#include "core/csr.hpp"

namespace ellopt {

// Structured simplicial mesh of the unit hypercube (0,1)^d, d in {2,3}.
// Level l has 2^(l+1) cells per axis, mesh size h = 2^-(l+1), and each cell
// is split into d! simplices along coordinate orderings (Kuhn/Freudenthal),
// giving 6 tetrahedra per cube and 2 triangles per square.
//
// Vertices are ordered lexicographically by (z,y,x) with x fastest; the
// interior-dof numbering inherits this order, which also fixes the
// Gauss-Seidel sweep order used by the multigrid smoother.
struct StructuredSimplicialMesh {
  int dim = 0;
  int level = 0;
  int n_per_axis = 0;  // vertices per axis = 2^(level+1) + 1
  double h = 0.0;      // 2^-(level+1)
  std::vector<std::array<double, 3>> vertices;       // z coord is 0 for d=2
  std::vector<std::array<int, 4>> simplices;         // last entry unused for d=2
  std::vector<bool> is_boundary;
  std::vector<int> interior_index;                   // -1 for boundary vertices

  int n_vertices() const { return static_cast<int>(vertices.size()); }
  int n_simplices() const { return static_cast<int>(simplices.size()); }
  int n_interior() const { return n_interior_; }
  int n_interior_ = 0;

  double simplex_volume(int t) const;
  // Expands interior coefficients to a full per-vertex vector (zero on the boundary).
  std::vector<double> expand_interior(const std::vector<double>& u_int) const;
};

StructuredSimplicialMesh build_mesh(int dim, int level);

// Nested hierarchy with canonical P1 interpolation transfer between the
// interior dofs of consecutive levels. prolongations[k] maps level k+1 coarse
// dofs to level k+2 fine dofs.
struct MeshHierarchy {
  std::vector<StructuredSimplicialMesh> meshes;  // levels 1..max_level
  std::vector<CsrMatrix> prolongations;          // size max_level - 1
};

MeshHierarchy build_hierarchy(int dim, int max_level);

// Plain-text dump, one entity per line, for visual inspection.
void dump_mesh(const StructuredSimplicialMesh& mesh, const std::string& path);

}  // namespace ellopt

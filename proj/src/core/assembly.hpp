#pragma once

#include <vector>

#include "core/csr.hpp"
#include "core/mesh.hpp"
#include "core/targets.hpp"

namespace ellopt {

enum class DiagVariant { Diag, Lump, Area };

DiagVariant diag_variant_from_string(const std::string& s);

// Everything a solver needs on one level: matrices on interior dofs, the
// three diagonal mass surrogates, the load vector, and the rho coupling.
struct AssembledProblem {
  CsrMatrix K;                  // stiffness
  CsrMatrix M;                  // consistent mass
  std::vector<double> m_diag;   // diag(M)
  std::vector<double> m_lump;   // full-matrix row sums at interior rows
  std::vector<double> m_area;   // support measure of each basis function
  std::vector<double> f;        // load for the chosen target
  double h = 0.0;
  double rho = 0.0;
};

// K[l,k] = int grad(phi_k) . grad(phi_l); exact per-element formula from
// constant P1 gradients, interior dofs only. Throws on degenerate elements.
CsrMatrix assemble_stiffness(const StructuredSimplicialMesh& mesh);

// M[l,k] = int phi_k phi_l; exact element matrix |T| (1 + delta_ij) / ((d+1)(d+2)).
CsrMatrix assemble_mass(const StructuredSimplicialMesh& mesh);

std::vector<double> mass_diagonal(const CsrMatrix& M, const StructuredSimplicialMesh& mesh,
                                  DiagVariant variant);

// f_l = int target phi_l by symmetric simplex quadrature of the given order.
std::vector<double> assemble_load(const StructuredSimplicialMesh& mesh, Target target,
                                  int quad_order = 4);

AssembledProblem assemble_problem(const StructuredSimplicialMesh& mesh, Target target,
                                  double rho, int quad_order = 4);

}  // namespace ellopt

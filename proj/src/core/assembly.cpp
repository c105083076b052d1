#include "core/assembly.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "core/quadrature.hpp"

namespace ellopt {

DiagVariant diag_variant_from_string(const std::string& s) {
  if (s == "diag") return DiagVariant::Diag;
  if (s == "lump") return DiagVariant::Lump;
  if (s == "area") return DiagVariant::Area;
  throw std::invalid_argument("diag variant must be diag, lump or area");
}

namespace {

// Constant P1 gradients on a simplex: grad lambda_k, k = 0..d.
void p1_gradients(const StructuredSimplicialMesh& mesh, int elem,
                  std::array<std::array<double, 3>, 4>& grads, double& volume) {
  const int d = mesh.dim;
  const auto& s = mesh.simplices[elem];
  volume = mesh.simplex_volume(elem);
  if (volume <= 0.0) throw std::runtime_error("assembly: degenerate element");
  if (d == 2) {
    const auto& p0 = mesh.vertices[s[0]];
    const auto& p1 = mesh.vertices[s[1]];
    const auto& p2 = mesh.vertices[s[2]];
    const double twoA = 2.0 * volume;
    grads[0] = {(p1[1] - p2[1]) / twoA, (p2[0] - p1[0]) / twoA, 0.0};
    grads[1] = {(p2[1] - p0[1]) / twoA, (p0[0] - p2[0]) / twoA, 0.0};
    grads[2] = {(p0[1] - p1[1]) / twoA, (p1[0] - p0[0]) / twoA, 0.0};
    return;
  }
  // grad lambda_{k+1} is row k of inv(B)^T with B = [p1-p0, p2-p0, p3-p0].
  double B[3][3];
  for (int k = 0; k < 3; ++k) {
    for (int c = 0; c < 3; ++c) B[c][k] = mesh.vertices[s[k + 1]][c] - mesh.vertices[s[0]][c];
  }
  const double det = 6.0 * volume;
  double inv[3][3];
  inv[0][0] = (B[1][1] * B[2][2] - B[1][2] * B[2][1]) / det;
  inv[0][1] = (B[0][2] * B[2][1] - B[0][1] * B[2][2]) / det;
  inv[0][2] = (B[0][1] * B[1][2] - B[0][2] * B[1][1]) / det;
  inv[1][0] = (B[1][2] * B[2][0] - B[1][0] * B[2][2]) / det;
  inv[1][1] = (B[0][0] * B[2][2] - B[0][2] * B[2][0]) / det;
  inv[1][2] = (B[0][2] * B[1][0] - B[0][0] * B[1][2]) / det;
  inv[2][0] = (B[1][0] * B[2][1] - B[1][1] * B[2][0]) / det;
  inv[2][1] = (B[0][1] * B[2][0] - B[0][0] * B[2][1]) / det;
  inv[2][2] = (B[0][0] * B[1][1] - B[0][1] * B[1][0]) / det;
  for (int k = 0; k < 3; ++k) grads[k + 1] = {inv[k][0], inv[k][1], inv[k][2]};
  grads[0] = {-grads[1][0] - grads[2][0] - grads[3][0],
              -grads[1][1] - grads[2][1] - grads[3][1],
              -grads[1][2] - grads[2][2] - grads[3][2]};
}

template <typename ElementMatrix>
CsrMatrix assemble_interior(const StructuredSimplicialMesh& mesh, ElementMatrix&& element) {
  const int n = mesh.n_interior();
  const int nv = mesh.dim + 1;
  std::vector<std::vector<std::pair<int, double>>> rows(n);
  std::array<std::array<double, 4>, 4> Ke;
  for (int e = 0; e < mesh.n_simplices(); ++e) {
    element(e, Ke);
    const auto& s = mesh.simplices[e];
    for (int a = 0; a < nv; ++a) {
      const int i = mesh.interior_index[s[a]];
      if (i < 0) continue;
      for (int b = 0; b < nv; ++b) {
        const int j = mesh.interior_index[s[b]];
        if (j < 0) continue;
        rows[i].emplace_back(j, Ke[a][b]);
      }
    }
  }
  return csr_from_rows(n, n, rows);
}

}  // namespace

CsrMatrix assemble_stiffness(const StructuredSimplicialMesh& mesh) {
  const int nv = mesh.dim + 1;
  return assemble_interior(mesh, [&](int e, std::array<std::array<double, 4>, 4>& Ke) {
    std::array<std::array<double, 3>, 4> g;
    double vol = 0.0;
    p1_gradients(mesh, e, g, vol);
    for (int a = 0; a < nv; ++a) {
      for (int b = 0; b < nv; ++b) {
        Ke[a][b] = vol * (g[a][0] * g[b][0] + g[a][1] * g[b][1] + g[a][2] * g[b][2]);
      }
    }
  });
}

CsrMatrix assemble_mass(const StructuredSimplicialMesh& mesh) {
  const int nv = mesh.dim + 1;
  const double denom = (mesh.dim + 1) * (mesh.dim + 2);
  return assemble_interior(mesh, [&](int e, std::array<std::array<double, 4>, 4>& Me) {
    const double vol = mesh.simplex_volume(e);
    if (vol <= 0.0) throw std::runtime_error("assembly: degenerate element");
    for (int a = 0; a < nv; ++a) {
      for (int b = 0; b < nv; ++b) Me[a][b] = vol * (a == b ? 2.0 : 1.0) / denom;
    }
  });
}

std::vector<double> mass_diagonal(const CsrMatrix& M, const StructuredSimplicialMesh& mesh,
                                  DiagVariant variant) {
  const int n = mesh.n_interior();
  std::vector<double> d(n, 0.0);
  switch (variant) {
    case DiagVariant::Diag:
      d = csr_diagonal(M);
      break;
    case DiagVariant::Lump: {
      // Row sums of the full (pre-elimination) mass matrix: each incident
      // element contributes |T| / (d+1).
      const double share = 1.0 / (mesh.dim + 1);
      for (int e = 0; e < mesh.n_simplices(); ++e) {
        const double vol = mesh.simplex_volume(e);
        for (int a = 0; a <= mesh.dim; ++a) {
          const int i = mesh.interior_index[mesh.simplices[e][a]];
          if (i >= 0) d[i] += vol * share;
        }
      }
      break;
    }
    case DiagVariant::Area:
      for (int e = 0; e < mesh.n_simplices(); ++e) {
        const double vol = mesh.simplex_volume(e);
        for (int a = 0; a <= mesh.dim; ++a) {
          const int i = mesh.interior_index[mesh.simplices[e][a]];
          if (i >= 0) d[i] += vol;
        }
      }
      break;
  }
  for (const double v : d) {
    if (!(v > 0.0)) throw std::runtime_error("mass_diagonal: non-positive entry");
  }
  return d;
}

std::vector<double> assemble_load(const StructuredSimplicialMesh& mesh, Target target,
                                  int quad_order) {
  const auto& quad = simplex_quadrature(mesh.dim, quad_order);
  const int nv = mesh.dim + 1;
  std::vector<double> f(mesh.n_interior(), 0.0);
  for (int e = 0; e < mesh.n_simplices(); ++e) {
    const auto& s = mesh.simplices[e];
    const double vol = mesh.simplex_volume(e);
    std::array<double, 4> fe = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t q = 0; q < quad.weights.size(); ++q) {
      std::array<double, 3> x = {0.0, 0.0, 0.0};
      for (int k = 0; k < nv; ++k) {
        for (int c = 0; c < mesh.dim; ++c) x[c] += quad.barycentric[q][k] * mesh.vertices[s[k]][c];
      }
      const double val = quad.weights[q] * evaluate_target(target, x, mesh.dim);
      for (int k = 0; k < nv; ++k) fe[k] += val * quad.barycentric[q][k];
    }
    for (int k = 0; k < nv; ++k) {
      const int i = mesh.interior_index[s[k]];
      if (i >= 0) f[i] += vol * fe[k];
    }
  }
  return f;
}

AssembledProblem assemble_problem(const StructuredSimplicialMesh& mesh, Target target,
                                  double rho, int quad_order) {
  AssembledProblem p;
  p.K = assemble_stiffness(mesh);
  p.M = assemble_mass(mesh);
  p.m_diag = mass_diagonal(p.M, mesh, DiagVariant::Diag);
  p.m_lump = mass_diagonal(p.M, mesh, DiagVariant::Lump);
  p.m_area = mass_diagonal(p.M, mesh, DiagVariant::Area);
  p.f = assemble_load(mesh, target, quad_order);
  p.h = mesh.h;
  p.rho = rho;
  return p;
}

}  // namespace ellopt

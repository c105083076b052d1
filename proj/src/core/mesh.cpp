#include "core/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace ellopt {

namespace {

int vertex_id(int n, int ix, int iy, int iz) { return (iz * n + iy) * n + ix; }

// All permutations of {0,..,dim-1} in lexicographic order, with parity.
std::vector<std::pair<std::array<int, 3>, int>> axis_permutations(int dim) {
  std::vector<std::pair<std::array<int, 3>, int>> perms;
  std::array<int, 3> p = {0, 1, 2};
  std::vector<int> idx(p.begin(), p.begin() + dim);
  do {
    int parity = 1;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      for (std::size_t j = i + 1; j < idx.size(); ++j) {
        if (idx[i] > idx[j]) parity = -parity;
      }
    }
    std::array<int, 3> a = {0, 0, 0};
    std::copy(idx.begin(), idx.end(), a.begin());
    perms.emplace_back(a, parity);
  } while (std::next_permutation(idx.begin(), idx.end()));
  return perms;
}

}  // namespace

double StructuredSimplicialMesh::simplex_volume(int t) const {
  const auto& s = simplices[t];
  const auto& v0 = vertices[s[0]];
  if (dim == 2) {
    const double ax = vertices[s[1]][0] - v0[0], ay = vertices[s[1]][1] - v0[1];
    const double bx = vertices[s[2]][0] - v0[0], by = vertices[s[2]][1] - v0[1];
    return 0.5 * (ax * by - ay * bx);
  }
  double e[3][3];
  for (int k = 0; k < 3; ++k) {
    for (int c = 0; c < 3; ++c) e[k][c] = vertices[s[k + 1]][c] - v0[c];
  }
  const double det = e[0][0] * (e[1][1] * e[2][2] - e[1][2] * e[2][1]) -
                     e[0][1] * (e[1][0] * e[2][2] - e[1][2] * e[2][0]) +
                     e[0][2] * (e[1][0] * e[2][1] - e[1][1] * e[2][0]);
  return det / 6.0;
}

std::vector<double> StructuredSimplicialMesh::expand_interior(const std::vector<double>& u_int) const {
  if (static_cast<int>(u_int.size()) != n_interior_) throw std::invalid_argument("expand_interior: size mismatch");
  std::vector<double> full(vertices.size(), 0.0);
  for (int v = 0; v < n_vertices(); ++v) {
    if (interior_index[v] >= 0) full[v] = u_int[interior_index[v]];
  }
  return full;
}

StructuredSimplicialMesh build_mesh(int dim, int level) {
  if (dim != 2 && dim != 3) throw std::invalid_argument("build_mesh: dim must be 2 or 3");
  if (level < 1) throw std::invalid_argument("build_mesh: level must be >= 1");

  StructuredSimplicialMesh m;
  m.dim = dim;
  m.level = level;
  const int cells = 1 << (level + 1);
  m.n_per_axis = cells + 1;
  m.h = 1.0 / cells;
  const int n = m.n_per_axis;
  const int nz = (dim == 3) ? n : 1;

  m.vertices.reserve(static_cast<std::size_t>(n) * n * nz);
  for (int iz = 0; iz < nz; ++iz) {
    for (int iy = 0; iy < n; ++iy) {
      for (int ix = 0; ix < n; ++ix) {
        m.vertices.push_back({ix * m.h, iy * m.h, (dim == 3) ? iz * m.h : 0.0});
      }
    }
  }

  m.is_boundary.assign(m.vertices.size(), false);
  m.interior_index.assign(m.vertices.size(), -1);
  int next_interior = 0;
  for (int iz = 0; iz < nz; ++iz) {
    for (int iy = 0; iy < n; ++iy) {
      for (int ix = 0; ix < n; ++ix) {
        const int v = (dim == 3) ? vertex_id(n, ix, iy, iz) : iy * n + ix;
        const bool bdry = ix == 0 || ix == n - 1 || iy == 0 || iy == n - 1 ||
                          (dim == 3 && (iz == 0 || iz == n - 1));
        m.is_boundary[v] = bdry;
        if (!bdry) m.interior_index[v] = next_interior++;
      }
    }
  }
  m.n_interior_ = next_interior;

  const auto perms = axis_permutations(dim);
  const int cz = (dim == 3) ? cells : 1;
  for (int iz = 0; iz < cz; ++iz) {
    for (int iy = 0; iy < cells; ++iy) {
      for (int ix = 0; ix < cells; ++ix) {
        std::array<int, 3> corner = {ix, iy, iz};
        for (const auto& [perm, parity] : perms) {
          std::array<int, 4> simplex = {0, 0, 0, 0};
          std::array<int, 3> pos = corner;
          auto id_of = [&](const std::array<int, 3>& p) {
            return (dim == 3) ? vertex_id(n, p[0], p[1], p[2]) : p[1] * n + p[0];
          };
          simplex[0] = id_of(pos);
          for (int k = 0; k < dim; ++k) {
            pos[perm[k]] += 1;
            simplex[k + 1] = id_of(pos);
          }
          // Odd permutations yield negative orientation; swap the last two
          // vertices to keep all signed volumes positive.
          if (parity < 0) std::swap(simplex[dim - 1], simplex[dim]);
          m.simplices.push_back(simplex);
        }
      }
    }
  }
  for (int t = 0; t < m.n_simplices(); ++t) {
    if (m.simplex_volume(t) <= 0.0) throw std::runtime_error("build_mesh: non-positive simplex volume");
  }
  return m;
}

namespace {

CsrMatrix build_prolongation(const StructuredSimplicialMesh& coarse,
                             const StructuredSimplicialMesh& fine) {
  const int dim = fine.dim;
  const int nf = fine.n_per_axis;
  const int nc = coarse.n_per_axis;
  std::vector<std::vector<std::pair<int, double>>> rows(fine.n_interior());
  const int nz = (dim == 3) ? nf : 1;
  for (int iz = 0; iz < nz; ++iz) {
    for (int iy = 0; iy < nf; ++iy) {
      for (int ix = 0; ix < nf; ++ix) {
        const int v = (dim == 3) ? (iz * nf + iy) * nf + ix : iy * nf + ix;
        const int row = fine.interior_index[v];
        if (row < 0) continue;
        const std::array<int, 3> idx = {ix, iy, iz};
        std::array<int, 3> lo = {idx[0] / 2, idx[1] / 2, idx[2] / 2};
        std::array<int, 3> hi = lo;
        bool any_odd = false;
        for (int c = 0; c < dim; ++c) {
          if (idx[c] % 2 != 0) {
            hi[c] += 1;
            any_odd = true;
          }
        }
        auto coarse_interior = [&](const std::array<int, 3>& p) {
          const int cv = (dim == 3) ? (p[2] * nc + p[1]) * nc + p[0] : p[1] * nc + p[0];
          return coarse.interior_index[cv];
        };
        if (!any_odd) {
          rows[row].emplace_back(coarse_interior(lo), 1.0);
        } else {
          // Fine vertex is the midpoint of the coarse edge lo--hi; lo and hi
          // are componentwise comparable, hence an edge of the Kuhn mesh.
          const int a = coarse_interior(lo);
          const int b = coarse_interior(hi);
          if (a >= 0) rows[row].emplace_back(a, 0.5);
          if (b >= 0) rows[row].emplace_back(b, 0.5);
        }
      }
    }
  }
  return csr_from_rows(fine.n_interior(), coarse.n_interior(), rows);
}

}  // namespace

MeshHierarchy build_hierarchy(int dim, int max_level) {
  if (max_level < 1) throw std::invalid_argument("build_hierarchy: max_level must be >= 1");
  MeshHierarchy hier;
  for (int l = 1; l <= max_level; ++l) hier.meshes.push_back(build_mesh(dim, l));
  for (int l = 0; l + 1 < max_level; ++l) {
    hier.prolongations.push_back(build_prolongation(hier.meshes[l], hier.meshes[l + 1]));
  }
  return hier;
}

void dump_mesh(const StructuredSimplicialMesh& mesh, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os << "# vertices " << mesh.n_vertices() << "\n";
  for (const auto& v : mesh.vertices) {
    os << v[0] << " " << v[1];
    if (mesh.dim == 3) os << " " << v[2];
    os << "\n";
  }
  os << "# simplices " << mesh.n_simplices() << "\n";
  for (const auto& s : mesh.simplices) {
    for (int k = 0; k <= mesh.dim; ++k) os << s[k] << (k == mesh.dim ? '\n' : ' ');
  }
}

}  // namespace ellopt

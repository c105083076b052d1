#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "core/assembly.hpp"
#include "core/csr.hpp"
#include "core/mesh.hpp"
#include "oracle_assembly.hpp"

using namespace ellopt;

namespace {

// Compares the production interior matrices entrywise against the dense
// oracle restricted to interior vertices.
void check_against_oracle(int dim) {
  const auto mesh = build_mesh(dim, 1);
  const auto K = assemble_stiffness(mesh);
  const auto M = assemble_mass(mesh);
  const auto oracle = ellopt_test::oracle_assemble(mesh);
  REQUIRE(K.n_rows == mesh.n_interior());
  REQUIRE(M.n_rows == mesh.n_interior());
  for (int a = 0; a < mesh.n_vertices(); ++a) {
    if (mesh.is_boundary[a]) continue;
    for (int b = 0; b < mesh.n_vertices(); ++b) {
      if (mesh.is_boundary[b]) continue;
      const int i = mesh.interior_index[a];
      const int j = mesh.interior_index[b];
      CHECK(std::abs(K(i, j) - oracle.K_full(a, b)) <= 1e-13 * (1.0 + std::abs(oracle.K_full(a, b))));
      CHECK(std::abs(M(i, j) - oracle.M_full(a, b)) <= 1e-13 * (1.0 + std::abs(oracle.M_full(a, b))));
    }
  }
}

}  // namespace

TEST_CASE("interior assembly matches the independent dense oracle") {
  check_against_oracle(2);
  check_against_oracle(3);
}

TEST_CASE("full-matrix identities: partition of unity and constant kernel") {
  for (int dim : {2, 3}) {
    const auto mesh = build_mesh(dim, 1);
    const auto oracle = ellopt_test::oracle_assemble(mesh);
    double mass_sum = 0.0;
    for (int a = 0; a < mesh.n_vertices(); ++a) {
      double k_row = 0.0;
      for (int b = 0; b < mesh.n_vertices(); ++b) {
        mass_sum += oracle.M_full(a, b);
        k_row += oracle.K_full(a, b);
      }
      CHECK(std::abs(k_row) <= 1e-12);  // K annihilates constants
    }
    CHECK(mass_sum == doctest::Approx(1.0).epsilon(1e-12));  // sum phi_i = 1
  }
}

TEST_CASE("mass diagonal variants on the structured d=3 mesh") {
  const auto mesh = build_mesh(3, 2);
  const auto M = assemble_mass(mesh);
  const double h3 = mesh.h * mesh.h * mesh.h;
  const auto lump = mass_diagonal(M, mesh, DiagVariant::Lump);
  const auto diag = mass_diagonal(M, mesh, DiagVariant::Diag);
  const auto area = mass_diagonal(M, mesh, DiagVariant::Area);
  REQUIRE(static_cast<int>(lump.size()) == mesh.n_interior());
  for (int i = 0; i < mesh.n_interior(); ++i) {
    // Row sums of the full mass matrix: every interior basis function
    // integrates to h^3 on this mesh regardless of its element valence.
    CHECK(lump[i] == doctest::Approx(h3).epsilon(1e-12));
    CHECK(diag[i] == doctest::Approx(M(i, i)).epsilon(1e-15));
    CHECK(area[i] > lump[i]);  // support measure dominates the integral
    CHECK(diag[i] < lump[i]);
  }
}

TEST_CASE("lumped diagonal dominates the consistent mass in quadratic form") {
  const auto mesh = build_mesh(3, 1);
  const auto M = assemble_mass(mesh);
  const auto lump = mass_diagonal(M, mesh, DiagVariant::Lump);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int s = 0; s < 50; ++s) {
    std::vector<double> v(M.n_rows);
    for (double& x : v) x = unif(rng);
    const auto Mv = spmv(M, v);
    double vMv = dot(v, Mv), vDv = 0.0;
    for (int i = 0; i < M.n_rows; ++i) vDv += lump[i] * v[i] * v[i];
    CHECK(vMv <= vDv * (1.0 + 1e-13));
    CHECK(vMv > 0.0);
  }
}

TEST_CASE("mass Rayleigh quotients scale like h^d") {
  // (M v, v)/(v, v) in [c h^d, C h^d] with level-independent constants.
  for (int dim : {2, 3}) {
    double prev_lo = 0.0, prev_hi = 0.0;
    for (int level : {1, 2}) {
      const auto mesh = build_mesh(dim, level);
      const auto M = assemble_mass(mesh);
      const double hd = std::pow(mesh.h, dim);
      std::mt19937_64 rng(11);
      std::uniform_real_distribution<double> unif(-1.0, 1.0);
      double lo = 1e300, hi = 0.0;
      for (int s = 0; s < 100; ++s) {
        std::vector<double> v(M.n_rows);
        for (double& x : v) x = unif(rng);
        const double q = dot(v, spmv(M, v)) / dot(v, v) / hd;
        lo = std::min(lo, q);
        hi = std::max(hi, q);
      }
      CHECK(lo > 0.01);
      CHECK(hi < 10.0);
      if (level == 2) {
        CHECK(hi / prev_hi < 2.0);
        CHECK(prev_lo / lo < 2.0);
      }
      prev_lo = lo;
      prev_hi = hi;
    }
  }
}

TEST_CASE("piecewise-constant target load is quadrature-order independent") {
  // Target 3 is constant on every element of the aligned mesh, so any rule
  // integrates it exactly.
  const auto mesh = build_mesh(3, 1);
  const auto f1 = assemble_load(mesh, Target::CubeIndicator, 1);
  const auto f2 = assemble_load(mesh, Target::CubeIndicator, 2);
  const auto f4 = assemble_load(mesh, Target::CubeIndicator, 4);
  REQUIRE(f1.size() == f4.size());
  for (std::size_t i = 0; i < f4.size(); ++i) {
    CHECK(std::abs(f2[i] - f4[i]) <= 1e-14);
    CHECK(std::abs(f1[i] - f4[i]) <= 1e-14);
  }
}

TEST_CASE("smooth load converges with quadrature order") {
  const auto mesh = build_mesh(3, 2);
  const auto f2 = assemble_load(mesh, Target::SmoothSine, 2);
  const auto f4 = assemble_load(mesh, Target::SmoothSine, 4);
  double diff = 0.0, norm = 0.0;
  for (std::size_t i = 0; i < f4.size(); ++i) {
    diff += (f2[i] - f4[i]) * (f2[i] - f4[i]);
    norm += f4[i] * f4[i];
  }
  CHECK(std::sqrt(diff / norm) < 1e-3);
  CHECK(std::sqrt(diff) > 0.0);  // the orders genuinely differ
}

TEST_CASE("assemble_problem wires the pieces together") {
  const auto mesh = build_mesh(3, 1);
  const auto p = assemble_problem(mesh, Target::SmoothSine, 1e-4);
  CHECK(p.K.n_rows == 27);
  CHECK(p.M.n_rows == 27);
  CHECK(p.h == mesh.h);
  CHECK(p.rho == 1e-4);
  CHECK(p.f.size() == 27);
  CHECK(p.m_diag.size() == 27);
  CHECK(p.m_lump.size() == 27);
  CHECK(p.m_area.size() == 27);
}

TEST_CASE("diag_variant_from_string") {
  CHECK(diag_variant_from_string("lump") == DiagVariant::Lump);
  CHECK(diag_variant_from_string("diag") == DiagVariant::Diag);
  CHECK(diag_variant_from_string("area") == DiagVariant::Area);
  CHECK_THROWS_AS(diag_variant_from_string("mass"), std::invalid_argument);
}

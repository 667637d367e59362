#include "doubling/homology.hpp"
#include "doubling/smith.hpp"
#include "doubling/tupling.hpp"
#include "oracles.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace doubling;

namespace {

// Six-vertex real projective plane.
SimplicialComplex rp2() {
  return SimplicialComplex::from_facets({{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5},
                                         {1, 2, 4}, {2, 3, 5}, {1, 3, 4}, {1, 3, 5}, {2, 4, 5}});
}

oracle::Dense dense_of(const SparseMatrix& m) {
  oracle::Dense d(m.rows, std::vector<mpz_class>(m.cols, 0));
  for (std::size_t c = 0; c < m.cols; ++c) {
    for (const auto& [r, v] : m.columns[c]) d[r][c] = static_cast<long>(v);
  }
  return d;
}

SparseMatrix random_sparse(std::mt19937& rng, std::size_t rows, std::size_t cols, double density, int range) {
  std::vector<std::vector<std::int64_t>> d(rows, std::vector<std::int64_t>(cols, 0));
  std::uniform_real_distribution<double> coin(0, 1);
  std::uniform_int_distribution<int> value(-range, range);
  for (auto& row : d) {
    for (auto& v : row) {
      if (coin(rng) < density) v = value(rng);
    }
  }
  return SparseMatrix::from_dense(d);
}

// Random unimodular matrix: a product of elementary operations.
std::vector<std::vector<std::int64_t>> random_unimodular(std::mt19937& rng, std::size_t n) {
  std::vector<std::vector<std::int64_t>> u(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_int_distribution<int> small(-1, 1);
  for (int step = 0; step < 3 * static_cast<int>(n); ++step) {
    const auto a = idx(rng);
    const auto b = idx(rng);
    if (a == b) continue;
    const int k = small(rng);
    for (std::size_t c = 0; c < n; ++c) u[a][c] += k * u[b][c];
    if (step % 7 == 0) std::swap(u[a], u[b]);
  }
  return u;
}

std::vector<mpz_class> full_diagonal(const SmithForm& s) { return s.invariant_factors(); }

}  // namespace

TEST_SUITE("homology") {

TEST_CASE("boundary squares to zero on constructed complexes") {
  std::vector<SimplicialComplex> complexes{simplex_complex(5), boundary_complex(5), rp2(),
                                           r_tuple(simplex_complex(6), 2).complex,
                                           matching_complex(complete_graph(6)).complex,
                                           barycentric(boundary_complex(3)).complex};
  for (const auto& x : complexes) {
    for (int p = 1; p <= x.dim(); ++p) {
      CHECK(multiply(boundary_matrix(x, p - 1), boundary_matrix(x, p)).is_zero());
    }
    CHECK_NOTHROW(ChainComplex::of(x));
  }
}

TEST_CASE("chain complex rejects a bad composite") {
  SparseMatrix aug(1, 2);
  aug.columns[0] = {{0, 1}};
  aug.columns[1] = {{0, 1}};
  SparseMatrix d1(2, 1);
  d1.columns[0] = {{0, 1}, {1, 1}};
  CHECK_THROWS_AS(ChainComplex({2, 1}, {aug, d1}), InvalidInput);
  CHECK_THROWS_AS(ChainComplex({2}, {SparseMatrix(1, 3)}), InvalidInput);
}

TEST_CASE("spheres, projective plane and a torsion witness") {
  for (int n = 1; n <= 5; ++n) {
    const auto h = reduced_homology_all(ChainComplex::of(boundary_complex(n)));
    REQUIRE(h.size() == static_cast<std::size_t>(n));
    for (int p = 0; p < n - 1; ++p) CHECK(h[p].is_zero());
    CHECK(h[n - 1].free_rank == 1);
    CHECK(h[n - 1].torsion.empty());
  }
  const auto h = reduced_homology_all(ChainComplex::of(rp2()));
  CHECK(h[0].is_zero());
  CHECK(h[1].free_rank == 0);
  REQUIRE(h[1].torsion.size() == 1);
  CHECK(h[1].torsion[0] == 2);
  CHECK(h[2].is_zero());
  // over F_2 the torsion shows up in degrees 1 and 2
  CHECK(reduced_betti_mod_p(ChainComplex::of(rp2()), 2) == std::vector<std::size_t>{0, 1, 1});
  CHECK(reduced_betti_mod_p(ChainComplex::of(rp2()), 3) == std::vector<std::size_t>{0, 0, 0});
}

TEST_CASE("homology agrees with the dense oracle") {
  std::mt19937 rng(19);
  for (int trial = 0; trial < 40; ++trial) {
    const auto facets = test::random_facets(rng, 7, 8, 4);
    const auto x = test::from_sets(facets);
    const auto fam = oracle::closure(facets);
    const auto h = reduced_homology_all(ChainComplex::of(x));
    REQUIRE(h.size() == static_cast<std::size_t>(x.dim() + 1));
    long long euler = 0;
    long long betti = 0;
    for (int p = 0; p <= x.dim(); ++p) {
      const auto o = oracle::homology(fam, p);
      CHECK(h[p].free_rank == o.free_rank);
      CHECK(h[p].torsion == o.torsion);
      euler += (p % 2 == 0 ? 1 : -1) * static_cast<long long>(x.faces(p).size());
      betti += (p % 2 == 0 ? 1 : -1) * static_cast<long long>(h[p].free_rank);
    }
    // reduced Euler characteristic
    CHECK(euler - 1 == betti);
  }
}

TEST_CASE("matching complex of K7 has 3-torsion") {
  const auto m = matching_complex(complete_graph(7));
  const auto chains = ChainComplex::of(m.complex);
  const auto h = reduced_homology_all(chains);
  CHECK(h[0].is_zero());
  CHECK(h[1].free_rank == 0);
  REQUIRE(h[1].torsion.size() == 1);
  CHECK(h[1].torsion[0] == 3);
  const auto b2 = reduced_betti_mod_p(chains, 2);
  const auto b3 = reduced_betti_mod_p(chains, 3);
  CHECK(b2[1] == 0);
  CHECK(b3[1] == 1);
}

TEST_CASE("smith form agrees with the dense oracle") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    const auto m = random_sparse(rng, 1 + trial % 9, 1 + (trial * 7) % 11, 0.4, 6);
    const auto snf = smith_normal_form(m);
    const auto diag = oracle::snf_diagonal(dense_of(m));
    CHECK(full_diagonal(snf) == diag);
    CHECK(snf.rank == oracle::rank_q(dense_of(m)));
    for (std::uint32_t p : {2u, 3u, 5u, 7u}) CHECK(rank_mod_p(m, p) == oracle::rank_mod(dense_of(m), p));
  }
}

TEST_CASE("smith form is invariant under unimodular scrambling") {
  std::mt19937 rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    const auto m = random_sparse(rng, 20, 20, 0.15, 3);
    const auto u = SparseMatrix::from_dense(random_unimodular(rng, 20));
    const auto v = SparseMatrix::from_dense(random_unimodular(rng, 20));
    const auto scrambled = multiply(multiply(u, m), v);
    CHECK(full_diagonal(smith_normal_form(scrambled)) == full_diagonal(smith_normal_form(m)));
  }
}

TEST_CASE("overflow falls back to big integers") {
  const std::int64_t big = std::int64_t{1} << 62;
  const auto m = SparseMatrix::from_dense({{big, 3}, {big - 1, 5}, {7, big}});
  const auto snf = smith_normal_form(m);
  CHECK(full_diagonal(snf) == oracle::snf_diagonal(dense_of(m)));
}

TEST_CASE("torsion is a divisibility chain") {
  // diag(2, 3) has invariant factors 1, 6
  const auto m = SparseMatrix::from_dense({{2, 0}, {0, 3}});
  const auto snf = smith_normal_form(m);
  CHECK(snf.rank == 2);
  REQUIRE(snf.torsion.size() == 1);
  CHECK(snf.torsion[0] == 6);
  CHECK(smith_normal_form(SparseMatrix(3, 4)).rank == 0);
  CHECK(smith_normal_form(SparseMatrix(0, 0)).rank == 0);
}

TEST_CASE("joins of spheres and cones") {
  for (int a = 1; a <= 3; ++a) {
    for (int b = 1; b <= 3; ++b) {
      const auto j = join(boundary_complex(a), boundary_complex(b)).complex;
      const auto h = reduced_homology_all(ChainComplex::of(j));
      // S^{a-1} * S^{b-1} = S^{a+b-1}
      for (int p = 0; p < static_cast<int>(h.size()); ++p) {
        CHECK(h[p].free_rank == (p == a + b - 1 ? 1u : 0u));
        CHECK(h[p].torsion.empty());
      }
    }
  }
  const std::vector<SimplicialComplex> bases{rp2(), boundary_complex(4), matching_complex(complete_graph(5)).complex};
  for (const auto& x : bases) {
    const auto cone = join(x, simplex_complex(0)).complex;
    const auto c = homological_connectivity(cone);
    CHECK(c.acyclic);
    for (const auto& g : c.groups) CHECK(g.is_zero());
  }
}

TEST_CASE("connectivity conventions") {
  const auto empty = homological_connectivity(SimplicialComplex());
  CHECK(empty.homological_connectivity == -2);
  CHECK(empty.achieves(-2));
  CHECK_FALSE(empty.achieves(-1));

  const auto two_points = homological_connectivity(SimplicialComplex::from_facets({{0}, {1}}));
  CHECK(two_points.homological_connectivity == -1);
  CHECK(two_points.achieves(-1));
  CHECK_FALSE(two_points.achieves(0));

  const auto point = homological_connectivity(simplex_complex(0));
  CHECK(point.acyclic);
  CHECK(point.achieves(5));

  const auto circle = homological_connectivity(boundary_complex(2));
  CHECK(circle.homological_connectivity == 0);

  ConnectivityOptions opts;
  opts.up_to = 0;
  const auto shallow = homological_connectivity(boundary_complex(4), opts);
  CHECK(shallow.homological_connectivity == 0);
  CHECK_FALSE(shallow.exact);
  // H̃_5 of a 2-dimensional complex is zero, asking for it is fine
  CHECK(reduced_homology(ChainComplex::of(rp2()), 2).is_zero());
}

TEST_CASE("fundamental group heuristic") {
  CHECK(pi1_triviality(boundary_complex(3)) == Pi1Status::TrivialCertified);
  CHECK(pi1_triviality(simplex_complex(4)) == Pi1Status::TrivialCertified);
  CHECK(pi1_triviality(boundary_complex(2)) == Pi1Status::NontrivialCertified);
  CHECK(pi1_triviality(rp2()) == Pi1Status::NontrivialCertified);
  CHECK(pi1_triviality(barycentric(boundary_complex(4)).complex) == Pi1Status::TrivialCertified);
  CHECK_THROWS_AS(pi1_triviality(SimplicialComplex::from_facets({{0}, {1}})), InvalidInput);

  ConnectivityOptions opts;
  opts.attempt_pi1 = true;
  const auto s2 = homological_connectivity(boundary_complex(3), opts);
  CHECK(s2.homological_connectivity == 1);
  CHECK(s2.pi1 == Pi1Status::TrivialCertified);
  const auto s1 = homological_connectivity(boundary_complex(2), opts);
  CHECK(s1.pi1 == Pi1Status::NontrivialCertified);
}

}

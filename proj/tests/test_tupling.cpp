#include "doubling/isomorphism.hpp"
#include "doubling/tupling.hpp"
#include "oracles.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace doubling;

namespace {

// D^r(x) rewritten as families of label sets, for comparison with the oracle.
std::set<std::set<oracle::Set>> label_families(const TuplingComplex& t) {
  std::set<std::set<oracle::Set>> out;
  for (int p = 0; p <= t.complex.dim(); ++p) {
    for (const auto& s : t.complex.faces(p)) {
      std::set<oracle::Set> fam;
      for (auto v : s) {
        const auto l = t.label(v);
        fam.insert(oracle::Set(l.begin(), l.end()));
      }
      out.insert(fam);
    }
  }
  return out;
}

}  // namespace

TEST_SUITE("tupling") {

TEST_CASE("small doubles") {
  const auto d2 = r_tuple(simplex_complex(2), 2);
  CHECK(d2.complex.f_vector() == FVector{3});

  const auto d3 = r_tuple(simplex_complex(3), 2);
  CHECK(d3.complex.f_vector() == FVector{6, 3});
  CHECK(d3.label(0) == Simplex{0, 1});
  CHECK(d3.label(5) == Simplex{2, 3});
  // {0,1} pairs with {2,3}
  CHECK(d3.complex.contains({0, 5}));
  CHECK(delta(d3, {0, 5}) == Simplex{0, 1, 2, 3});
  CHECK_THROWS_AS(delta(d3, {0, 1}), InvalidInput);

  const auto k4 = matching_complex(complete_graph(4));
  CHECK(is_isomorphic(d3.complex, k4.complex).outcome == IsoOutcome::Found);
  CHECK(is_isomorphic(d3.complex, hypergraph_matching(4, 2).complex).outcome == IsoOutcome::Found);
}

TEST_CASE("r = 1 is the identity") {
  const auto x = SimplicialComplex::from_facets({{0, 1, 2}, {2, 4}});
  const auto t = r_tuple(x, 1);
  CHECK(t.complex == x);
  CHECK(t.label(4) == Simplex{4});
  CHECK_THROWS_AS(r_tuple(x, 0), InvalidInput);
}

TEST_CASE("fewer than r vertices gives the empty complex") {
  CHECK(r_tuple(simplex_complex(1), 3).complex.is_empty());
  CHECK(r_tuple(SimplicialComplex(), 2).complex.is_empty());
}

TEST_CASE("tupling agrees with the brute-force oracle") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const auto facets = test::random_facets(rng, 9, 5, 7);
    const auto x = test::from_sets(facets);
    const auto fam = oracle::closure(facets);
    for (int r : {2, 3}) {
      const auto t = r_tuple(x, r);
      const auto brute = oracle::tupling(fam, r);
      CHECK(label_families(t) == brute);
      CHECK(t.complex.f_vector() == oracle::family_f_vector(brute));
      CHECK(t.complex.dim() <= (x.dim() + 1) / r - 1);
    }
  }
  // the union has to lie in x, pairwise disjointness is not enough
  const auto two_edges = SimplicialComplex::from_facets({{0, 1}, {2, 3}});
  CHECK(r_tuple(two_edges, 2).complex.f_vector() == FVector{2});
}

TEST_CASE("dimension of the tupled simplex") {
  for (int n = 1; n <= 8; ++n) {
    for (int r = 1; r <= 3 && r <= n + 1; ++r) {
      CHECK(r_tuple(simplex_complex(n), r).complex.dim() == (n + 1) / r - 1);
    }
  }
}

TEST_CASE("graph validation and matching complexes") {
  CHECK_THROWS_AS(Graph::make(3, {{0, 0}}), InvalidInput);
  CHECK_THROWS_AS(Graph::make(3, {{0, 1}, {1, 0}}), InvalidInput);
  CHECK_THROWS_AS(Graph::make(3, {{0, 3}}), InvalidInput);
  const auto path = Graph::make(4, {{0, 1}, {1, 2}, {2, 3}});
  const auto m = matching_complex(path);
  CHECK(m.complex.f_vector() == FVector{3, 1});
  CHECK(m.table.label(0) == Label{0, 1});
  CHECK(matching_complex(Graph::make(3, {})).complex.is_empty());

  // M(K_n) has C(n,2) vertices and n!/(2^k k!(n-2k)!) k-matchings
  const auto k6 = matching_complex(complete_graph(6));
  CHECK(k6.complex.f_vector() == FVector{15, 45, 15});
  CHECK(hypergraph_matching(6, 3).complex.f_vector() == FVector{20, 10});
}

TEST_CASE("tupling of a simplex is the matching complex under labels") {
  for (int n = 1; n <= 7; ++n) {
    for (int r = 2; r <= 3 && r <= n + 1; ++r) {
      const auto report = verify_tupling_matching_iso(n, r);
      CHECK_MESSAGE(report.passed(), n << " " << r);
    }
    // the graph route for r = 2
    const auto via_graph = matching_complex(complete_graph(static_cast<std::uint32_t>(n + 1)));
    const auto via_tupling = r_tuple(simplex_complex(n), 2);
    CHECK(via_graph.complex == via_tupling.complex);
    CHECK(via_graph.table == via_tupling.delta_table);
  }
  const auto d3 = verify_tupling_matching_iso(3, 2);
  CHECK(d3.notes.size() == 1);
}

TEST_CASE("link lemma") {
  for (int r : {2, 3}) {
    CHECK(verify_link_lemma(simplex_complex(4), r).passed());
    CHECK(verify_link_lemma(boundary_complex(4), r).passed());
  }
  std::mt19937 rng(5);
  for (int trial = 0; trial < 15; ++trial) {
    const auto x = test::from_sets(test::random_facets(rng, 8, 4, 6));
    const auto report = verify_link_lemma(x, 2);
    CHECK(report.passed());
    CHECK(report.ledger.front().detail["simplices_checked"].get<std::size_t>() ==
          r_tuple(x, 2).complex.num_simplices() + 1);
  }
}

TEST_CASE("budget exceeded carries completed strata") {
  Limits tight;
  tight.max_simplices = 300;
  const auto x = SimplicialComplex::from_facets({{0, 1, 2, 3, 4, 5, 6, 7}}, std::nullopt, tight);
  try {
    (void)r_tuple(x, 2);
    FAIL("expected a budget error");
  } catch (const TuplingBudgetExceeded& e) {
    REQUIRE_FALSE(e.completed_strata().empty());
    CHECK(e.completed_strata().front().size() == 28);
  }
}

}

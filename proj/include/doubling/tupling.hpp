#pragma once

#include "doubling/complex.hpp"
#include "doubling/report.hpp"

#include <utility>
#include <vector>

namespace doubling {

/// Simple undirected graph; edges are stored as (a, b) with a < b, sorted.
struct Graph {
  std::uint32_t vertex_count = 0;
  std::vector<std::pair<Vertex, Vertex>> edges;

  /// Rejects loops, duplicate edges and endpoints >= vertex_count.
  static Graph make(std::uint32_t vertex_count, std::vector<std::pair<Vertex, Vertex>> edges);
};

Graph complete_graph(std::uint32_t n);

/// The r-tupling D^r(X) together with the labels that send each of its
/// vertices back to an (r-1)-simplex of the source.
struct TuplingComplex {
  SimplicialComplex complex;
  SimplicialComplex source;
  int r = 1;
  VertexTable delta_table;

  [[nodiscard]] Simplex label(Vertex v) const;
};

/// Raised when enumeration of D^r(X) outgrows the simplex budget. Carries
/// every stratum that was fully enumerated before the cap was hit.
class TuplingBudgetExceeded : public BudgetExceeded {
 public:
  TuplingBudgetExceeded(std::size_t limit, std::vector<std::vector<Simplex>> completed);
  [[nodiscard]] const std::vector<std::vector<Simplex>>& completed_strata() const { return completed_; }

 private:
  std::vector<std::vector<Simplex>> completed_;
};

/// Vertices are the (r-1)-simplices of x, numbered by lexicographic rank; a
/// set of them spans a p-simplex when their union has (p+1)r vertices and is a
/// simplex of x. r = 1 returns x unchanged with the identity table.
TuplingComplex r_tuple(const SimplicialComplex& x, int r);

/// Union of the labels of sigma's vertices, an (r(dim σ + 1) - 1)-simplex of
/// the source.
Simplex delta(const TuplingComplex& t, const Simplex& sigma);

/// Vertices are the edges of g in lexicographic order, simplices the matchings.
DerivedComplex matching_complex(const Graph& g);

/// M_n(r): vertices are the r-subsets of {0, ..., n-1} in lexicographic order,
/// simplices the pairwise disjoint families.
DerivedComplex hypergraph_matching(int n, int r);

/// Builds D^r(Δ^n) and M_{n+1}(r) independently and checks that matching
/// labels is a facet bijection.
VerificationReport verify_tupling_matching_iso(int n, int r);

/// For every simplex τ of D^r(x), including the empty one, compares
/// Link_{D^r(x)} τ with D^r(Link_x δ(τ)) as families of simplices.
VerificationReport verify_link_lemma(const SimplicialComplex& x, int r);

}  // namespace doubling

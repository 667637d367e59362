#pragma once

#include "doubling/errors.hpp"
#include "doubling/simplex.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <vector>

namespace doubling {

/// Entry d is the number of d-simplices, for d = 0..dim.
using FVector = std::vector<std::size_t>;

/// Integer-sequence label attached to a vertex of a derived complex: a source
/// simplex, an injection written as its image tuple, a (side, id) pair, ...
using Label = std::vector<std::uint32_t>;

/// Bijection between the vertex ids of a derived complex and the objects
/// they stand for.
class VertexTable {
 public:
  void insert(Vertex id, Label label);

  [[nodiscard]] const Label& label(Vertex id) const;
  [[nodiscard]] std::optional<Vertex> find(const Label& label) const;
  [[nodiscard]] std::size_t size() const { return by_id_.size(); }
  [[nodiscard]] const std::map<Vertex, Label>& entries() const { return by_id_; }

  friend bool operator==(const VertexTable& a, const VertexTable& b) { return a.by_id_ == b.by_id_; }

 private:
  std::map<Vertex, Label> by_id_;
  std::map<Label, Vertex> by_label_;
};

/// A finite abstract simplicial complex stored by its facets. Vertex ids are
/// bounded by vertex_bound(); the vertex set is whatever the facets cover.
/// The per-dimension strata are materialized on first use.
///
/// Values are immutable and cheap to copy; copies share storage.
class SimplicialComplex {
 public:
  /// The complex whose only simplex is the empty one.
  SimplicialComplex();

  /// Downward closure of `facets`. Non-maximal inputs are absorbed.
  /// `vertex_bound` defaults to one more than the largest id used.
  static SimplicialComplex from_facets(std::vector<Simplex> facets,
                                       std::optional<Vertex> vertex_bound = std::nullopt,
                                       const Limits& limits = default_limits());

  /// Builds from fully enumerated strata (entry d holds every d-simplex).
  /// Facets are read off as the simplices that are not codimension-one faces
  /// of anything in the next stratum.
  static SimplicialComplex from_strata(std::vector<std::vector<Simplex>> strata, Vertex vertex_bound,
                                       const Limits& limits = default_limits());

  /// Trusted constructor: `facets` must already be pairwise incomparable.
  static SimplicialComplex from_maximal_facets(std::vector<Simplex> facets, Vertex vertex_bound,
                                               const Limits& limits = default_limits());

  [[nodiscard]] Vertex vertex_bound() const;
  [[nodiscard]] const std::vector<Simplex>& facets() const;
  [[nodiscard]] const Limits& limits() const;
  /// -1 for the empty complex.
  [[nodiscard]] int dim() const;
  [[nodiscard]] bool is_empty() const { return dim() < 0; }

  /// Exactly the p-simplices, sorted lexicographically. p = -1 gives {∅}.
  [[nodiscard]] const std::vector<Simplex>& faces(int p) const;
  [[nodiscard]] std::vector<Vertex> vertices() const;
  [[nodiscard]] FVector f_vector() const;
  [[nodiscard]] std::size_t num_simplices() const;

  [[nodiscard]] bool contains(const Simplex& s) const;
  /// Position of `s` inside faces(s.dim()).
  [[nodiscard]] std::optional<std::size_t> index_of(const Simplex& s) const;

  friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b);

 private:
  struct Data;
  explicit SimplicialComplex(std::shared_ptr<Data> data);
  const std::vector<std::vector<Simplex>>& strata() const;

  std::shared_ptr<Data> data_;
};

/// Δ^n on vertices 0..n. simplex_complex(-1) is the empty complex.
SimplicialComplex simplex_complex(int n);
/// ∂Δ^n: every proper face of Δ^n.
SimplicialComplex boundary_complex(int n);

SimplicialComplex link(const SimplicialComplex& x, const Simplex& sigma);
SimplicialComplex skeleton(const SimplicialComplex& x, int d);

struct JoinResult {
  SimplicialComplex complex;
  /// Label (0, v) for a vertex v of the left factor, (1, w) for the right.
  VertexTable table;
};
/// Y's ids are shifted by x.vertex_bound() so the factors are disjoint.
JoinResult join(const SimplicialComplex& x, const SimplicialComplex& y);

struct DerivedComplex {
  SimplicialComplex complex;
  /// New vertex id -> vertex list of the source simplex it represents.
  VertexTable table;
};

/// Order complex of all simplices of x with at least m vertices, vertices
/// numbered by lexicographic rank of the simplex they stand for.
DerivedComplex xm_complex(const SimplicialComplex& x, int m);
/// First barycentric subdivision; same as xm_complex(x, 1).
DerivedComplex barycentric(const SimplicialComplex& x);

/// Same complex with vertices renamed 0..k-1 in increasing order.
SimplicialComplex compact_relabel(const SimplicialComplex& x);

}  // namespace doubling

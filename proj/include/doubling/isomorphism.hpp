#pragma once

#include "doubling/complex.hpp"

#include <map>
#include <optional>

namespace doubling {

enum class IsoOutcome { Found, Absent, Inconclusive };

struct IsoResult {
  IsoOutcome outcome = IsoOutcome::Absent;
  /// Vertex of x -> vertex of y; set only when outcome == Found.
  std::optional<std::map<Vertex, Vertex>> bijection;
  std::size_t nodes_visited = 0;
};

/// Searches for a vertex bijection carrying the facets of x onto the facets of
/// y. Candidates are restricted by iterated colour refinement (facet sizes,
/// link f-vectors, neighbour colours) and checked against the 1-skeleton as
/// they are placed. A bijection is only returned after every facet has been
/// re-verified; running out of `limits.max_iso_nodes` yields Inconclusive.
IsoResult is_isomorphic(const SimplicialComplex& x, const SimplicialComplex& y);

/// True when `bijection` maps the facets of x bijectively onto those of y.
bool is_facet_bijection(const SimplicialComplex& x, const SimplicialComplex& y,
                        const std::map<Vertex, Vertex>& bijection);

}  // namespace doubling

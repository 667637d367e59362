#pragma once

#include "doubling/complex.hpp"
#include "doubling/smith.hpp"

#include <json.hpp>

#include <optional>
#include <string_view>
#include <vector>

namespace doubling {

/// Augmented chain complex: degree 0 carries the augmentation to the empty
/// simplex, so all homology computed from it is reduced.
class ChainComplex {
 public:
  /// boundaries[p] maps degree p to degree p-1 (boundaries[0] is the
  /// augmentation, with basis_sizes()[0] columns). Throws InvalidInput unless
  /// every composite ∂_p ∘ ∂_{p+1} vanishes.
  ChainComplex(std::vector<std::size_t> basis_sizes, std::vector<SparseMatrix> boundaries, bool truncated = false);

  /// Chains on x through degree `max_degree + 1` (all degrees when absent).
  static ChainComplex of(const SimplicialComplex& x, std::optional<int> max_degree = std::nullopt);

  [[nodiscard]] int top_degree() const { return static_cast<int>(basis_sizes_.size()) - 1; }
  [[nodiscard]] std::size_t basis_size(int p) const;
  /// ∂_p; an empty matrix of the right shape beyond the top degree.
  [[nodiscard]] SparseMatrix boundary(int p) const;
  /// True when degrees above top_degree() were omitted rather than empty.
  [[nodiscard]] bool truncated() const { return truncated_; }

 private:
  std::vector<std::size_t> basis_sizes_;
  std::vector<SparseMatrix> boundaries_;
  bool truncated_ = false;
};

/// Rows: (p-1)-simplices (the empty simplex when p = 0); columns: p-simplices.
/// Dropping the vertex in position i contributes (-1)^i.
SparseMatrix boundary_matrix(const SimplicialComplex& x, int p);

struct HomologyGroup {
  int degree = 0;
  std::size_t free_rank = 0;
  std::vector<mpz_class> torsion;

  [[nodiscard]] bool is_zero() const { return free_rank == 0 && torsion.empty(); }
  [[nodiscard]] nlohmann::json to_json() const;
};

HomologyGroup reduced_homology(const ChainComplex& c, int p);
/// H̃_0 .. H̃_top, each boundary reduced once.
std::vector<HomologyGroup> reduced_homology_all(const ChainComplex& c);

/// Betti numbers of reduced homology with F_p coefficients, degrees 0..top.
std::vector<std::size_t> reduced_betti_mod_p(const ChainComplex& c, std::uint32_t p);

enum class Pi1Status { TrivialCertified, NontrivialCertified, Inconclusive, NotAttempted };
std::string_view to_string(Pi1Status s);

struct ConnectivityReport {
  /// Largest k with x non-empty (k >= -1) and H̃_i = 0 for i <= k; -2 when x
  /// is empty. When `acyclic`, every reduced group vanishes and this field
  /// holds dim x as a stand-in for "infinite".
  int homological_connectivity = -2;
  bool acyclic = false;
  /// False when computation stopped at the requested degree before finding a
  /// non-vanishing group; the value is then a lower bound.
  bool exact = true;
  std::vector<HomologyGroup> groups;
  Pi1Status pi1 = Pi1Status::NotAttempted;

  /// Whether x is known to be homologically k-connected.
  [[nodiscard]] bool achieves(int k) const;
  [[nodiscard]] nlohmann::json to_json() const;
};

struct ConnectivityOptions {
  /// Stop once H̃_0..H̃_{up_to} are known to vanish.
  std::optional<int> up_to;
  /// Try to certify π₁ = 1 when homology through degree 1 vanishes.
  bool attempt_pi1 = false;
};

ConnectivityReport homological_connectivity(const SimplicialComplex& x, const ConnectivityOptions& options = {});

/// Edge-path presentation of π₁ on a BFS spanning tree (generators: non-tree
/// edges, relators: triangles), then bounded Tietze moves: a relator reduced
/// to one letter kills that generator, one reduced to two distinct letters
/// identifies them. Trivial-certified when every generator dies;
/// nontrivial-certified when H₁ ≠ 0; inconclusive otherwise.
/// x must be non-empty and path-connected.
Pi1Status pi1_triviality(const SimplicialComplex& x);

}  // namespace doubling

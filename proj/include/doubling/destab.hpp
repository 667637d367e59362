#pragma once

#include "doubling/complex.hpp"
#include "doubling/homology.hpp"
#include "doubling/report.hpp"
#include "doubling/tupling.hpp"
#include "doubling/wcm.hpp"

#include <map>
#include <vector>

namespace doubling {

/// Graded sets with face maps and no degeneracies. Each p-simplex carries a
/// label (an ordered tuple) and the indices of its p+1 faces in degree p-1.
class SemiSimplicialSet {
 public:
  /// Throws InvalidInput unless d_i d_j = d_{j-1} d_i for all i < j.
  SemiSimplicialSet(std::vector<std::vector<Label>> simplices,
                    std::vector<std::vector<std::vector<std::uint32_t>>> faces);

  /// Simplices are the given ordered words; d_i deletes position i. Every
  /// deletion must land on a word of the previous degree.
  static SemiSimplicialSet from_words(std::vector<std::vector<Label>> words);

  [[nodiscard]] int top_degree() const { return static_cast<int>(simplices_.size()) - 1; }
  [[nodiscard]] std::size_t count(int p) const;
  [[nodiscard]] std::vector<std::size_t> counts() const;
  [[nodiscard]] const std::vector<Label>& simplices(int p) const { return simplices_.at(static_cast<std::size_t>(p)); }
  /// Index in degree p-1 of d_i applied to the j-th p-simplex.
  [[nodiscard]] std::uint32_t face(int p, std::size_t j, std::size_t i) const;

  [[nodiscard]] nlohmann::json to_json() const;

 private:
  std::vector<std::vector<Label>> simplices_;
  std::vector<std::vector<std::vector<std::uint32_t>>> faces_;
};

/// W_n(∅, [1]): injective words in the letters 1..n; d_i deletes letter i.
SemiSimplicialSet injective_words(int n);

/// X^ord: one p-simplex per p-simplex of x and ordering of its vertices.
SemiSimplicialSet ordered_complex(const SimplicialComplex& x);

/// Augmented chains on a semi-simplicial set.
ChainComplex chain_complex_of(const SemiSimplicialSet& s);

/// S_n(∅, [r]) in (FI, ⊔, ∅): vertices are injections [r] -> [nr], written as
/// their image tuples in 1..nr and numbered lexicographically; a set of them
/// is a simplex when the images are pairwise disjoint.
DerivedComplex s_complex_fi(int n, int r);

struct ComplexMap {
  SimplicialComplex source;
  SimplicialComplex target;
  std::map<Vertex, Vertex> assignment;
};

struct Projection {
  ComplexMap map;
  DerivedComplex upstairs;
  TuplingComplex downstairs;
};

/// S_n(∅, [r]) -> D^r(Δ^{nr-1}), an injection going to its image set.
Projection projection_to_tupling(int n, int r);

/// Checks that `pi` is vertex-surjective and dimension-preserving on
/// simplices, and that every choice of one fibre vertex over each vertex of a
/// simplex of the target spans a simplex of the source.
VerificationReport is_complete_join(const ComplexMap& pi);

VerificationReport verify_prop44(int n, int r);

/// With k = 1, a = 2 for FI (S_n(∅,[1]) = Δ^{n-1} is wCM of dimension n-1),
/// S_n(∅,[r]) should be wCM of dimension floor(r(n-1)/(r+1)).
VerificationReport verify_prop45_fi(int n, int r, const WcmOptions& options = {});

}  // namespace doubling

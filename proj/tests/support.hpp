#pragma once

// Conversions between library complexes and the oracle's plain sets.

#include "doubling/complex.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace test {

inline doubling::Simplex to_simplex(const oracle::Set& s) {
  std::vector<doubling::Vertex> v(s.begin(), s.end());
  return doubling::Simplex(std::span<const doubling::Vertex>(v));
}

inline doubling::SimplicialComplex from_sets(const std::vector<oracle::Set>& facets) {
  std::vector<doubling::Simplex> out;
  for (const auto& f : facets) out.push_back(to_simplex(f));
  return doubling::SimplicialComplex::from_facets(out);
}

inline oracle::Family to_family(const doubling::SimplicialComplex& x) {
  oracle::Family out;
  for (int p = 0; p <= x.dim(); ++p) {
    for (const auto& s : x.faces(p)) out.insert(oracle::Set(s.begin(), s.end()));
  }
  return out;
}

// A handful of random subsets of {0..n-1}; sizes 1..max_size.
inline std::vector<oracle::Set> random_facets(std::mt19937& rng, int n, int count, int max_size) {
  std::vector<oracle::Set> out;
  std::vector<int> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 0);
  std::uniform_int_distribution<int> size(1, max_size);
  for (int i = 0; i < count; ++i) {
    std::shuffle(all.begin(), all.end(), rng);
    oracle::Set s(all.begin(), all.begin() + size(rng));
    std::sort(s.begin(), s.end());
    out.push_back(s);
  }
  return out;
}

}  // namespace test

#include "doubling/destab.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace doubling {

namespace {

// Number of injective words of length k over n letters, saturating.
long double falling(int n, int k) {
  long double v = 1;
  for (int i = 0; i < k; ++i) v *= static_cast<long double>(n - i);
  return v;
}

void check_budget(long double count, const Limits& limits, const std::string& what) {
  if (count > static_cast<long double>(limits.max_simplices)) {
    throw BudgetExceeded(what, limits.max_simplices);
  }
}

// All injective words of length k over the given letters, lexicographic.
std::vector<Label> injective_tuples(const std::vector<std::uint32_t>& letters, int k) {
  std::vector<Label> out;
  std::vector<std::uint32_t> sorted = letters;
  std::sort(sorted.begin(), sorted.end());
  const Simplex pool(std::span<const Vertex>(sorted.data(), sorted.size()));
  for (const auto& subset : subsets_of_size(pool, k)) {
    Label w = subset.to_vector();
    do {
      out.push_back(w);
    } while (std::next_permutation(w.begin(), w.end()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

SemiSimplicialSet::SemiSimplicialSet(std::vector<std::vector<Label>> simplices,
                                     std::vector<std::vector<std::vector<std::uint32_t>>> faces)
    : simplices_(std::move(simplices)), faces_(std::move(faces)) {
  if (faces_.size() != simplices_.size()) throw InvalidInput("semi-simplicial set: one face table per degree");
  for (std::size_t p = 0; p < faces_.size(); ++p) {
    if (faces_[p].size() != simplices_[p].size()) throw InvalidInput("semi-simplicial set: face table size");
    for (const auto& f : faces_[p]) {
      if (p == 0 ? !f.empty() : f.size() != p + 1) throw InvalidInput("semi-simplicial set: wrong face count");
      for (auto idx : f) {
        if (idx >= simplices_[p - 1].size()) throw InvalidInput("semi-simplicial set: face index out of range");
      }
    }
  }
  for (std::size_t p = 2; p < faces_.size(); ++p) {
    for (std::size_t s = 0; s < faces_[p].size(); ++s) {
      for (std::size_t j = 1; j <= p; ++j) {
        for (std::size_t i = 0; i < j; ++i) {
          if (faces_[p - 1][faces_[p][s][j]][i] != faces_[p - 1][faces_[p][s][i]][j - 1]) {
            throw InvalidInput("semi-simplicial set: face identity fails in degree " + std::to_string(p));
          }
        }
      }
    }
  }
}

SemiSimplicialSet SemiSimplicialSet::from_words(std::vector<std::vector<Label>> words) {
  std::vector<std::vector<std::vector<std::uint32_t>>> faces(words.size());
  std::map<Label, std::uint32_t> previous;
  for (std::size_t p = 0; p < words.size(); ++p) {
    std::sort(words[p].begin(), words[p].end());
    std::map<Label, std::uint32_t> current;
    faces[p].resize(words[p].size());
    for (std::size_t j = 0; j < words[p].size(); ++j) {
      const auto& w = words[p][j];
      if (w.size() != p + 1) throw InvalidInput("semi-simplicial set: word of wrong length in degree " + std::to_string(p));
      current.emplace(w, static_cast<std::uint32_t>(j));
      if (p == 0) continue;
      for (std::size_t i = 0; i <= p; ++i) {
        Label face = w;
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
        auto it = previous.find(face);
        if (it == previous.end()) throw InvalidInput("semi-simplicial set: face of a word is missing");
        faces[p][j].push_back(it->second);
      }
    }
    previous = std::move(current);
  }
  return SemiSimplicialSet(std::move(words), std::move(faces));
}

std::size_t SemiSimplicialSet::count(int p) const {
  if (p < 0 || p > top_degree()) return 0;
  return simplices_[static_cast<std::size_t>(p)].size();
}

std::vector<std::size_t> SemiSimplicialSet::counts() const {
  std::vector<std::size_t> out;
  for (const auto& level : simplices_) out.push_back(level.size());
  return out;
}

std::uint32_t SemiSimplicialSet::face(int p, std::size_t j, std::size_t i) const {
  return faces_.at(static_cast<std::size_t>(p)).at(j).at(i);
}

nlohmann::json SemiSimplicialSet::to_json() const {
  nlohmann::json levels = nlohmann::json::array();
  for (std::size_t p = 0; p < simplices_.size(); ++p) {
    nlohmann::json level = nlohmann::json::array();
    for (std::size_t j = 0; j < simplices_[p].size(); ++j) {
      level.push_back({{"label", simplices_[p][j]}, {"faces", faces_[p][j]}});
    }
    levels.push_back(level);
  }
  return {{"counts", counts()}, {"simplices", levels}};
}

SemiSimplicialSet injective_words(int n) {
  if (n < 0) throw InvalidInput("injective_words: n must be >= 0");
  const Limits limits = default_limits();
  long double total = 0;
  for (int k = 1; k <= n; ++k) total += falling(n, k);
  check_budget(total, limits, "simplices");
  std::vector<std::uint32_t> letters(static_cast<std::size_t>(n));
  std::iota(letters.begin(), letters.end(), 1u);
  std::vector<std::vector<Label>> words;
  for (int k = 1; k <= n; ++k) words.push_back(injective_tuples(letters, k));
  return SemiSimplicialSet::from_words(std::move(words));
}

SemiSimplicialSet ordered_complex(const SimplicialComplex& x) {
  long double total = 0;
  for (int p = 0; p <= x.dim(); ++p) total += static_cast<long double>(x.faces(p).size()) * std::tgamma(p + 2.0L);
  check_budget(total, x.limits(), "simplices");
  std::vector<std::vector<Label>> words;
  for (int p = 0; p <= x.dim(); ++p) {
    std::vector<Label> level;
    for (const auto& s : x.faces(p)) {
      Label w = s.to_vector();
      do {
        level.push_back(w);
      } while (std::next_permutation(w.begin(), w.end()));
    }
    words.push_back(std::move(level));
  }
  return SemiSimplicialSet::from_words(std::move(words));
}

ChainComplex chain_complex_of(const SemiSimplicialSet& s) {
  std::vector<std::size_t> sizes;
  std::vector<SparseMatrix> boundaries;
  for (int p = 0; p <= s.top_degree(); ++p) {
    sizes.push_back(s.count(p));
    if (p == 0) {
      SparseMatrix m(1, s.count(0));
      for (auto& c : m.columns) c.emplace_back(0, 1);
      boundaries.push_back(std::move(m));
      continue;
    }
    SparseMatrix m(s.count(p - 1), s.count(p));
    for (std::size_t j = 0; j < s.count(p); ++j) {
      std::map<std::uint32_t, std::int64_t> acc;
      for (std::size_t i = 0; i <= static_cast<std::size_t>(p); ++i) acc[s.face(p, j, i)] += (i % 2 == 0) ? 1 : -1;
      for (const auto& [row, v] : acc) {
        if (v != 0) m.columns[j].emplace_back(row, v);
      }
    }
    boundaries.push_back(std::move(m));
  }
  return ChainComplex(std::move(sizes), std::move(boundaries));
}

DerivedComplex s_complex_fi(int n, int r) {
  if (n < 1 || r < 1) throw InvalidInput("s_complex_fi: need n >= 1 and r >= 1");
  const int total = n * r;
  if (total > 64) throw InvalidInput("s_complex_fi: n * r must be <= 64");
  const Limits limits = default_limits();
  check_budget(falling(total, r), limits, "vertices");
  check_budget(falling(total, total) / falling(n, n), limits, "facets");

  std::vector<std::uint32_t> letters(static_cast<std::size_t>(total));
  std::iota(letters.begin(), letters.end(), 1u);
  const auto vertices = injective_tuples(letters, r);
  DerivedComplex out;
  std::map<Label, Vertex> id_of;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    out.table.insert(static_cast<Vertex>(i), vertices[i]);
    id_of.emplace(vertices[i], static_cast<Vertex>(i));
  }

  // A facet is a partition of 1..nr into n blocks, each block ordered.
  std::vector<Simplex> facets;
  std::vector<Vertex> chosen;
  std::vector<char> used(static_cast<std::size_t>(total) + 1, 0);
  auto recurse = [&](auto&& self) -> void {
    std::uint32_t first = 1;
    while (first <= static_cast<std::uint32_t>(total) && used[first]) ++first;
    if (first > static_cast<std::uint32_t>(total)) {
      facets.emplace_back(std::span<const Vertex>(chosen.data(), chosen.size()));
      return;
    }
    std::vector<Vertex> rest;
    for (std::uint32_t v = first + 1; v <= static_cast<std::uint32_t>(total); ++v) {
      if (!used[v]) rest.push_back(v);
    }
    const Simplex pool(std::span<const Vertex>(rest.data(), rest.size()));
    for (const auto& others : subsets_of_size(pool, r - 1)) {
      Label block{first};
      for (auto v : others) block.push_back(v);
      for (auto v : block) used[v] = 1;
      Label ordering = block;
      do {
        chosen.push_back(id_of.at(ordering));
        self(self);
        chosen.pop_back();
      } while (std::next_permutation(ordering.begin(), ordering.end()));
      for (auto v : block) used[v] = 0;
    }
  };
  recurse(recurse);
  std::sort(facets.begin(), facets.end());
  out.complex = SimplicialComplex::from_maximal_facets(std::move(facets), static_cast<Vertex>(vertices.size()));
  return out;
}

Projection projection_to_tupling(int n, int r) {
  auto upstairs = s_complex_fi(n, r);
  auto downstairs = r_tuple(simplex_complex(n * r - 1), r);
  ComplexMap map{upstairs.complex, downstairs.complex, {}};
  for (const auto& [id, tuple] : upstairs.table.entries()) {
    Label image;
    for (auto a : tuple) image.push_back(a - 1);
    std::sort(image.begin(), image.end());
    auto target = downstairs.delta_table.find(image);
    if (!target) throw InvalidInput("projection: image set is not a vertex of the tupling");
    map.assignment.emplace(id, *target);
  }
  return {std::move(map), std::move(upstairs), std::move(downstairs)};
}

VerificationReport is_complete_join(const ComplexMap& pi) {
  VerificationReport report;
  report.check = "complete-join";
  const auto& y = pi.source;
  const auto& x = pi.target;

  // Vertex map total and surjective.
  std::map<Vertex, std::vector<Vertex>> fibre;
  bool total = true;
  for (auto v : y.vertices()) {
    auto it = pi.assignment.find(v);
    if (it == pi.assignment.end()) {
      total = false;
      continue;
    }
    fibre[it->second].push_back(v);
  }
  bool surjective = true;
  for (auto v : x.vertices()) surjective = surjective && fibre.count(v) > 0;
  surjective = surjective && fibre.size() == x.vertices().size();
  report.gates.push_back({"vertex-map-total", total, {}});
  report.add({"surjective", surjective, {{"target_vertices", x.vertices().size()}, {"fibres", fibre.size()}}});
  if (!total) {
    report.settle();
    return report;
  }

  // Every simplex goes to a simplex of the same dimension; checking facets
  // covers their faces too.
  bool simplicial = true;
  nlohmann::json counterexample;
  for (const auto& f : y.facets()) {
    std::vector<Vertex> image;
    for (auto v : f) image.push_back(pi.assignment.at(v));
    const Simplex s(std::span<const Vertex>(image.data(), image.size()));
    if (s.size() != f.size() || !x.contains(s)) {
      simplicial = false;
      counterexample = {{"source", f.to_vector()}, {"image", image}};
      break;
    }
  }
  nlohmann::json forward = {{"facets_checked", y.facets().size()}};
  if (!simplicial) forward["counterexample"] = counterexample;
  report.add({"simplicial-dimension-preserving", simplicial, forward});

  // Every choice of fibre vertices over a simplex of x spans a simplex of y.
  bool lifts = surjective;
  std::size_t checked = 0;
  nlohmann::json lift_failure;
  const auto budget = y.limits().max_simplices;
  for (int p = 0; lifts && p <= x.dim(); ++p) {
    for (const auto& s : x.faces(p)) {
      std::vector<std::size_t> pos(s.size(), 0);
      while (true) {
        if (++checked > budget) throw BudgetExceeded("fibre products", budget);
        std::vector<Vertex> pick;
        for (std::size_t i = 0; i < s.size(); ++i) pick.push_back(fibre[s[i]][pos[i]]);
        const Simplex t(std::span<const Vertex>(pick.data(), pick.size()));
        if (t.size() != s.size() || !y.contains(t)) {
          lifts = false;
          lift_failure = {{"target_simplex", s.to_vector()}, {"choice", pick}};
          break;
        }
        std::size_t k = 0;
        while (k < s.size() && ++pos[k] == fibre[s[k]].size()) pos[k++] = 0;
        if (k == s.size()) break;
      }
      if (!lifts) break;
    }
  }
  nlohmann::json backward = {{"tuples_checked", checked}};
  if (!lifts && !lift_failure.is_null()) backward["counterexample"] = lift_failure;
  report.add({"fibre-products-are-simplices", lifts, backward});
  report.settle();
  return report;
}

VerificationReport verify_prop44(int n, int r) {
  if (n < 1 || r < 1) throw InvalidInput("prop44: need n >= 1 and r >= 1");
  const auto proj = projection_to_tupling(n, r);
  auto report = is_complete_join(proj.map);
  report.check = "prop44";
  report.parameters = {{"n", n}, {"r", r}, {"category", "FI"}};

  // At r = 1 the construction is the full simplex on nr vertices.
  const auto base = s_complex_fi(n * r, 1);
  std::vector<Simplex> relabelled;
  for (const auto& f : base.complex.facets()) {
    std::vector<Vertex> vs;
    for (auto v : f) vs.push_back(base.table.label(v).front() - 1);
    relabelled.emplace_back(std::span<const Vertex>(vs.data(), vs.size()));
  }
  const bool base_ok =
      SimplicialComplex::from_facets(std::move(relabelled)) == simplex_complex(n * r - 1);
  report.gates.push_back({"base-is-simplex", base_ok, {{"vertices", n * r}}});

  report.data["source_f_vector"] = proj.upstairs.complex.f_vector();
  report.data["target_f_vector"] = proj.downstairs.complex.f_vector();
  report.notes.push_back("FI is handled as the situation where W_n(A,X) equals S_n(A,X)^ord");
  report.settle();
  return report;
}

VerificationReport verify_prop45_fi(int n, int r, const WcmOptions& options) {
  if (n < 1 || r < 1) throw InvalidInput("prop45: need n >= 1 and r >= 1");
  VerificationReport report;
  report.check = "prop45";
  report.parameters = {{"n", n}, {"r", r}, {"category", "FI"}, {"k", 1}, {"a", 2}};

  const int total = n * r;
  const auto hypothesis = check_wcm(simplex_complex(total - 1), total - 1, options);
  report.gates.push_back({"hypothesis-base-wcm", hypothesis.passed(), hypothesis.to_json(false)});

  const int target = floor_div(r * (n - 1), r + 1);
  const int via_theorem1 = floor_div(total - 1 - r + 1, r + 1);
  report.add({"target-matches-tupling-bound", target == via_theorem1,
              {{"target", target}, {"tupling_bound", via_theorem1}}});

  const auto s = s_complex_fi(n, r);
  const auto main = check_wcm(s.complex, target, options);
  report.add({"s-complex-wcm", main.passed(), main.to_json(false)});

  const auto tupled = r_tuple(simplex_complex(total - 1), r);
  const auto base = check_wcm(tupled.complex, target, options);
  report.add({"tupling-wcm", base.passed(), base.to_json(false)});

  report.data["target_dimension"] = target;
  report.data["f_vector"] = s.complex.f_vector();
  report.notes.push_back("k = 1 and a = 2 are read off from S_n(∅,[1]) = Δ^{n-1} being wCM of dimension n-1");
  report.notes.push_back("the statement for the semi-simplicial W_n follows by the splitting argument and is not machine-checked");
  report.settle(weakest(hypothesis.verdict, weakest(main.verdict, base.verdict)));
  return report;
}

}  // namespace doubling

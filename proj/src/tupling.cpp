#include "doubling/tupling.hpp"

#include "doubling/isomorphism.hpp"
#include "doubling/json_io.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace doubling {

Graph Graph::make(std::uint32_t vertex_count, std::vector<std::pair<Vertex, Vertex>> edges) {
  for (auto& [a, b] : edges) {
    if (a == b) throw InvalidInput("graph: loop at vertex " + std::to_string(a));
    if (a >= vertex_count || b >= vertex_count) throw InvalidInput("graph: endpoint out of range");
    if (a > b) std::swap(a, b);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    throw InvalidInput("graph: duplicate edge");
  }
  return Graph{vertex_count, std::move(edges)};
}

Graph complete_graph(std::uint32_t n) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = a + 1; b < n; ++b) edges.emplace_back(a, b);
  }
  return Graph::make(n, std::move(edges));
}

Simplex TuplingComplex::label(Vertex v) const {
  const auto& l = delta_table.label(v);
  return Simplex(std::span<const Vertex>(l.data(), l.size()));
}

TuplingBudgetExceeded::TuplingBudgetExceeded(std::size_t limit, std::vector<std::vector<Simplex>> completed)
    : BudgetExceeded("simplices", limit,
                     [&] {
                       std::vector<std::size_t> counts;
                       for (const auto& level : completed) counts.push_back(level.size());
                       return counts;
                     }()),
      completed_(std::move(completed)) {}

namespace {

// Set operations on the labels during enumeration. Sources with at most 64
// vertex ids use one machine word per set.
struct MaskOps {
  using Set = std::uint64_t;
  std::vector<Set> facets;

  explicit MaskOps(const SimplicialComplex& x) {
    for (const auto& f : x.facets()) facets.push_back(make(f));
  }
  static Set make(const Simplex& s) {
    Set m = 0;
    for (Vertex v : s) m |= Set{1} << v;
    return m;
  }
  static bool disjoint(Set a, Set b) { return (a & b) == 0; }
  static Set unite(Set a, Set b) { return a | b; }
  bool member(Set s) const {
    return std::any_of(facets.begin(), facets.end(), [s](Set f) { return (f & s) == s; });
  }
};

struct SortedOps {
  using Set = Simplex;
  const SimplicialComplex* x;

  explicit SortedOps(const SimplicialComplex& c) : x(&c) {}
  static Set make(const Simplex& s) { return s; }
  static bool disjoint(const Set& a, const Set& b) { return a.disjoint_from(b); }
  static Set unite(const Set& a, const Set& b) { return a.union_with(b); }
  bool member(const Set& s) const { return x->contains(s); }
};

// Level-by-level: every p-simplex is extended by each larger-ranked vertex
// whose label is disjoint from the running union and keeps the union inside x.
template <class Ops>
std::vector<std::vector<Simplex>> enumerate_tuplings(const Ops& ops, const std::vector<Simplex>& labels,
                                                     std::size_t budget) {
  using Set = typename Ops::Set;
  const auto n = static_cast<Vertex>(labels.size());
  std::vector<Set> label_sets;
  label_sets.reserve(n);
  for (const auto& l : labels) label_sets.push_back(Ops::make(l));

  std::vector<std::vector<Simplex>> strata;
  std::vector<std::pair<Simplex, Set>> frontier;
  std::size_t total = 0;
  if (n == 0) return strata;

  strata.emplace_back();
  for (Vertex v = 0; v < n; ++v) {
    strata[0].push_back(Simplex{v});
    frontier.emplace_back(Simplex{v}, label_sets[v]);
  }
  total = n;
  if (total > budget) throw TuplingBudgetExceeded(budget, {});

  while (!frontier.empty()) {
    std::vector<std::pair<Simplex, Set>> next;
    std::vector<Simplex> level;
    for (const auto& [simplex, covered] : frontier) {
      for (Vertex w = simplex.back() + 1; w < n; ++w) {
        if (!Ops::disjoint(covered, label_sets[w])) continue;
        Set grown = Ops::unite(covered, label_sets[w]);
        if (!ops.member(grown)) continue;
        auto bigger = simplex.with_vertex(w);
        level.push_back(bigger);
        next.emplace_back(std::move(bigger), std::move(grown));
        if (total + level.size() > budget) throw TuplingBudgetExceeded(budget, std::move(strata));
      }
    }
    total += level.size();
    if (!level.empty()) strata.push_back(std::move(level));
    frontier = std::move(next);
  }
  return strata;
}

// Pairwise disjoint families of `labels`, enumerated depth-first.
std::vector<std::vector<Simplex>> disjoint_families(const std::vector<Simplex>& labels, std::size_t budget) {
  std::vector<std::vector<Simplex>> strata;
  std::size_t total = 0;
  std::vector<Vertex> chosen;
  auto visit = [&](auto&& self, Vertex start) -> void {
    for (Vertex w = start; w < labels.size(); ++w) {
      bool ok = true;
      for (Vertex c : chosen) {
        if (!labels[c].disjoint_from(labels[w])) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      chosen.push_back(w);
      if (strata.size() < chosen.size()) strata.resize(chosen.size());
      strata[chosen.size() - 1].push_back(Simplex(std::span<const Vertex>(chosen.data(), chosen.size())));
      if (++total > budget) throw BudgetExceeded("simplices", budget);
      self(self, w + 1);
      chosen.pop_back();
    }
  };
  visit(visit, 0);
  return strata;
}

VertexTable table_from_labels(const std::vector<Simplex>& labels) {
  VertexTable table;
  for (std::size_t i = 0; i < labels.size(); ++i) table.insert(static_cast<Vertex>(i), labels[i].to_vector());
  return table;
}

nlohmann::json f_vector_json(const FVector& f) { return nlohmann::json(f); }

}  // namespace

TuplingComplex r_tuple(const SimplicialComplex& x, int r) {
  if (r < 1) throw InvalidInput("r_tuple: r must be >= 1");
  TuplingComplex out;
  out.source = x;
  out.r = r;
  if (r == 1) {
    out.complex = x;
    for (Vertex v : x.vertices()) out.delta_table.insert(v, {v});
    return out;
  }
  const auto& labels = x.faces(r - 1);
  out.delta_table = table_from_labels(labels);
  const std::size_t budget = x.limits().max_simplices;
  std::vector<std::vector<Simplex>> strata;
  if (x.vertex_bound() <= 64) {
    strata = enumerate_tuplings(MaskOps(x), labels, budget);
  } else {
    strata = enumerate_tuplings(SortedOps(x), labels, budget);
  }
  out.complex = SimplicialComplex::from_strata(std::move(strata), static_cast<Vertex>(labels.size()), x.limits());
  return out;
}

Simplex delta(const TuplingComplex& t, const Simplex& sigma) {
  if (!t.complex.contains(sigma)) throw InvalidInput("delta: " + sigma.to_string() + " is not a simplex");
  Simplex out;
  for (Vertex v : sigma) out = out.union_with(t.label(v));
  return out;
}

DerivedComplex matching_complex(const Graph& g) {
  std::vector<Simplex> labels;
  for (const auto& [a, b] : g.edges) labels.push_back(Simplex{a, b});
  DerivedComplex out;
  out.table = table_from_labels(labels);
  out.complex = SimplicialComplex::from_strata(disjoint_families(labels, default_limits().max_simplices),
                                               static_cast<Vertex>(labels.size()));
  return out;
}

DerivedComplex hypergraph_matching(int n, int r) {
  if (r < 1 || n < r) throw InvalidInput("hypergraph_matching: need n >= r >= 1");
  Simplex::Storage ground(static_cast<std::size_t>(n));
  std::iota(ground.begin(), ground.end(), Vertex{0});
  auto labels = subsets_of_size(Simplex::from_sorted(std::move(ground)), static_cast<std::size_t>(r));
  DerivedComplex out;
  out.table = table_from_labels(labels);
  out.complex = SimplicialComplex::from_strata(disjoint_families(labels, default_limits().max_simplices),
                                               static_cast<Vertex>(labels.size()));
  return out;
}

VerificationReport verify_tupling_matching_iso(int n, int r) {
  if (r < 1 || n + 1 < r) throw InvalidInput("verify iso: need n + 1 >= r >= 1");
  VerificationReport report;
  report.check = "iso";
  report.parameters = {{"n", n}, {"r", r}};

  const auto tupled = r_tuple(simplex_complex(n), r);
  const auto matching = hypergraph_matching(n + 1, r);
  const auto f_tupled = tupled.complex.f_vector();
  const auto f_matching = matching.complex.f_vector();
  report.data["f_vector_tupling"] = f_vector_json(f_tupled);
  report.data["f_vector_matching"] = f_vector_json(f_matching);
  report.add({"f-vectors-agree", f_tupled == f_matching, {}});

  std::map<Vertex, Vertex> bijection;
  bool total = true;
  for (const auto& [id, label] : tupled.delta_table.entries()) {
    auto target = matching.table.find(label);
    if (!target) {
      total = false;
      break;
    }
    bijection.emplace(id, *target);
  }
  total = total && bijection.size() == matching.table.size();
  report.add({"label-bijection-total", total, {{"vertices", bijection.size()}}});
  report.add({"label-bijection-simplicial",
              total && is_facet_bijection(tupled.complex, matching.complex, bijection),
              {{"facets", tupled.complex.facets().size()}}});
  if (n == 3 && r == 2) {
    report.notes.push_back(
        "D(Δ³) has 6 vertices and 3 edges (one per perfect matching of K₄); a picture of a single edge "
        "shows 4 vertices and 2 disjoint edges of Δ³, which is not the whole complex");
  }
  report.settle();
  return report;
}

VerificationReport verify_link_lemma(const SimplicialComplex& x, int r) {
  VerificationReport report;
  report.check = "link-lemma";
  report.parameters = {{"r", r}, {"f_vector", f_vector_json(x.f_vector())}};
  const auto tupled = r_tuple(x, r);

  std::vector<Simplex> taus{Simplex{}};
  for (int p = 0; p <= tupled.complex.dim(); ++p) {
    const auto& level = tupled.complex.faces(p);
    taus.insert(taus.end(), level.begin(), level.end());
  }

  std::size_t checked = 0;
  bool ok = true;
  nlohmann::json counterexample;
  for (const auto& tau : taus) {
    const auto lhs = link(tupled.complex, tau);
    const auto under = delta(tupled, tau);
    const auto rhs_tupled = r_tuple(link(x, under), r);

    std::vector<Simplex> rhs_facets;
    bool mapped = true;
    for (const auto& f : rhs_tupled.complex.facets()) {
      Simplex::Storage ids;
      for (Vertex v : f) {
        auto id = tupled.delta_table.find(rhs_tupled.delta_table.label(v));
        if (!id) {
          mapped = false;
          break;
        }
        ids.push_back(*id);
      }
      if (!mapped) break;
      rhs_facets.push_back(Simplex(std::span<const Vertex>(ids.data(), ids.size())));
    }
    std::sort(rhs_facets.begin(), rhs_facets.end());
    ++checked;
    if (!mapped || rhs_facets != lhs.facets()) {
      ok = false;
      counterexample = {{"tau", tau.to_vector()}, {"delta", under.to_vector()}};
      break;
    }
  }
  report.add({"link-identity", ok, {{"simplices_checked", checked}, {"total", taus.size()}}});
  if (!ok) report.data["counterexample"] = counterexample;
  report.settle();
  return report;
}

}  // namespace doubling

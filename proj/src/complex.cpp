#include "doubling/complex.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

namespace doubling {

// ---------------------------------------------------------------------------
// VertexTable

void VertexTable::insert(Vertex id, Label label) {
  if (by_id_.count(id)) throw InvalidInput("vertex table: duplicate id " + std::to_string(id));
  if (by_label_.count(label)) throw InvalidInput("vertex table: duplicate label");
  by_label_.emplace(label, id);
  by_id_.emplace(id, std::move(label));
}

const Label& VertexTable::label(Vertex id) const {
  auto it = by_id_.find(id);
  if (it == by_id_.end()) throw InvalidInput("vertex table: unknown id " + std::to_string(id));
  return it->second;
}

std::optional<Vertex> VertexTable::find(const Label& label) const {
  auto it = by_label_.find(label);
  if (it == by_label_.end()) return std::nullopt;
  return it->second;
}

// ---------------------------------------------------------------------------
// SimplicialComplex

struct SimplicialComplex::Data {
  Vertex vertex_bound = 0;
  std::vector<Simplex> facets;
  Limits limits = default_limits();
  mutable std::mutex mutex;
  mutable std::atomic<bool> materialized{false};
  mutable std::vector<std::vector<Simplex>> strata;
};

namespace {

const std::vector<Simplex>& empty_stratum() {
  static const std::vector<Simplex> none;
  return none;
}

const std::vector<Simplex>& void_stratum() {
  static const std::vector<Simplex> just_empty{Simplex{}};
  return just_empty;
}

std::vector<Simplex> drop_empty(std::vector<Simplex> facets) {
  facets.erase(std::remove_if(facets.begin(), facets.end(), [](const Simplex& s) { return s.empty(); }),
               facets.end());
  return facets;
}

}  // namespace

SimplicialComplex::SimplicialComplex() : data_(std::make_shared<Data>()) {}

SimplicialComplex::SimplicialComplex(std::shared_ptr<Data> data) : data_(std::move(data)) {}

SimplicialComplex SimplicialComplex::from_maximal_facets(std::vector<Simplex> facets, Vertex vertex_bound,
                                                         const Limits& limits) {
  auto data = std::make_shared<Data>();
  data->facets = drop_empty(std::move(facets));
  std::sort(data->facets.begin(), data->facets.end());
  data->vertex_bound = vertex_bound;
  data->limits = limits;
  return SimplicialComplex(std::move(data));
}

SimplicialComplex SimplicialComplex::from_facets(std::vector<Simplex> facets, std::optional<Vertex> vertex_bound,
                                                 const Limits& limits) {
  facets = drop_empty(std::move(facets));
  Vertex max_plus_one = 0;
  for (const auto& f : facets) {
    if (f.back() > limits.max_vertex_id) {
      throw InvalidInput("vertex id " + std::to_string(f.back()) + " exceeds cap " +
                         std::to_string(limits.max_vertex_id));
    }
    max_plus_one = std::max<Vertex>(max_plus_one, f.back() + 1);
  }
  if (vertex_bound) {
    if (*vertex_bound < max_plus_one) {
      throw InvalidInput("declared vertex count " + std::to_string(*vertex_bound) +
                         " is smaller than the ids used by the facets");
    }
    if (facets.empty() && *vertex_bound > 0) {
      throw InvalidInput("declared vertices but no facets");
    }
  }

  // Larger facets first, so each candidate only needs testing against
  // already accepted facets.
  std::sort(facets.begin(), facets.end(), [](const Simplex& a, const Simplex& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
  });
  facets.erase(std::unique(facets.begin(), facets.end()), facets.end());

  std::vector<Simplex> accepted;
  std::unordered_map<Vertex, std::vector<std::size_t>> containing;
  for (auto& candidate : facets) {
    // Any facet containing the candidate contains its rarest vertex.
    const std::vector<std::size_t>* best = nullptr;
    bool absent = false;
    for (Vertex v : candidate) {
      auto it = containing.find(v);
      if (it == containing.end()) {
        absent = true;
        break;
      }
      if (!best || it->second.size() < best->size()) best = &it->second;
    }
    bool absorbed = false;
    if (!absent && best) {
      for (std::size_t idx : *best) {
        if (candidate.is_face_of(accepted[idx])) {
          absorbed = true;
          break;
        }
      }
    }
    if (absorbed) continue;
    for (Vertex v : candidate) containing[v].push_back(accepted.size());
    accepted.push_back(std::move(candidate));
  }
  return from_maximal_facets(std::move(accepted), vertex_bound.value_or(max_plus_one), limits);
}

SimplicialComplex SimplicialComplex::from_strata(std::vector<std::vector<Simplex>> strata, Vertex vertex_bound,
                                                 const Limits& limits) {
  while (!strata.empty() && strata.back().empty()) strata.pop_back();
  std::size_t total = 0;
  for (auto& level : strata) {
    std::sort(level.begin(), level.end());
    total += level.size();
  }
  if (total > limits.max_simplices) {
    FVector counts;
    for (const auto& level : strata) counts.push_back(level.size());
    throw BudgetExceeded("simplices", limits.max_simplices, counts);
  }
  std::vector<Simplex> facets;
  for (std::size_t d = 0; d < strata.size(); ++d) {
    std::vector<char> covered(strata[d].size(), 0);
    if (d + 1 < strata.size()) {
      for (const auto& s : strata[d + 1]) {
        for (std::size_t i = 0; i < s.size(); ++i) {
          auto face = s.without_position(i);
          auto it = std::lower_bound(strata[d].begin(), strata[d].end(), face);
          if (it == strata[d].end() || *it != face) {
            throw InvalidInput("strata are not downward closed at " + face.to_string());
          }
          covered[static_cast<std::size_t>(it - strata[d].begin())] = 1;
        }
      }
    }
    for (std::size_t i = 0; i < strata[d].size(); ++i) {
      if (!covered[i]) facets.push_back(strata[d][i]);
    }
  }
  auto data = std::make_shared<Data>();
  data->facets = std::move(facets);
  std::sort(data->facets.begin(), data->facets.end());
  data->vertex_bound = vertex_bound;
  data->limits = limits;
  data->strata = std::move(strata);
  data->materialized.store(true, std::memory_order_release);
  return SimplicialComplex(std::move(data));
}

Vertex SimplicialComplex::vertex_bound() const { return data_->vertex_bound; }
const std::vector<Simplex>& SimplicialComplex::facets() const { return data_->facets; }
const Limits& SimplicialComplex::limits() const { return data_->limits; }

int SimplicialComplex::dim() const {
  int d = -1;
  for (const auto& f : data_->facets) d = std::max(d, f.dim());
  return d;
}

const std::vector<std::vector<Simplex>>& SimplicialComplex::strata() const {
  if (data_->materialized.load(std::memory_order_acquire)) return data_->strata;
  std::lock_guard lock(data_->mutex);
  if (data_->materialized.load(std::memory_order_relaxed)) return data_->strata;

  const int top = dim();
  std::vector<std::vector<Simplex>> strata(static_cast<std::size_t>(top + 1));
  std::size_t total = 0;
  for (int d = 0; d <= top; ++d) {
    std::unordered_set<Simplex, SimplexHash> seen;
    for (const auto& f : data_->facets) {
      if (f.dim() < d) continue;
      if (f.dim() == d) {
        seen.insert(f);
      } else {
        for (auto& s : subsets_of_size(f, static_cast<std::size_t>(d + 1))) {
          seen.insert(std::move(s));
          if (total + seen.size() > data_->limits.max_simplices) {
            FVector counts;
            for (int e = 0; e < d; ++e) counts.push_back(strata[static_cast<std::size_t>(e)].size());
            throw BudgetExceeded("simplices", data_->limits.max_simplices, counts);
          }
        }
      }
    }
    auto& level = strata[static_cast<std::size_t>(d)];
    level.assign(seen.begin(), seen.end());
    std::sort(level.begin(), level.end());
    total += level.size();
    if (total > data_->limits.max_simplices) {
      throw BudgetExceeded("simplices", data_->limits.max_simplices);
    }
  }
  data_->strata = std::move(strata);
  data_->materialized.store(true, std::memory_order_release);
  return data_->strata;
}

const std::vector<Simplex>& SimplicialComplex::faces(int p) const {
  if (p < -1) throw InvalidInput("faces: dimension must be >= -1");
  if (p == -1) return void_stratum();
  const auto& s = strata();
  if (static_cast<std::size_t>(p) >= s.size()) return empty_stratum();
  return s[static_cast<std::size_t>(p)];
}

std::vector<Vertex> SimplicialComplex::vertices() const {
  std::vector<Vertex> out;
  if (data_->materialized.load(std::memory_order_acquire)) {
    for (const auto& s : faces(0)) out.push_back(s[0]);
    return out;
  }
  for (const auto& f : data_->facets) out.insert(out.end(), f.begin(), f.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

FVector SimplicialComplex::f_vector() const {
  FVector out;
  for (const auto& level : strata()) out.push_back(level.size());
  return out;
}

std::size_t SimplicialComplex::num_simplices() const {
  std::size_t n = 0;
  for (const auto& level : strata()) n += level.size();
  return n;
}

bool SimplicialComplex::contains(const Simplex& s) const {
  if (s.empty()) return true;
  if (data_->materialized.load(std::memory_order_acquire)) return index_of(s).has_value();
  return std::any_of(data_->facets.begin(), data_->facets.end(),
                     [&](const Simplex& f) { return s.is_face_of(f); });
}

std::optional<std::size_t> SimplicialComplex::index_of(const Simplex& s) const {
  const auto& level = faces(s.dim());
  auto it = std::lower_bound(level.begin(), level.end(), s);
  if (it == level.end() || *it != s) return std::nullopt;
  return static_cast<std::size_t>(it - level.begin());
}

bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
  return a.facets() == b.facets();
}

// ---------------------------------------------------------------------------
// Constructions

SimplicialComplex simplex_complex(int n) {
  if (n < -1) throw InvalidInput("simplex dimension must be >= -1");
  if (n == -1) return SimplicialComplex();
  Simplex::Storage verts(static_cast<std::size_t>(n + 1));
  std::iota(verts.begin(), verts.end(), Vertex{0});
  return SimplicialComplex::from_maximal_facets({Simplex::from_sorted(std::move(verts))},
                                                static_cast<Vertex>(n + 1));
}

SimplicialComplex boundary_complex(int n) {
  if (n < 0) throw InvalidInput("boundary dimension must be >= 0");
  Simplex::Storage verts(static_cast<std::size_t>(n + 1));
  std::iota(verts.begin(), verts.end(), Vertex{0});
  auto facets = subsets_of_size(Simplex::from_sorted(std::move(verts)), static_cast<std::size_t>(n));
  return SimplicialComplex::from_maximal_facets(std::move(facets), static_cast<Vertex>(n + 1));
}

SimplicialComplex link(const SimplicialComplex& x, const Simplex& sigma) {
  if (!x.contains(sigma)) throw InvalidInput("link: " + sigma.to_string() + " is not a simplex");
  if (sigma.empty()) return x;
  std::vector<Simplex> facets;
  for (const auto& f : x.facets()) {
    if (sigma.is_face_of(f)) facets.push_back(f.minus(sigma));
  }
  // Distinct facets through sigma stay incomparable after removing sigma.
  return SimplicialComplex::from_maximal_facets(std::move(facets), x.vertex_bound(), x.limits());
}

SimplicialComplex skeleton(const SimplicialComplex& x, int d) {
  if (d < 0) throw InvalidInput("skeleton: dimension must be >= 0");
  std::unordered_set<Simplex, SimplexHash> facets;
  for (const auto& f : x.facets()) {
    if (f.dim() <= d) {
      facets.insert(f);
    } else {
      for (auto& s : subsets_of_size(f, static_cast<std::size_t>(d + 1))) {
        facets.insert(std::move(s));
        if (facets.size() > x.limits().max_simplices) {
          throw BudgetExceeded("simplices", x.limits().max_simplices);
        }
      }
    }
  }
  return SimplicialComplex::from_maximal_facets({facets.begin(), facets.end()}, x.vertex_bound(), x.limits());
}

JoinResult join(const SimplicialComplex& x, const SimplicialComplex& y) {
  const Vertex shift = x.vertex_bound();
  std::vector<Simplex> left = x.facets();
  std::vector<Simplex> right;
  for (const auto& g : y.facets()) right.push_back(g.shifted(shift));
  if (left.empty()) left.emplace_back();
  if (right.empty()) right.emplace_back();

  std::vector<Simplex> facets;
  facets.reserve(left.size() * right.size());
  for (const auto& f : left) {
    for (const auto& g : right) facets.push_back(f.union_with(g));
  }
  JoinResult out{SimplicialComplex::from_maximal_facets(std::move(facets), shift + y.vertex_bound(), x.limits()),
                 {}};
  for (Vertex v : x.vertices()) out.table.insert(v, {0, v});
  for (Vertex w : y.vertices()) out.table.insert(shift + w, {1, w});
  return out;
}

DerivedComplex xm_complex(const SimplicialComplex& x, int m) {
  if (m < 1) throw InvalidInput("xm_complex: m must be >= 1");
  std::vector<Simplex> elements;
  for (int d = m - 1; d <= x.dim(); ++d) {
    const auto& level = x.faces(d);
    elements.insert(elements.end(), level.begin(), level.end());
  }
  std::sort(elements.begin(), elements.end());
  std::unordered_map<Simplex, Vertex, SimplexHash> rank;
  DerivedComplex out;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    rank.emplace(elements[i], static_cast<Vertex>(i));
    out.table.insert(static_cast<Vertex>(i), elements[i].to_vector());
  }

  // A maximal chain starts at an m-vertex face of some facet F and adds the
  // remaining vertices of F one at a time.
  std::vector<Simplex> facets;
  const auto m_size = static_cast<std::size_t>(m);
  for (const auto& f : x.facets()) {
    if (f.size() < m_size) continue;
    for (const auto& start : subsets_of_size(f, m_size)) {
      auto rest = f.minus(start).to_vector();
      do {
        Simplex::Storage chain;
        chain.reserve(rest.size() + 1);
        Simplex current = start;
        chain.push_back(rank.at(current));
        for (Vertex v : rest) {
          current = current.with_vertex(v);
          chain.push_back(rank.at(current));
        }
        facets.push_back(Simplex(std::span<const Vertex>(chain.data(), chain.size())));
        if (facets.size() > x.limits().max_simplices) {
          throw BudgetExceeded("simplices", x.limits().max_simplices);
        }
      } while (std::next_permutation(rest.begin(), rest.end()));
    }
  }
  out.complex = SimplicialComplex::from_maximal_facets(std::move(facets), static_cast<Vertex>(elements.size()),
                                                       x.limits());
  return out;
}

DerivedComplex barycentric(const SimplicialComplex& x) {
  if (x.is_empty()) throw InvalidInput("barycentric: complex is empty");
  return xm_complex(x, 1);
}

SimplicialComplex compact_relabel(const SimplicialComplex& x) {
  const auto verts = x.vertices();
  std::vector<Simplex> facets;
  facets.reserve(x.facets().size());
  for (const auto& f : x.facets()) {
    Simplex::Storage s;
    s.reserve(f.size());
    for (Vertex v : f) {
      s.push_back(static_cast<Vertex>(std::lower_bound(verts.begin(), verts.end(), v) - verts.begin()));
    }
    facets.push_back(Simplex::from_sorted(std::move(s)));
  }
  return SimplicialComplex::from_maximal_facets(std::move(facets), static_cast<Vertex>(verts.size()), x.limits());
}

}  // namespace doubling

namespace doubling {

namespace {
std::mutex& limits_mutex() {
  static std::mutex m;
  return m;
}
Limits& global_limits() {
  static Limits l;
  return l;
}
}  // namespace

Limits default_limits() {
  std::lock_guard lock(limits_mutex());
  return global_limits();
}

void set_default_limits(const Limits& limits) {
  std::lock_guard lock(limits_mutex());
  global_limits() = limits;
}

}  // namespace doubling

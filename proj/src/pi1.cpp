#include "doubling/homology.hpp"

#include <algorithm>
#include <deque>

namespace doubling {

namespace {

// A letter is a generator index with exponent +1 or -1.
struct Letter {
  std::size_t gen;
  int sign;
};

class Presentation {
 public:
  explicit Presentation(std::size_t generators)
      : parent_(generators), sign_(generators, 1), trivial_(generators, 0) {
    for (std::size_t i = 0; i < generators; ++i) parent_[i] = i;
  }

  // Representative of g as root^sign, or nullopt when g is trivial.
  std::optional<Letter> resolve(Letter l) {
    int s = l.sign;
    std::size_t g = l.gen;
    while (parent_[g] != g) {
      s *= sign_[g];
      g = parent_[g];
    }
    if (trivial_[g]) return std::nullopt;
    return Letter{g, s};
  }

  void kill(std::size_t root) { trivial_[root] = 1; }

  // root_a = root_b^sign
  void identify(std::size_t root_a, std::size_t root_b, int sign) {
    parent_[root_a] = root_b;
    sign_[root_a] = sign;
  }

  bool all_trivial() {
    for (std::size_t g = 0; g < parent_.size(); ++g) {
      if (resolve({g, 1})) return false;
    }
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<int> sign_;
  std::vector<char> trivial_;
};

// Free and cyclic reduction in place.
void reduce(std::vector<Letter>& w) {
  std::vector<Letter> out;
  for (const auto& l : w) {
    if (!out.empty() && out.back().gen == l.gen && out.back().sign == -l.sign) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  std::size_t lo = 0, hi = out.size();
  while (hi - lo >= 2 && out[lo].gen == out[hi - 1].gen && out[lo].sign == -out[hi - 1].sign) {
    ++lo;
    --hi;
  }
  w.assign(out.begin() + static_cast<std::ptrdiff_t>(lo), out.begin() + static_cast<std::ptrdiff_t>(hi));
}

}  // namespace

Pi1Status pi1_triviality(const SimplicialComplex& x) {
  if (x.is_empty()) throw InvalidInput("pi1_triviality: complex is empty");
  const auto verts = x.vertices();
  const auto& edges = x.faces(1);
  auto edge_index = [&](Vertex a, Vertex b) { return *x.index_of(Simplex{a, b}); };

  // BFS spanning tree on the 1-skeleton.
  std::vector<std::vector<Vertex>> adjacency(verts.size());
  auto local = [&](Vertex v) {
    return static_cast<std::size_t>(std::lower_bound(verts.begin(), verts.end(), v) - verts.begin());
  };
  for (const auto& e : edges) {
    adjacency[local(e[0])].push_back(e[1]);
    adjacency[local(e[1])].push_back(e[0]);
  }
  std::vector<char> in_tree_edge(edges.size(), 0);
  std::vector<char> seen(verts.size(), 0);
  std::deque<Vertex> queue{verts.front()};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    for (Vertex w : adjacency[local(v)]) {
      if (seen[local(w)]) continue;
      seen[local(w)] = 1;
      ++reached;
      in_tree_edge[edge_index(std::min(v, w), std::max(v, w))] = 1;
      queue.push_back(w);
    }
  }
  if (reached != verts.size()) throw InvalidInput("pi1_triviality: complex is not path-connected");

  std::vector<std::size_t> generator_of(edges.size(), static_cast<std::size_t>(-1));
  std::size_t generators = 0;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (!in_tree_edge[e]) generator_of[e] = generators++;
  }
  if (generators == 0) return Pi1Status::TrivialCertified;

  // Triangle {a<b<c} gives the relator e_ab e_bc e_ac^{-1}.
  std::vector<std::vector<Letter>> relators;
  for (const auto& t : x.faces(2)) {
    std::vector<Letter> w;
    auto push = [&](Vertex a, Vertex b, int sign) {
      auto g = generator_of[edge_index(a, b)];
      if (g != static_cast<std::size_t>(-1)) w.push_back({g, sign});
    };
    push(t[0], t[1], 1);
    push(t[1], t[2], 1);
    push(t[0], t[2], -1);
    if (!w.empty()) relators.push_back(std::move(w));
  }

  Presentation pres(generators);
  std::size_t steps = 0;
  const std::size_t budget = x.limits().max_tietze_steps;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& relator : relators) {
      if (++steps > budget) return Pi1Status::Inconclusive;
      std::vector<Letter> w;
      for (const auto& l : relator) {
        if (auto r = pres.resolve(l)) w.push_back(*r);
      }
      reduce(w);
      if (w.size() == 1) {
        pres.kill(w[0].gen);
        changed = true;
      } else if (w.size() == 2 && w[0].gen != w[1].gen) {
        // a^s b^t = 1  =>  a = b^{-s t}
        pres.identify(w[0].gen, w[1].gen, -w[0].sign * w[1].sign);
        changed = true;
      }
    }
  }
  if (pres.all_trivial()) return Pi1Status::TrivialCertified;

  ConnectivityOptions up_to_one;
  up_to_one.up_to = 1;
  const auto h = homological_connectivity(x, up_to_one);
  if (!h.achieves(1)) return Pi1Status::NontrivialCertified;
  return Pi1Status::Inconclusive;
}

}  // namespace doubling

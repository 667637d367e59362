#include "doubling/isomorphism.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

namespace doubling {

bool is_facet_bijection(const SimplicialComplex& x, const SimplicialComplex& y,
                        const std::map<Vertex, Vertex>& bijection) {
  if (x.facets().size() != y.facets().size()) return false;
  std::set<Vertex> image;
  for (const auto& [from, to] : bijection) image.insert(to);
  if (image.size() != bijection.size()) return false;
  std::unordered_set<Simplex, SimplexHash> targets(y.facets().begin(), y.facets().end());
  std::unordered_set<Simplex, SimplexHash> hit;
  for (const auto& f : x.facets()) {
    Simplex::Storage mapped;
    for (Vertex v : f) {
      auto it = bijection.find(v);
      if (it == bijection.end()) return false;
      mapped.push_back(it->second);
    }
    Simplex s(std::span<const Vertex>(mapped.data(), mapped.size()));
    if (s.size() != f.size() || !targets.count(s)) return false;
    hit.insert(std::move(s));
  }
  return hit.size() == targets.size();
}

namespace {

struct Side {
  std::vector<Vertex> verts;
  std::vector<std::vector<char>> adjacent;  // compact index -> compact index
  std::vector<int> colour;
};

std::size_t compact(const std::vector<Vertex>& verts, Vertex v) {
  return static_cast<std::size_t>(std::lower_bound(verts.begin(), verts.end(), v) - verts.begin());
}

Side prepare(const SimplicialComplex& x) {
  Side side;
  side.verts = x.vertices();
  const std::size_t n = side.verts.size();
  side.adjacent.assign(n, std::vector<char>(n, 0));
  for (const auto& e : x.faces(1)) {
    auto a = compact(side.verts, e[0]);
    auto b = compact(side.verts, e[1]);
    side.adjacent[a][b] = side.adjacent[b][a] = 1;
  }
  return side;
}

// Initial vertex signature: sizes of facets through v, then the link f-vector.
std::vector<std::size_t> signature(const SimplicialComplex& x, Vertex v) {
  std::vector<std::size_t> sizes;
  for (const auto& f : x.facets()) {
    if (f.contains(v)) sizes.push_back(f.size());
  }
  std::sort(sizes.begin(), sizes.end());
  sizes.push_back(0);
  auto fv = link(x, Simplex{v}).f_vector();
  sizes.insert(sizes.end(), fv.begin(), fv.end());
  return sizes;
}

void refine(Side& a, Side& b) {
  // Colours are drawn from one dictionary so they stay comparable across sides.
  for (int round = 0; round < 64; ++round) {
    std::map<std::vector<int>, int> dictionary;
    auto recolour = [&](const Side& s) {
      std::vector<std::vector<int>> keys(s.verts.size());
      for (std::size_t i = 0; i < s.verts.size(); ++i) {
        std::vector<int> neighbours;
        for (std::size_t j = 0; j < s.verts.size(); ++j) {
          if (s.adjacent[i][j]) neighbours.push_back(s.colour[j]);
        }
        std::sort(neighbours.begin(), neighbours.end());
        keys[i].push_back(s.colour[i]);
        keys[i].insert(keys[i].end(), neighbours.begin(), neighbours.end());
        dictionary.emplace(keys[i], 0);
      }
      return keys;
    };
    auto ka = recolour(a);
    auto kb = recolour(b);
    int next = 0;
    for (auto& [key, id] : dictionary) id = next++;
    std::set<int> before_a(a.colour.begin(), a.colour.end());
    for (std::size_t i = 0; i < ka.size(); ++i) a.colour[i] = dictionary[ka[i]];
    for (std::size_t i = 0; i < kb.size(); ++i) b.colour[i] = dictionary[kb[i]];
    std::set<int> after_a(a.colour.begin(), a.colour.end());
    if (after_a.size() == before_a.size()) break;
  }
}

class Search {
 public:
  Search(const SimplicialComplex& x, const SimplicialComplex& y, Side& a, Side& b, std::size_t budget)
      : x_(x), y_(y), a_(a), b_(b), budget_(budget) {
    order_vertices();
    image_.assign(a_.verts.size(), kUnset);
    used_.assign(b_.verts.size(), 0);
  }

  IsoResult run() {
    IsoResult result;
    bool found = false;
    try {
      found = extend(0);
    } catch (const OutOfNodes&) {
      result.outcome = IsoOutcome::Inconclusive;
      result.nodes_visited = nodes_;
      return result;
    }
    result.nodes_visited = nodes_;
    if (found) {
      result.outcome = IsoOutcome::Found;
      result.bijection = current_map();
    } else {
      result.outcome = IsoOutcome::Absent;
    }
    return result;
  }

 private:
  struct OutOfNodes {};
  static constexpr std::size_t kUnset = static_cast<std::size_t>(-1);

  void order_vertices() {
    const std::size_t n = a_.verts.size();
    std::map<int, std::size_t> class_size;
    for (int c : a_.colour) ++class_size[c];
    std::vector<char> placed(n, 0);
    for (std::size_t step = 0; step < n; ++step) {
      std::size_t best = kUnset;
      std::tuple<std::size_t, std::size_t, std::size_t> best_key{};
      for (std::size_t i = 0; i < n; ++i) {
        if (placed[i]) continue;
        std::size_t links = 0;
        for (std::size_t j : order_) links += a_.adjacent[i][j] ? 1 : 0;
        // most connections to placed vertices, then rarest colour, then id
        std::tuple<std::size_t, std::size_t, std::size_t> key{n - links, class_size[a_.colour[i]], i};
        if (best == kUnset || key < best_key) {
          best = i;
          best_key = key;
        }
      }
      placed[best] = 1;
      order_.push_back(best);
    }
  }

  bool consistent(std::size_t i, std::size_t candidate) const {
    for (std::size_t j : order_) {
      if (image_[j] == kUnset) break;
      if (a_.adjacent[i][j] != b_.adjacent[candidate][image_[j]]) return false;
    }
    return true;
  }

  std::map<Vertex, Vertex> current_map() const {
    std::map<Vertex, Vertex> m;
    for (std::size_t i = 0; i < a_.verts.size(); ++i) m.emplace(a_.verts[i], b_.verts[image_[i]]);
    return m;
  }

  bool extend(std::size_t depth) {
    if (++nodes_ > budget_) throw OutOfNodes{};
    if (depth == order_.size()) return is_facet_bijection(x_, y_, current_map());
    const std::size_t i = order_[depth];
    for (std::size_t c = 0; c < b_.verts.size(); ++c) {
      if (used_[c] || b_.colour[c] != a_.colour[i]) continue;
      if (!consistent(i, c)) continue;
      image_[i] = c;
      used_[c] = 1;
      if (extend(depth + 1)) return true;
      image_[i] = kUnset;
      used_[c] = 0;
    }
    return false;
  }

  const SimplicialComplex& x_;
  const SimplicialComplex& y_;
  Side& a_;
  Side& b_;
  std::size_t budget_;
  std::size_t nodes_ = 0;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> image_;
  std::vector<char> used_;
};

}  // namespace

IsoResult is_isomorphic(const SimplicialComplex& x, const SimplicialComplex& y) {
  IsoResult absent;
  if (x.f_vector() != y.f_vector()) return absent;
  std::multiset<std::size_t> fx, fy;
  for (const auto& f : x.facets()) fx.insert(f.size());
  for (const auto& f : y.facets()) fy.insert(f.size());
  if (fx != fy) return absent;

  Side a = prepare(x);
  Side b = prepare(y);
  std::map<std::vector<std::size_t>, int> dictionary;
  std::vector<std::vector<std::size_t>> sa, sb;
  for (Vertex v : a.verts) dictionary.emplace(sa.emplace_back(signature(x, v)), 0);
  for (Vertex v : b.verts) dictionary.emplace(sb.emplace_back(signature(y, v)), 0);
  int next = 0;
  for (auto& [key, id] : dictionary) id = next++;
  for (auto& s : sa) a.colour.push_back(dictionary[s]);
  for (auto& s : sb) b.colour.push_back(dictionary[s]);
  refine(a, b);

  std::vector<int> ca = a.colour, cb = b.colour;
  std::sort(ca.begin(), ca.end());
  std::sort(cb.begin(), cb.end());
  if (ca != cb) return absent;

  Search search(x, y, a, b, x.limits().max_iso_nodes);
  return search.run();
}

}  // namespace doubling

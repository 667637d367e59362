#include "doubling/simplex.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace doubling {

Simplex::Simplex(std::initializer_list<Vertex> vertices)
    : Simplex(std::span<const Vertex>(vertices.begin(), vertices.size())) {}

Simplex::Simplex(std::span<const Vertex> vertices) : vertices_(vertices.begin(), vertices.end()) {
  std::sort(vertices_.begin(), vertices_.end());
  vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());
}

Simplex Simplex::from_sorted(Storage vertices) {
  Simplex s;
  s.vertices_ = std::move(vertices);
  return s;
}

bool Simplex::contains(Vertex v) const {
  return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

bool Simplex::is_face_of(const Simplex& other) const {
  return std::includes(other.vertices_.begin(), other.vertices_.end(), vertices_.begin(),
                       vertices_.end());
}

bool Simplex::disjoint_from(const Simplex& other) const {
  auto a = vertices_.begin();
  auto b = other.vertices_.begin();
  while (a != vertices_.end() && b != other.vertices_.end()) {
    if (*a == *b) return false;
    if (*a < *b) {
      ++a;
    } else {
      ++b;
    }
  }
  return true;
}

Simplex Simplex::union_with(const Simplex& other) const {
  Storage out;
  out.reserve(size() + other.size());
  std::set_union(vertices_.begin(), vertices_.end(), other.vertices_.begin(), other.vertices_.end(),
                 std::back_inserter(out));
  return from_sorted(std::move(out));
}

Simplex Simplex::intersection(const Simplex& other) const {
  Storage out;
  std::set_intersection(vertices_.begin(), vertices_.end(), other.vertices_.begin(),
                        other.vertices_.end(), std::back_inserter(out));
  return from_sorted(std::move(out));
}

Simplex Simplex::minus(const Simplex& other) const {
  Storage out;
  std::set_difference(vertices_.begin(), vertices_.end(), other.vertices_.begin(),
                      other.vertices_.end(), std::back_inserter(out));
  return from_sorted(std::move(out));
}

Simplex Simplex::without_position(std::size_t position) const {
  Storage out;
  out.reserve(size() - 1);
  for (std::size_t i = 0; i < size(); ++i) {
    if (i != position) out.push_back(vertices_[i]);
  }
  return from_sorted(std::move(out));
}

Simplex Simplex::with_vertex(Vertex v) const {
  Storage out = vertices_;
  auto it = std::lower_bound(out.begin(), out.end(), v);
  if (it == out.end() || *it != v) out.insert(it, v);
  return from_sorted(std::move(out));
}

Simplex Simplex::shifted(Vertex offset) const {
  Storage out = vertices_;
  for (auto& v : out) v += offset;
  return from_sorted(std::move(out));
}

std::string Simplex::to_string() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::strong_ordering operator<=>(const Simplex& a, const Simplex& b) {
  return std::lexicographical_compare_three_way(a.vertices_.begin(), a.vertices_.end(),
                                                b.vertices_.begin(), b.vertices_.end());
}

std::ostream& operator<<(std::ostream& os, const Simplex& s) {
  os << '{';
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) os << ',';
    os << s[i];
  }
  return os << '}';
}

std::size_t SimplexHash::operator()(const Simplex& s) const noexcept {
  // FNV-1a over the vertex ids.
  std::uint64_t h = 1469598103934665603ULL;
  for (Vertex v : s) {
    h ^= v;
    h *= 1099511628211ULL;
  }
  h ^= s.size();
  return static_cast<std::size_t>(h);
}

std::vector<Simplex> subsets_of_size(const Simplex& s, std::size_t k) {
  std::vector<Simplex> out;
  if (k > s.size()) return out;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  const std::size_t n = s.size();
  while (true) {
    Simplex::Storage verts;
    verts.reserve(k);
    for (std::size_t i : idx) verts.push_back(s[i]);
    out.push_back(Simplex::from_sorted(std::move(verts)));
    // advance to the next combination in lexicographic order
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

}  // namespace doubling

#pragma once

#include <boost/container/small_vector.hpp>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace doubling {

using Vertex = std::uint32_t;

/// A finite set of vertex identifiers kept in canonical (strictly increasing)
/// order. The default-constructed simplex is the empty simplex, of dimension -1.
class Simplex {
 public:
  using Storage = boost::container::small_vector<Vertex, 8>;
  using const_iterator = Storage::const_iterator;

  Simplex() = default;
  Simplex(std::initializer_list<Vertex> vertices);
  /// Sorts and removes duplicates.
  explicit Simplex(std::span<const Vertex> vertices);

  /// Wraps an already strictly increasing sequence without re-sorting.
  static Simplex from_sorted(Storage vertices);

  [[nodiscard]] int dim() const { return static_cast<int>(vertices_.size()) - 1; }
  [[nodiscard]] std::size_t size() const { return vertices_.size(); }
  [[nodiscard]] bool empty() const { return vertices_.empty(); }
  [[nodiscard]] Vertex operator[](std::size_t i) const { return vertices_[i]; }
  [[nodiscard]] Vertex front() const { return vertices_.front(); }
  [[nodiscard]] Vertex back() const { return vertices_.back(); }
  [[nodiscard]] const_iterator begin() const { return vertices_.begin(); }
  [[nodiscard]] const_iterator end() const { return vertices_.end(); }
  [[nodiscard]] std::span<const Vertex> span() const { return {vertices_.data(), vertices_.size()}; }

  [[nodiscard]] bool contains(Vertex v) const;
  [[nodiscard]] bool is_face_of(const Simplex& other) const;
  [[nodiscard]] bool disjoint_from(const Simplex& other) const;

  [[nodiscard]] Simplex union_with(const Simplex& other) const;
  [[nodiscard]] Simplex intersection(const Simplex& other) const;
  [[nodiscard]] Simplex minus(const Simplex& other) const;
  /// The codimension-one face obtained by dropping the vertex at `position`.
  [[nodiscard]] Simplex without_position(std::size_t position) const;
  [[nodiscard]] Simplex with_vertex(Vertex v) const;
  [[nodiscard]] Simplex shifted(Vertex offset) const;

  [[nodiscard]] std::vector<Vertex> to_vector() const { return {vertices_.begin(), vertices_.end()}; }
  [[nodiscard]] std::string to_string() const;

  /// Lexicographic order on the vertex sequences; a proper prefix sorts first.
  friend std::strong_ordering operator<=>(const Simplex& a, const Simplex& b);
  friend bool operator==(const Simplex& a, const Simplex& b) { return a.vertices_ == b.vertices_; }

 private:
  Storage vertices_;
};

std::ostream& operator<<(std::ostream& os, const Simplex& s);

struct SimplexHash {
  std::size_t operator()(const Simplex& s) const noexcept;
};

/// Every k-element subset of `s`, in lexicographic order.
std::vector<Simplex> subsets_of_size(const Simplex& s, std::size_t k);

}  // namespace doubling

template <>
struct std::hash<doubling::Simplex> : doubling::SimplexHash {};

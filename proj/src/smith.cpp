#include "doubling/smith.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <tuple>

namespace doubling {

SparseMatrix SparseMatrix::from_dense(const std::vector<std::vector<std::int64_t>>& dense) {
  SparseMatrix m(dense.size(), dense.empty() ? 0 : dense.front().size());
  for (std::size_t r = 0; r < m.rows; ++r) {
    if (dense[r].size() != m.cols) throw InvalidInput("from_dense: ragged rows");
    for (std::size_t c = 0; c < m.cols; ++c) {
      if (dense[r][c] != 0) m.columns[c].emplace_back(static_cast<std::uint32_t>(r), dense[r][c]);
    }
  }
  return m;
}

std::vector<std::vector<std::int64_t>> SparseMatrix::to_dense() const {
  std::vector<std::vector<std::int64_t>> dense(rows, std::vector<std::int64_t>(cols, 0));
  for (std::size_t c = 0; c < cols; ++c) {
    for (const auto& [r, v] : columns[c]) dense[r][c] = v;
  }
  return dense;
}

std::size_t SparseMatrix::nnz() const {
  std::size_t n = 0;
  for (const auto& c : columns) n += c.size();
  return n;
}

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols != b.rows) throw InvalidInput("multiply: shape mismatch");
  SparseMatrix out(a.rows, b.cols);
  for (std::size_t j = 0; j < b.cols; ++j) {
    std::map<std::uint32_t, std::int64_t> acc;
    for (const auto& [k, bv] : b.columns[j]) {
      for (const auto& [i, av] : a.columns[k]) {
        std::int64_t prod = 0;
        if (__builtin_mul_overflow(av, bv, &prod) || __builtin_add_overflow(acc[i], prod, &acc[i])) {
          throw std::overflow_error("multiply: 64-bit overflow");
        }
      }
    }
    for (const auto& [i, v] : acc) {
      if (v != 0) out.columns[j].emplace_back(i, v);
    }
  }
  return out;
}

std::vector<mpz_class> SmithForm::invariant_factors() const {
  std::vector<mpz_class> out(rank - torsion.size(), mpz_class(1));
  out.insert(out.end(), torsion.begin(), torsion.end());
  return out;
}

namespace {

struct Overflow {};

// Arithmetic shims so the elimination can run on either integer type.
inline bool is_zero(std::int64_t x) { return x == 0; }
inline bool is_zero(const mpz_class& x) { return sgn(x) == 0; }
inline bool is_unit(std::int64_t x) { return x == 1 || x == -1; }
inline bool is_unit(const mpz_class& x) { return mpz_cmpabs_ui(x.get_mpz_t(), 1) == 0; }
inline bool abs_less(std::int64_t a, std::int64_t b) {
  // compare as unsigned magnitudes so INT64_MIN is handled
  auto ua = a < 0 ? 0 - static_cast<std::uint64_t>(a) : static_cast<std::uint64_t>(a);
  auto ub = b < 0 ? 0 - static_cast<std::uint64_t>(b) : static_cast<std::uint64_t>(b);
  return ua < ub;
}
inline bool abs_less(const mpz_class& a, const mpz_class& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()) < 0; }
inline std::int64_t quotient(std::int64_t b, std::int64_t a) {
  if (a == -1 && b == std::numeric_limits<std::int64_t>::min()) throw Overflow{};
  return b / a;
}
inline mpz_class quotient(const mpz_class& b, const mpz_class& a) {
  mpz_class q;
  mpz_tdiv_q(q.get_mpz_t(), b.get_mpz_t(), a.get_mpz_t());
  return q;
}
inline std::int64_t fused_sub(std::int64_t x, std::int64_t q, std::int64_t y) {
  std::int64_t p = 0;
  std::int64_t r = 0;
  if (__builtin_mul_overflow(q, y, &p) || __builtin_sub_overflow(x, p, &r)) throw Overflow{};
  return r;
}
inline mpz_class fused_sub(const mpz_class& x, const mpz_class& q, const mpz_class& y) { return x - q * y; }
inline mpz_class magnitude(std::int64_t x) {
  mpz_class m(static_cast<long>(x));
  return abs(m);
}
inline mpz_class magnitude(const mpz_class& x) { return abs(x); }

template <class Int>
class Eliminator {
 public:
  using Row = std::vector<std::pair<std::uint32_t, Int>>;

  Eliminator(const SparseMatrix& m) : rows_(m.rows), col_rows_(m.cols), row_alive_(m.rows, 1) {
    for (std::size_t c = 0; c < m.cols; ++c) {
      for (const auto& [r, v] : m.columns[c]) {
        rows_[r].emplace_back(static_cast<std::uint32_t>(c), Int(static_cast<long>(v)));
        col_rows_[c].push_back(r);
      }
    }
  }

  std::vector<mpz_class> run() {
    std::vector<mpz_class> diagonal;
    while (true) {
      auto pivot = choose_pivot();
      if (!pivot) break;
      if (auto d = eliminate(pivot->first, pivot->second)) diagonal.push_back(std::move(*d));
    }
    return diagonal;
  }

 private:
  std::optional<std::pair<std::uint32_t, std::uint32_t>> choose_pivot() const {
    std::optional<std::pair<std::uint32_t, std::uint32_t>> best;
    // (non-unit, markowitz cost, row, col); magnitude compared separately
    std::tuple<int, std::size_t, std::uint32_t, std::uint32_t> best_key{};
    const Int* best_value = nullptr;
    for (std::uint32_t r = 0; r < rows_.size(); ++r) {
      if (!row_alive_[r] || rows_[r].empty()) continue;
      const std::size_t row_cost = rows_[r].size() - 1;
      for (const auto& [c, v] : rows_[r]) {
        std::tuple<int, std::size_t, std::uint32_t, std::uint32_t> key{
            is_unit(v) ? 0 : 1, row_cost * (col_rows_[c].size() - 1), r, c};
        bool better = false;
        if (!best) {
          better = true;
        } else if (std::get<0>(key) != std::get<0>(best_key)) {
          better = std::get<0>(key) < std::get<0>(best_key);
        } else if (std::get<0>(key) == 1 && (abs_less(v, *best_value) || abs_less(*best_value, v))) {
          better = abs_less(v, *best_value);
        } else {
          better = key < best_key;
        }
        if (better) {
          best = std::pair{r, c};
          best_key = key;
          best_value = &v;
          if (std::get<0>(key) == 0 && std::get<1>(key) == 0) return best;
        }
      }
    }
    return best;
  }

  Int& entry(std::uint32_t r, std::uint32_t c) {
    auto& row = rows_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const auto& e, std::uint32_t col) { return e.first < col; });
    return it->second;
  }

  // row_k -= q * row_p, keeping the column index in sync.
  void row_subtract(std::uint32_t k, const Int& q, std::uint32_t p) {
    const Row& src = rows_[p];
    Row& dst = rows_[k];
    Row merged;
    merged.reserve(dst.size() + src.size());
    auto a = dst.begin();
    auto b = src.begin();
    while (a != dst.end() || b != src.end()) {
      if (b == src.end() || (a != dst.end() && a->first < b->first)) {
        merged.push_back(std::move(*a++));
      } else if (a == dst.end() || b->first < a->first) {
        Int v = fused_sub(Int(0), q, b->second);
        if (!is_zero(v)) {
          merged.emplace_back(b->first, std::move(v));
          col_rows_[b->first].push_back(k);
        }
        ++b;
      } else {
        Int v = fused_sub(a->second, q, b->second);
        if (is_zero(v)) {
          auto& list = col_rows_[a->first];
          list.erase(std::find(list.begin(), list.end(), k));
        } else {
          merged.emplace_back(a->first, std::move(v));
        }
        ++a;
        ++b;
      }
    }
    dst = std::move(merged);
  }

  // Reduces the pivot's column and row. Returns the diagonal entry once the
  // pivot divides everything in them, or nothing when a smaller remainder
  // appeared and the pivot has to be chosen again.
  std::optional<mpz_class> eliminate(std::uint32_t pr, std::uint32_t pc) {
    bool remainder = false;
    const std::vector<std::uint32_t> others = col_rows_[pc];
    for (std::uint32_t k : others) {
      if (k == pr) continue;
      const Int a = entry(pr, pc);
      const Int q = quotient(entry(k, pc), a);
      if (!is_zero(q)) row_subtract(k, q, pr);
      remainder = remainder || std::find(col_rows_[pc].begin(), col_rows_[pc].end(), k) != col_rows_[pc].end();
    }
    if (remainder) return std::nullopt;
    // The column is now just the pivot, so a column operation touches only
    // the pivot row.
    const Int a = entry(pr, pc);
    for (auto& [c, v] : rows_[pr]) {
      if (c == pc) continue;
      const Int q = quotient(v, a);
      Int rem = fused_sub(v, q, a);
      if (!is_zero(rem)) remainder = true;
      v = std::move(rem);
    }
    if (remainder) {
      Row kept;
      for (auto& [c, v] : rows_[pr]) {
        if (c == pc || !is_zero(v)) {
          kept.emplace_back(c, std::move(v));
        } else {
          auto& list = col_rows_[c];
          list.erase(std::find(list.begin(), list.end(), pr));
        }
      }
      rows_[pr] = std::move(kept);
      return std::nullopt;
    }
    mpz_class d = magnitude(a);
    for (const auto& [c, v] : rows_[pr]) {
      auto& list = col_rows_[c];
      list.erase(std::find(list.begin(), list.end(), pr));
    }
    rows_[pr].clear();
    row_alive_[pr] = 0;
    return d;
  }

  std::vector<Row> rows_;
  std::vector<std::vector<std::uint32_t>> col_rows_;
  std::vector<char> row_alive_;
};

// diag(a, b) is equivalent to diag(gcd, lcm); sweeping pairwise leaves a
// divisibility chain.
std::vector<mpz_class> to_divisibility_chain(std::vector<mpz_class> d) {
  std::sort(d.begin(), d.end());
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      mpz_class g = gcd(d[i], d[j]);
      if (g == d[i]) continue;
      mpz_class l = lcm(d[i], d[j]);
      d[i] = g;
      d[j] = l;
    }
  }
  return d;
}

}  // namespace

SmithForm smith_normal_form(const SparseMatrix& m, const Limits& limits) {
  if (m.nnz() > limits.max_matrix_entries) throw BudgetExceeded("matrix entries", limits.max_matrix_entries);
  std::vector<mpz_class> diagonal;
  try {
    diagonal = Eliminator<std::int64_t>(m).run();
  } catch (const Overflow&) {
    diagonal = Eliminator<mpz_class>(m).run();
  }
  SmithForm out;
  out.rank = diagonal.size();
  std::vector<mpz_class> non_unit;
  for (auto& d : diagonal) {
    if (d != 1) non_unit.push_back(std::move(d));
  }
  for (auto& d : to_divisibility_chain(std::move(non_unit))) {
    if (d != 1) out.torsion.push_back(std::move(d));
  }
  return out;
}

std::size_t rank_mod_p(const SparseMatrix& m, std::uint32_t p) {
  if (p < 2) throw InvalidInput("rank_mod_p: modulus must be prime");
  using Row = std::vector<std::pair<std::uint32_t, std::uint64_t>>;
  auto reduce = [p](std::int64_t v) {
    auto r = v % static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(r < 0 ? r + p : r);
  };
  auto inverse = [p](std::uint64_t a) {
    std::uint64_t result = 1, base = a % p, e = p - 2;
    while (e) {
      if (e & 1) result = result * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return result;
  };
  // Work on columns: each column becomes a sparse vector over the rows.
  std::map<std::uint32_t, Row> pivots;  // leading row -> normalized vector
  for (const auto& col : m.columns) {
    Row v;
    for (const auto& [r, x] : col) {
      auto y = reduce(x);
      if (y) v.emplace_back(r, y);
    }
    while (!v.empty()) {
      auto it = pivots.find(v.front().first);
      if (it == pivots.end()) {
        auto inv = inverse(v.front().second);
        for (auto& e : v) e.second = e.second * inv % p;
        pivots.emplace(v.front().first, std::move(v));
        break;
      }
      const Row& piv = it->second;
      const std::uint64_t factor = v.front().second;
      Row merged;
      auto a = v.begin();
      auto b = piv.begin();
      while (a != v.end() || b != piv.end()) {
        if (b == piv.end() || (a != v.end() && a->first < b->first)) {
          merged.push_back(*a++);
        } else if (a == v.end() || b->first < a->first) {
          merged.emplace_back(b->first, (p - factor * b->second % p) % p);
          ++b;
        } else {
          auto val = (a->second + p - factor * b->second % p) % p;
          if (val) merged.emplace_back(a->first, val);
          ++a;
          ++b;
        }
      }
      v = std::move(merged);
    }
  }
  return pivots.size();
}

}  // namespace doubling

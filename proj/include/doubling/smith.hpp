#pragma once

#include "doubling/errors.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

namespace doubling {

/// Column-major sparse integer matrix. Each column lists (row, value) pairs
/// sorted by row with no explicit zeros.
struct SparseMatrix {
  using Entry = std::pair<std::uint32_t, std::int64_t>;

  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::vector<Entry>> columns;

  SparseMatrix() = default;
  SparseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), columns(c) {}

  static SparseMatrix from_dense(const std::vector<std::vector<std::int64_t>>& dense);
  [[nodiscard]] std::vector<std::vector<std::int64_t>> to_dense() const;
  [[nodiscard]] std::size_t nnz() const;
  [[nodiscard]] bool is_zero() const { return nnz() == 0; }
};

/// a * b with overflow-checked 64-bit accumulation.
SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b);

struct SmithForm {
  std::size_t rank = 0;
  /// Invariant factors greater than one, each dividing the next.
  std::vector<mpz_class> torsion;

  /// Full diagonal: rank - torsion.size() ones followed by the torsion.
  [[nodiscard]] std::vector<mpz_class> invariant_factors() const;
};

/// Invariant factors by sparse elimination. Pivots are chosen by smallest
/// Markowitz cost (r-1)(c-1) among entries of least absolute value, ties
/// broken by (row, column). Arithmetic starts in checked 64-bit integers and
/// restarts in GMP if any intermediate overflows.
SmithForm smith_normal_form(const SparseMatrix& m, const Limits& limits = default_limits());

/// Rank over F_p; p must be prime.
std::size_t rank_mod_p(const SparseMatrix& m, std::uint32_t p);

}  // namespace doubling

#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace doubling {

/// Resource caps shared by every construction. Exceeding one raises
/// BudgetExceeded; nothing is ever silently truncated.
struct Limits {
  std::size_t max_simplices = 5'000'000;
  std::size_t max_matrix_entries = 50'000'000;
  std::size_t max_iso_nodes = 2'000'000;
  std::size_t max_tietze_steps = 1'000'000;
  std::uint32_t max_vertex_id = 1u << 24;
};

/// Limits used wherever none are passed explicitly. The CLI sets them once
/// from its budget flags before doing any work.
Limits default_limits();
void set_default_limits(const Limits& limits);

class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::string resource, std::size_t limit, std::vector<std::size_t> partial_counts = {})
      : std::runtime_error("budget exceeded: " + resource + " > " + std::to_string(limit)),
        resource_(std::move(resource)),
        limit_(limit),
        partial_counts_(std::move(partial_counts)) {}

  [[nodiscard]] const std::string& resource() const { return resource_; }
  [[nodiscard]] std::size_t limit() const { return limit_; }
  /// Per-dimension counts of whatever was completed before the cap was hit.
  [[nodiscard]] const std::vector<std::size_t>& partial_counts() const { return partial_counts_; }

 private:
  std::string resource_;
  std::size_t limit_;
  std::vector<std::size_t> partial_counts_;
};

}  // namespace doubling

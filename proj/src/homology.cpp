#include "doubling/homology.hpp"

#include <algorithm>

namespace doubling {

ChainComplex::ChainComplex(std::vector<std::size_t> basis_sizes, std::vector<SparseMatrix> boundaries,
                           bool truncated)
    : basis_sizes_(std::move(basis_sizes)), boundaries_(std::move(boundaries)), truncated_(truncated) {
  if (boundaries_.size() != basis_sizes_.size()) throw InvalidInput("chain complex: one boundary per degree");
  for (std::size_t p = 0; p < boundaries_.size(); ++p) {
    const std::size_t rows = p == 0 ? 1 : basis_sizes_[p - 1];
    if (boundaries_[p].rows != rows || boundaries_[p].cols != basis_sizes_[p]) {
      throw InvalidInput("chain complex: boundary " + std::to_string(p) + " has the wrong shape");
    }
  }
  for (std::size_t p = 0; p + 1 < boundaries_.size(); ++p) {
    if (!multiply(boundaries_[p], boundaries_[p + 1]).is_zero()) {
      throw InvalidInput("chain complex: boundary of boundary is non-zero in degree " + std::to_string(p + 1));
    }
  }
}

ChainComplex ChainComplex::of(const SimplicialComplex& x, std::optional<int> max_degree) {
  int top = x.dim();
  bool truncated = false;
  if (max_degree && *max_degree + 1 < top) {
    top = *max_degree + 1;
    truncated = true;
  }
  std::vector<std::size_t> sizes;
  std::vector<SparseMatrix> boundaries;
  for (int p = 0; p <= top; ++p) {
    sizes.push_back(x.faces(p).size());
    boundaries.push_back(boundary_matrix(x, p));
  }
  return ChainComplex(std::move(sizes), std::move(boundaries), truncated);
}

std::size_t ChainComplex::basis_size(int p) const {
  if (p < 0 || p > top_degree()) return 0;
  return basis_sizes_[static_cast<std::size_t>(p)];
}

SparseMatrix ChainComplex::boundary(int p) const {
  if (p >= 0 && p <= top_degree()) return boundaries_[static_cast<std::size_t>(p)];
  if (truncated_ && p > top_degree()) throw InvalidInput("chain complex truncated below degree " + std::to_string(p));
  return SparseMatrix(p == 0 ? 1 : basis_size(p - 1), basis_size(p));
}

SparseMatrix boundary_matrix(const SimplicialComplex& x, int p) {
  if (p < 0) throw InvalidInput("boundary_matrix: degree must be >= 0");
  const auto& cols = x.faces(p);
  if (p == 0) {
    SparseMatrix m(1, cols.size());
    for (auto& c : m.columns) c.emplace_back(0, 1);
    return m;
  }
  SparseMatrix m(x.faces(p - 1).size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    auto& column = m.columns[j];
    for (std::size_t i = 0; i < cols[j].size(); ++i) {
      auto row = x.index_of(cols[j].without_position(i));
      column.emplace_back(static_cast<std::uint32_t>(*row), (i % 2 == 0) ? 1 : -1);
    }
    std::sort(column.begin(), column.end());
  }
  return m;
}

nlohmann::json HomologyGroup::to_json() const {
  nlohmann::json t = nlohmann::json::array();
  for (const auto& d : torsion) t.push_back(d.get_str());
  // Torsion coefficients are emitted as integers when they fit.
  for (auto& v : t) {
    const auto s = v.get<std::string>();
    if (s.size() < 18) v = std::stoll(s);
  }
  return {{"degree", degree}, {"free_rank", free_rank}, {"torsion", t}};
}

namespace {

HomologyGroup group_from(int p, std::size_t basis, std::size_t rank_out, const SmithForm& in) {
  HomologyGroup g;
  g.degree = p;
  g.free_rank = basis - rank_out - in.rank;
  g.torsion = in.torsion;
  return g;
}

}  // namespace

HomologyGroup reduced_homology(const ChainComplex& c, int p) {
  if (p < 0) throw InvalidInput("reduced_homology: degree must be >= 0");
  const auto out = smith_normal_form(c.boundary(p));
  const auto in = smith_normal_form(c.boundary(p + 1));
  return group_from(p, c.basis_size(p), out.rank, in);
}

std::vector<HomologyGroup> reduced_homology_all(const ChainComplex& c) {
  std::vector<HomologyGroup> out;
  const int last = c.truncated() ? c.top_degree() - 1 : c.top_degree();
  if (last < 0) return out;
  SmithForm below = smith_normal_form(c.boundary(0));
  for (int p = 0; p <= last; ++p) {
    SmithForm above = smith_normal_form(c.boundary(p + 1));
    out.push_back(group_from(p, c.basis_size(p), below.rank, above));
    below = std::move(above);
  }
  return out;
}

std::vector<std::size_t> reduced_betti_mod_p(const ChainComplex& c, std::uint32_t prime) {
  std::vector<std::size_t> out;
  const int last = c.truncated() ? c.top_degree() - 1 : c.top_degree();
  for (int p = 0; p <= last; ++p) {
    out.push_back(c.basis_size(p) - rank_mod_p(c.boundary(p), prime) - rank_mod_p(c.boundary(p + 1), prime));
  }
  return out;
}

std::string_view to_string(Pi1Status s) {
  switch (s) {
    case Pi1Status::TrivialCertified: return "trivial-certified";
    case Pi1Status::NontrivialCertified: return "nontrivial-certified";
    case Pi1Status::Inconclusive: return "inconclusive";
    case Pi1Status::NotAttempted: return "not-attempted";
  }
  return "not-attempted";
}

bool ConnectivityReport::achieves(int k) const {
  if (k <= -2) return true;
  if (homological_connectivity == -2) return false;
  return acyclic || homological_connectivity >= k;
}

nlohmann::json ConnectivityReport::to_json() const {
  nlohmann::json g = nlohmann::json::array();
  for (const auto& h : groups) g.push_back(h.to_json());
  return {{"homological_connectivity", homological_connectivity},
          {"acyclic", acyclic},
          {"exact", exact},
          {"groups", g},
          {"pi1_status", std::string(to_string(pi1))}};
}

ConnectivityReport homological_connectivity(const SimplicialComplex& x, const ConnectivityOptions& options) {
  ConnectivityReport report;
  if (x.is_empty()) return report;
  const int dim = x.dim();
  int limit = options.up_to ? std::min(*options.up_to, dim) : dim;
  if (limit < 0) {
    report.homological_connectivity = -1;
    report.exact = false;
    return report;
  }

  const auto chains = ChainComplex::of(x, limit);
  const auto& limits = x.limits();
  SmithForm below = smith_normal_form(chains.boundary(0), limits);
  report.homological_connectivity = -1;
  for (int p = 0; p <= limit; ++p) {
    SmithForm above = smith_normal_form(chains.boundary(p + 1), limits);
    auto g = group_from(p, chains.basis_size(p), below.rank, above);
    report.groups.push_back(g);
    if (!g.is_zero()) {
      report.homological_connectivity = p - 1;
      if (options.attempt_pi1) {
        if (p == 1) report.pi1 = Pi1Status::NontrivialCertified;
        if (p >= 2) report.pi1 = pi1_triviality(x);
      }
      return report;
    }
    report.homological_connectivity = p;
    below = std::move(above);
  }
  if (limit == dim) {
    report.acyclic = true;
  } else {
    report.exact = false;
  }
  if (options.attempt_pi1 && (report.acyclic || report.homological_connectivity >= 1)) report.pi1 = pi1_triviality(x);
  return report;
}

}  // namespace doubling

#pragma once

#include "doubling/complex.hpp"
#include "doubling/homology.hpp"
#include "doubling/report.hpp"

#include <vector>

namespace doubling {

/// floor(a / b) for b > 0, rounding toward negative infinity.
constexpr int floor_div(int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

struct WcmEntry {
  Simplex simplex;
  int p = 0;
  /// n - p - 2
  int required = 0;
  ConnectivityReport achieved;
  bool passed = false;
  bool certified = false;
};

/// Ledger for "x is weakly Cohen-Macaulay of dimension n": x must be
/// (n-1)-connected and every p-simplex link (n-p-2)-connected. Requirements
/// at or below -2 hold vacuously and are only counted; a requirement of -1
/// asks for a non-empty link.
struct WcmReport {
  int target_dimension = 0;
  int global_required = 0;
  ConnectivityReport global;
  bool global_passed = false;
  bool global_certified = false;
  std::vector<WcmEntry> entries;
  std::size_t vacuous = 0;
  std::size_t distinct_link_types = 0;
  Verdict verdict = Verdict::Fail;

  [[nodiscard]] bool passed() const { return is_pass(verdict); }
  [[nodiscard]] nlohmann::json to_json(bool include_entries = true) const;
};

struct WcmOptions {
  unsigned jobs = 1;
  bool attempt_pi1 = true;
};

/// Link checks are grouped by the link's facets after compacting vertex ids;
/// equal keys mean equal complexes up to an order-preserving relabelling, so
/// each group's homology is computed once. Results are assembled in simplex
/// order whatever the worker count.
WcmReport check_wcm(const SimplicialComplex& x, int n, const WcmOptions& options = {});

/// Hypothesis: x is wCM of dimension n. Conclusion: D^r(x) is wCM of
/// dimension floor((n-r+1)/(r+1)), and homologically
/// floor((n-2r)/(r+1))-connected.
VerificationReport verify_theorem1(const SimplicialComplex& x, int n, int r, const WcmOptions& options = {});

/// M_{n+1}(r) ≅ D^r(Δ^n) is wCM of dimension floor((n+1-r)/(r+1)); also
/// checked at ν = floor((n-1)/(2r-1)) with both bounds reported.
VerificationReport verify_theorem22(int n, int r, const WcmOptions& options = {});

/// Hypothesis: x is wCM of dimension n. Conclusion: xm_complex(x, m) is wCM
/// of dimension n - m + 1.
VerificationReport verify_lemma31(const SimplicialComplex& x, int n, int m, const WcmOptions& options = {});

}  // namespace doubling

#pragma once

#include <json.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace doubling {

/// pass-certified: every connectivity claim is backed by a trivial-π₁
/// certificate (or only needs degree <= 0). pass-homological: the claims hold
/// for reduced integral homology but some π₁ was left undecided.
enum class Verdict { PassCertified, PassHomological, Fail, Inconclusive, BudgetExceeded };

std::string_view to_string(Verdict v);
Verdict verdict_from_string(std::string_view s);
[[nodiscard]] inline bool is_pass(Verdict v) {
  return v == Verdict::PassCertified || v == Verdict::PassHomological;
}
/// The weaker of two verdicts (fail dominates, then budget, inconclusive,
/// homological, certified).
Verdict weakest(Verdict a, Verdict b);

struct Check {
  std::string id;
  bool passed = false;
  nlohmann::json detail = nlohmann::json::object();
};

struct VerificationReport {
  std::string check;
  nlohmann::json parameters = nlohmann::json::object();
  std::vector<Check> gates;
  std::vector<Check> ledger;
  Verdict verdict = Verdict::PassCertified;
  std::vector<std::string> notes;
  nlohmann::json data = nlohmann::json::object();

  void add(Check c) { ledger.push_back(std::move(c)); }
  /// Verdict from the gates and ledger: any failed gate or check means fail.
  void settle(Verdict ceiling = Verdict::PassCertified);
  [[nodiscard]] bool passed() const { return is_pass(verdict); }
  [[nodiscard]] nlohmann::json to_json() const;
};

}  // namespace doubling

#include "doubling/report.hpp"

#include "doubling/errors.hpp"

namespace doubling {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::PassCertified: return "pass-certified";
    case Verdict::PassHomological: return "pass-homological";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
    case Verdict::BudgetExceeded: return "budget-exceeded";
  }
  return "fail";
}

Verdict verdict_from_string(std::string_view s) {
  for (Verdict v : {Verdict::PassCertified, Verdict::PassHomological, Verdict::Fail, Verdict::Inconclusive,
                    Verdict::BudgetExceeded}) {
    if (to_string(v) == s) return v;
  }
  throw InvalidInput("unknown verdict: " + std::string(s));
}

namespace {
int severity(Verdict v) {
  switch (v) {
    case Verdict::PassCertified: return 0;
    case Verdict::PassHomological: return 1;
    case Verdict::Inconclusive: return 2;
    case Verdict::BudgetExceeded: return 3;
    case Verdict::Fail: return 4;
  }
  return 4;
}
}  // namespace

Verdict weakest(Verdict a, Verdict b) { return severity(a) >= severity(b) ? a : b; }

void VerificationReport::settle(Verdict ceiling) {
  verdict = ceiling;
  for (const auto& g : gates) {
    if (!g.passed) verdict = Verdict::Fail;
  }
  for (const auto& c : ledger) {
    if (!c.passed) verdict = Verdict::Fail;
  }
}

nlohmann::json VerificationReport::to_json() const {
  auto checks_json = [](const std::vector<Check>& checks) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : checks) {
      arr.push_back({{"id", c.id}, {"passed", c.passed}, {"detail", c.detail.is_null() ? nlohmann::json::object() : c.detail}});
    }
    return arr;
  };
  return {{"check", check},
          {"parameters", parameters},
          {"gates", checks_json(gates)},
          {"ledger", checks_json(ledger)},
          {"verdict", std::string(to_string(verdict))},
          {"notes", notes},
          {"data", data}};
}

}  // namespace doubling

#include "doubling/wcm.hpp"

#include "doubling/tupling.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <thread>

namespace doubling {

namespace {

struct Assessment {
  ConnectivityReport report;
  bool passed = false;
  bool certified = false;
};

Assessment assess(const SimplicialComplex& c, int required, bool attempt_pi1) {
  Assessment a;
  if (required <= -2) {
    a.passed = a.certified = true;
    a.report.exact = false;
    a.report.homological_connectivity = c.is_empty() ? -2 : -1;
    return a;
  }
  if (required == -1) {
    a.report.homological_connectivity = c.is_empty() ? -2 : -1;
    a.report.exact = c.is_empty();
    a.passed = a.certified = !c.is_empty();
    return a;
  }
  ConnectivityOptions opts;
  opts.up_to = required;
  opts.attempt_pi1 = attempt_pi1 && required >= 1;
  a.report = homological_connectivity(c, opts);
  a.passed = a.report.achieves(required);
  // Path-connectedness is exactly H̃_0 = 0; beyond that a trivial π₁ plus
  // vanishing homology gives genuine connectivity (Hurewicz).
  a.certified = a.passed && (required <= 0 || a.report.pi1 == Pi1Status::TrivialCertified);
  return a;
}

std::vector<Vertex> link_key(const SimplicialComplex& l) {
  const auto compact = compact_relabel(l);
  std::vector<Vertex> key;
  for (const auto& f : compact.facets()) {
    key.push_back(static_cast<Vertex>(f.size()));
    key.insert(key.end(), f.begin(), f.end());
  }
  return key;
}

template <class F>
void parallel_for(std::size_t count, unsigned jobs, F&& body) {
  if (jobs <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

nlohmann::json entry_json(const WcmEntry& e) {
  return {{"simplex", e.simplex.to_vector()},
          {"p", e.p},
          {"required", e.required},
          {"achieved", e.achieved.homological_connectivity},
          {"acyclic", e.achieved.acyclic},
          {"pi1_status", std::string(to_string(e.achieved.pi1))},
          {"passed", e.passed}};
}

nlohmann::json wcm_summary(const WcmReport& w) { return w.to_json(false); }

Check wcm_check(std::string id, const WcmReport& w) {
  return Check{std::move(id), w.passed(), wcm_summary(w)};
}

}  // namespace

nlohmann::json WcmReport::to_json(bool include_entries) const {
  std::size_t failed = 0;
  for (const auto& e : entries) failed += e.passed ? 0 : 1;
  nlohmann::json j = {{"target_dimension", target_dimension},
                      {"global",
                       {{"required", global_required},
                        {"passed", global_passed},
                        {"connectivity", global.to_json()}}},
                      {"links_checked", entries.size()},
                      {"links_failed", failed},
                      {"links_vacuous", vacuous},
                      {"distinct_link_types", distinct_link_types},
                      {"verdict", std::string(doubling::to_string(verdict))}};
  if (include_entries) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& e : entries) arr.push_back(entry_json(e));
    j["entries"] = arr;
  } else {
    for (const auto& e : entries) {
      if (!e.passed) {
        j["first_failure"] = entry_json(e);
        break;
      }
    }
  }
  return j;
}

WcmReport check_wcm(const SimplicialComplex& x, int n, const WcmOptions& options) {
  WcmReport report;
  report.target_dimension = n;
  report.global_required = n - 1;
  {
    auto g = assess(x, n - 1, options.attempt_pi1);
    report.global = std::move(g.report);
    report.global_passed = g.passed;
    report.global_certified = g.certified;
  }

  struct Job {
    Simplex simplex;
    int p;
    int required;
    std::size_t type;
  };
  std::vector<Job> jobs;
  std::map<std::vector<Vertex>, std::size_t> type_of;
  std::vector<SimplicialComplex> representatives;
  std::vector<int> type_requirement;
  for (int p = 0; p <= x.dim(); ++p) {
    const int required = n - p - 2;
    const auto& level = x.faces(p);
    if (required <= -2) {
      report.vacuous += level.size();
      continue;
    }
    for (const auto& s : level) {
      auto l = link(x, s);
      auto key = link_key(l);
      key.push_back(static_cast<Vertex>(required + 2));  // same link, different requirement
      auto [it, inserted] = type_of.emplace(std::move(key), representatives.size());
      if (inserted) {
        representatives.push_back(std::move(l));
        type_requirement.push_back(required);
      }
      jobs.push_back({s, p, required, it->second});
    }
  }
  report.distinct_link_types = representatives.size();

  std::vector<Assessment> results(representatives.size());
  parallel_for(representatives.size(), options.jobs, [&](std::size_t i) {
    results[i] = assess(representatives[i], type_requirement[i], options.attempt_pi1);
  });

  bool all_passed = report.global_passed;
  bool all_certified = report.global_certified;
  report.entries.reserve(jobs.size());
  for (auto& job : jobs) {
    const auto& r = results[job.type];
    report.entries.push_back({std::move(job.simplex), job.p, job.required, r.report, r.passed, r.certified});
    all_passed = all_passed && r.passed;
    all_certified = all_certified && r.certified;
  }
  if (!all_passed) {
    report.verdict = Verdict::Fail;
  } else {
    report.verdict = all_certified ? Verdict::PassCertified : Verdict::PassHomological;
  }
  return report;
}

VerificationReport verify_theorem1(const SimplicialComplex& x, int n, int r, const WcmOptions& options) {
  if (r < 1) throw InvalidInput("theorem1: r must be >= 1");
  VerificationReport report;
  report.check = "theorem1";
  report.parameters = {{"n", n}, {"r", r}, {"f_vector", x.f_vector()}};

  const auto hypothesis = check_wcm(x, n, options);
  report.gates.push_back(wcm_check("hypothesis-wcm", hypothesis));
  if (!hypothesis.passed()) {
    report.data["failed_stage"] = "hypothesis";
    report.settle();
    return report;
  }

  const int target = floor_div(n - r + 1, r + 1);
  const int proof_connectivity = floor_div(n - 2 * r, r + 1);
  const auto tupled = r_tuple(x, r);
  const auto conclusion = check_wcm(tupled.complex, target, options);
  report.data["target_dimension"] = target;
  report.data["tupling_f_vector"] = tupled.complex.f_vector();
  report.add(wcm_check("conclusion-wcm", conclusion));

  ConnectivityOptions copts;
  copts.up_to = proof_connectivity;
  const auto conn = homological_connectivity(tupled.complex, copts);
  report.add({"proof-connectivity",
              conn.achieves(proof_connectivity),
              {{"required", proof_connectivity}, {"connectivity", conn.to_json()}}});
  report.notes.push_back("proof connectivity (n-2r)/(r+1) is checked at its floor");
  report.notes.push_back("k-connected means homologically k-connected; certified when π₁ is trivial-certified");

  report.settle(weakest(hypothesis.verdict, conclusion.verdict));
  if (!report.passed()) report.data["failed_stage"] = "conclusion";
  return report;
}

VerificationReport verify_theorem22(int n, int r, const WcmOptions& options) {
  if (r < 1 || n + 1 < r) throw InvalidInput("theorem22: need n + 1 >= r >= 1");
  VerificationReport report;
  report.check = "theorem22";
  report.parameters = {{"n", n}, {"r", r}};

  const auto matching = hypergraph_matching(n + 1, r);
  const int target = floor_div(n + 1 - r, r + 1);
  const int nu = floor_div(n + 1 - 2, 2 * r - 1);
  const auto main = check_wcm(matching.complex, target, options);
  report.add(wcm_check("wcm-mu-dimension", main));
  const auto weaker = check_wcm(matching.complex, nu, options);
  report.add(wcm_check("wcm-nu-dimension", weaker));

  report.data["target_dimension"] = target;
  report.data["mu"] = target;
  report.data["nu"] = nu;
  report.data["stronger_bound"] = target > nu ? "mu" : (target == nu ? "equal" : "nu");
  report.data["f_vector"] = matching.complex.f_vector();

  // Homology through the target degree, as sharpness evidence.
  nlohmann::json groups = nlohmann::json::array();
  if (target >= 0 && !matching.complex.is_empty()) {
    const auto chains = ChainComplex::of(matching.complex, target);
    for (const auto& g : reduced_homology_all(chains)) groups.push_back(g.to_json());
  }
  report.data["homology"] = groups;
  report.notes.push_back("k-connected means homologically k-connected; certified when π₁ is trivial-certified");
  report.settle(weakest(main.verdict, weaker.verdict));
  return report;
}

VerificationReport verify_lemma31(const SimplicialComplex& x, int n, int m, const WcmOptions& options) {
  if (m < 1) throw InvalidInput("lemma31: m must be >= 1");
  VerificationReport report;
  report.check = "lemma31";
  report.parameters = {{"n", n}, {"m", m}, {"f_vector", x.f_vector()}};

  const auto hypothesis = check_wcm(x, n, options);
  report.gates.push_back(wcm_check("hypothesis-wcm", hypothesis));
  if (!hypothesis.passed()) {
    report.data["failed_stage"] = "hypothesis";
    report.settle();
    return report;
  }
  const auto xm = xm_complex(x, m);
  const int target = n - m + 1;
  const auto conclusion = check_wcm(xm.complex, target, options);
  report.data["target_dimension"] = target;
  report.data["xm_f_vector"] = xm.complex.f_vector();
  report.add(wcm_check("conclusion-wcm", conclusion));
  report.settle(weakest(hypothesis.verdict, conclusion.verdict));
  if (!report.passed()) report.data["failed_stage"] = "conclusion";
  return report;
}

}  // namespace doubling

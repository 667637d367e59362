// Command-line front end: generators, constructions, homology and the
// verification harness. Reports go to stdout as JSON (default) or text.

#include "doubling/complex.hpp"
#include "doubling/destab.hpp"
#include "doubling/homology.hpp"
#include "doubling/isomorphism.hpp"
#include "doubling/json_io.hpp"
#include "doubling/report.hpp"
#include "doubling/tupling.hpp"
#include "doubling/wcm.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace doubling;
using json = nlohmann::json;

namespace {

enum Exit { kPass = 0, kFail = 1, kUndecided = 2 };

struct Global {
  std::string format = "json";
  bool human = false;
  std::size_t budget_simplices = Limits{}.max_simplices;
  std::size_t budget_entries = Limits{}.max_matrix_entries;
  std::size_t budget_iso = Limits{}.max_iso_nodes;
  std::size_t budget_tietze = Limits{}.max_tietze_steps;
  unsigned jobs = 1;
  bool timing = false;
  std::string command;

  [[nodiscard]] bool is_human() const { return human || format == "human"; }
};

Global g;

class MalformedJson : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
  std::ostringstream ss;
  if (path.empty() || path == "-") {
    ss << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open " + path);
    ss << in.rdbuf();
  }
  return ss.str();
}

json read_json(const std::string& path) {
  try {
    return json::parse(read_input(path));
  } catch (const json::parse_error& e) {
    throw MalformedJson(e.what());
  }
}

SimplicialComplex read_complex(const std::string& path) { return complex_from_json(read_json(path)); }

json complex_with_labels(const SimplicialComplex& x, const VertexTable& table) {
  auto j = complex_to_json(x);
  j["labels"] = vertex_table_to_json(table)["labels"];
  return j;
}

int verdict_exit(Verdict v) {
  if (is_pass(v)) return kPass;
  if (v == Verdict::Fail) return kFail;
  return kUndecided;
}

std::string group_text(const json& h) {
  std::string s;
  const auto free_rank = h.at("free_rank").get<std::size_t>();
  if (free_rank == 1) s = "Z";
  if (free_rank > 1) s = "Z^" + std::to_string(free_rank);
  for (const auto& t : h.at("torsion")) {
    if (!s.empty()) s += " + ";
    s += "Z/" + (t.is_string() ? t.get<std::string>() : std::to_string(t.get<long long>()));
  }
  return s.empty() ? "0" : s;
}

void human_report(const json& r, std::ostream& out) {
  out << r.value("check", std::string("report")) << ": " << r.value("verdict", std::string("?")) << "\n";
  if (r.contains("parameters")) out << "  parameters " << r["parameters"].dump() << "\n";
  for (const char* section : {"gates", "ledger"}) {
    if (!r.contains(section)) continue;
    for (const auto& c : r[section]) {
      out << "  [" << (c["passed"].get<bool>() ? "ok" : "FAIL") << "] " << c["id"].get<std::string>();
      if (c["detail"].contains("verdict")) out << " (" << c["detail"]["verdict"].get<std::string>() << ")";
      out << "\n";
    }
  }
  if (r.contains("notes")) {
    for (const auto& n : r["notes"]) out << "  note: " << n.get<std::string>() << "\n";
  }
  if (r.contains("wall_time_seconds")) out << "  time " << r["wall_time_seconds"].get<double>() << " s\n";
}

void human_complex(const json& j, std::ostream& out) {
  const auto x = complex_from_json(j);
  out << "vertices " << x.vertices().size() << ", dim " << x.dim() << ", f-vector";
  for (auto f : x.f_vector()) out << " " << f;
  out << "\n";
  for (const auto& f : x.facets()) out << "  " << f.to_string() << "\n";
}

void human_homology(const json& j, std::ostream& out) {
  for (const auto& h : j.at("homology")) {
    if (h.contains("betti")) {
      out << "b~_" << h["degree"].get<int>() << " mod " << j["prime"].get<int>() << " = " << h["betti"].get<std::size_t>()
          << "\n";
    } else {
      out << "H~_" << h["degree"].get<int>() << " = " << group_text(h) << "\n";
    }
  }
}

enum class Kind { Complex, Graph, Homology, Report, Other };

void emit(const json& j, Kind kind) {
  if (!g.is_human()) {
    std::cout << dump_stable(j);
    return;
  }
  switch (kind) {
    case Kind::Complex: human_complex(j, std::cout); break;
    case Kind::Homology: human_homology(j, std::cout); break;
    case Kind::Report: human_report(j, std::cout); break;
    default: std::cout << j.dump(2) << "\n"; break;
  }
}

json budgets_json() {
  return {{"simplices", g.budget_simplices},
          {"matrix_entries", g.budget_entries},
          {"iso_nodes", g.budget_iso},
          {"tietze_steps", g.budget_tietze}};
}

// Wraps a verification in timing, command echo and budget bookkeeping.
int run_report(const std::string& check, const std::function<VerificationReport()>& body) {
  const auto start = std::chrono::steady_clock::now();
  json j;
  Verdict verdict;
  try {
    auto report = body();
    verdict = report.verdict;
    j = report.to_json();
  } catch (const BudgetExceeded& e) {
    verdict = Verdict::BudgetExceeded;
    VerificationReport empty;
    empty.check = check;
    empty.verdict = verdict;
    j = empty.to_json();
    j["data"] = {{"error", {{"code", "budget-exceeded"}, {"resource", e.resource()}, {"limit", e.limit()},
                    {"partial_counts", e.partial_counts()}}}};
  }
  j["command"] = g.command;
  j["budgets"] = budgets_json();
  if (g.timing) {
    j["wall_time_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  emit(j, Kind::Report);
  if (const char* dir = std::getenv("DOUBLING_REPORT_DIR"); dir && *dir) {
    std::filesystem::create_directories(dir);
    std::string name = j.value("check", std::string("report"));
    for (const auto& [k, v] : j.value("parameters", json::object()).items()) {
      if (v.is_number_integer()) name += "_" + k + std::to_string(v.get<long long>());
    }
    std::ofstream(std::filesystem::path(dir) / (name + ".json")) << dump_stable(j);
  }
  return verdict_exit(verdict);
}

WcmOptions wcm_options() {
  WcmOptions o;
  o.jobs = std::max(1u, g.jobs);
  return o;
}

// Positional integers override nothing; named flags win when both are given.
int pick(const std::optional<int>& named, const std::vector<int>& positional, std::size_t index, const char* what) {
  if (named) return *named;
  if (index < positional.size()) return positional[index];
  throw InvalidInput(std::string("missing parameter ") + what);
}

struct Params {
  std::optional<int> n, r, m, dim;
  std::vector<int> positional;
  std::string input;
  std::optional<int> simplex, boundary;

  SimplicialComplex complex() const {
    if (simplex) return simplex_complex(*simplex);
    if (boundary) return boundary_complex(*boundary);
    return read_complex(input);
  }
};

void add_nr(CLI::App* app, Params& p, bool with_r = true) {
  app->add_option("--n", p.n, "size parameter n");
  if (with_r) app->add_option("--r", p.r, "tupling parameter r");
  app->add_option("params", p.positional, "parameters given positionally");
}

void add_complex_source(CLI::App* app, Params& p) {
  app->add_option("--input,-i", p.input, "complex JSON file (stdin when absent)");
  app->add_option("--simplex", p.simplex, "use the full simplex on n+1 vertices");
  app->add_option("--boundary", p.boundary, "use the boundary of the n-simplex");
}

json homology_json(const SimplicialComplex& x, std::optional<int> degree, std::optional<int> prime) {
  json groups = json::array();
  if (degree && *degree < 0) throw InvalidInput("homology: degree must be >= 0");
  const bool beyond = degree && *degree > x.dim();
  if (prime) {
    if (*prime < 2) throw InvalidInput("homology: --mod needs a prime");
    if (beyond) {
      groups.push_back({{"degree", *degree}, {"betti", 0}});
    } else if (!x.is_empty()) {
      const auto chains = ChainComplex::of(x, degree);
      const auto betti = reduced_betti_mod_p(chains, static_cast<std::uint32_t>(*prime));
      for (std::size_t p = 0; p < betti.size(); ++p) {
        if (degree && static_cast<int>(p) != *degree) continue;
        groups.push_back({{"degree", p}, {"betti", betti[p]}});
      }
    }
    return {{"homology", groups}, {"prime", *prime}};
  }
  if (beyond) {
    groups.push_back(HomologyGroup{*degree, 0, {}}.to_json());
  } else if (degree) {
    groups.push_back(reduced_homology(ChainComplex::of(x, *degree), *degree).to_json());
  } else if (!x.is_empty()) {
    for (const auto& h : reduced_homology_all(ChainComplex::of(x))) groups.push_back(h.to_json());
  }
  return {{"homology", groups}};
}

json timed(const std::string& name, const std::function<json()>& body) {
  const auto start = std::chrono::steady_clock::now();
  json j = body();
  j["workload"] = name;
  j["wall_time_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return j;
}

json bench(const std::string& suite) {
  json rows = json::array();
  if (suite == "tupling") {
    for (int r : {2, 3}) {
      for (int n = r; n <= 8; ++n) {
        rows.push_back(timed("D^" + std::to_string(r) + "(simplex " + std::to_string(n) + ")", [&] {
          const auto t = r_tuple(simplex_complex(n), r);
          return json{{"vertices", t.complex.vertices().size()}, {"simplices", t.complex.num_simplices()}};
        }));
      }
    }
  } else if (suite == "homology") {
    rows.push_back(timed("M(K7)", [] {
      const auto m = matching_complex(complete_graph(7));
      json groups = json::array();
      for (const auto& h : reduced_homology_all(ChainComplex::of(m.complex))) groups.push_back(h.to_json());
      return json{{"simplices", m.complex.num_simplices()}, {"homology", groups}};
    }));
    rows.push_back(timed("barycentric(boundary 4)", [] {
      const auto b = barycentric(boundary_complex(4));
      json groups = json::array();
      for (const auto& h : reduced_homology_all(ChainComplex::of(b.complex))) groups.push_back(h.to_json());
      return json{{"simplices", b.complex.num_simplices()}, {"homology", groups}};
    }));
  } else if (suite == "wcm-grid") {
    for (int r : {2, 3}) {
      for (int n = r - 1; n <= 8; ++n) {
        rows.push_back(timed("theorem22 n=" + std::to_string(n) + " r=" + std::to_string(r), [&] {
          const auto report = verify_theorem22(n, r, wcm_options());
          return json{{"verdict", std::string(to_string(report.verdict))}};
        }));
      }
    }
  } else {
    throw InvalidInput("bench: unknown suite " + suite);
  }
  return {{"suite", suite}, {"runs", rows}};
}

void print_error(const std::string& code, const std::string& message, const json& extra = json::object()) {
  json j = {{"error", {{"code", code}, {"message", message}}}};
  for (const auto& [k, v] : extra.items()) j["error"][k] = v;
  std::cerr << dump_stable(j);
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 0; i < argc; ++i) g.command += (i ? " " : "") + std::string(argv[i]);

  CLI::App app{"doubling: r-tuplings, matching complexes and connectivity checks"};
  app.require_subcommand(1);
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"json", "human"}));
  app.add_flag("--human", g.human, "same as --format human");
  app.add_option("--budget-simplices", g.budget_simplices, "simplex budget");
  app.add_option("--budget-matrix-entries", g.budget_entries, "matrix entry budget");
  app.add_option("--budget-iso-nodes", g.budget_iso, "isomorphism search budget");
  app.add_option("--budget-tietze-steps", g.budget_tietze, "π₁ simplification budget");
  app.add_option("--jobs,-j", g.jobs, "worker threads for link checks");
  app.add_flag("--timing", g.timing, "add wall-clock time to reports");
  app.fallthrough();

  std::function<int()> action;
  Params p;

  // gen
  auto* gen = app.add_subcommand("gen", "generate a complex or graph");
  gen->require_subcommand(1);
  auto* gen_simplex = gen->add_subcommand("simplex", "full simplex on n+1 vertices");
  add_nr(gen_simplex, p, false);
  gen_simplex->callback([&] {
    action = [&] {
      emit(complex_to_json(simplex_complex(pick(p.n, p.positional, 0, "n"))), Kind::Complex);
      return kPass;
    };
  });
  auto* gen_boundary = gen->add_subcommand("boundary", "boundary of the n-simplex");
  add_nr(gen_boundary, p, false);
  gen_boundary->callback([&] {
    action = [&] {
      emit(complex_to_json(boundary_complex(pick(p.n, p.positional, 0, "n"))), Kind::Complex);
      return kPass;
    };
  });
  auto* gen_graph = gen->add_subcommand("complete-graph", "complete graph on n vertices");
  add_nr(gen_graph, p, false);
  gen_graph->callback([&] {
    action = [&] {
      const int n = pick(p.n, p.positional, 0, "n");
      if (n < 0) throw InvalidInput("complete-graph: n must be >= 0");
      emit(graph_to_json(complete_graph(static_cast<std::uint32_t>(n))), Kind::Graph);
      return kPass;
    };
  });
  auto* gen_hm = gen->add_subcommand("hypergraph-matching", "M_n(r)");
  add_nr(gen_hm, p);
  gen_hm->callback([&] {
    action = [&] {
      const auto m = hypergraph_matching(pick(p.n, p.positional, 0, "n"), pick(p.r, p.positional, 1, "r"));
      emit(complex_with_labels(m.complex, m.table), Kind::Complex);
      return kPass;
    };
  });

  // op
  auto* op = app.add_subcommand("op", "apply a construction to a complex");
  op->require_subcommand(1);
  std::vector<std::string> files;
  std::vector<Vertex> sigma;
  auto* op_tuple = op->add_subcommand("tuple", "r-tupling D^r");
  op_tuple->add_option("--r", p.r)->required();
  op_tuple->add_option("file", p.input);
  op_tuple->callback([&] {
    action = [&] {
      const auto t = r_tuple(read_complex(p.input), *p.r);
      emit(complex_with_labels(t.complex, t.delta_table), Kind::Complex);
      return kPass;
    };
  });
  auto* op_link = op->add_subcommand("link", "link of a simplex");
  op_link->add_option("--simplex", sigma)->delimiter(',');
  op_link->add_option("file", p.input);
  op_link->callback([&] {
    action = [&] {
      const Simplex s(std::span<const Vertex>(sigma.data(), sigma.size()));
      emit(complex_to_json(link(read_complex(p.input), s)), Kind::Complex);
      return kPass;
    };
  });
  auto* op_skeleton = op->add_subcommand("skeleton", "d-skeleton");
  op_skeleton->add_option("--dim", p.dim)->required();
  op_skeleton->add_option("file", p.input);
  op_skeleton->callback([&] {
    action = [&] {
      emit(complex_to_json(skeleton(read_complex(p.input), *p.dim)), Kind::Complex);
      return kPass;
    };
  });
  auto* op_join = op->add_subcommand("join", "join of two complexes");
  op_join->add_option("files", files)->expected(2)->required();
  op_join->callback([&] {
    action = [&] {
      const auto j = join(read_complex(files.at(0)), read_complex(files.at(1)));
      emit(complex_with_labels(j.complex, j.table), Kind::Complex);
      return kPass;
    };
  });
  auto* op_bary = op->add_subcommand("barycentric", "barycentric subdivision");
  op_bary->add_option("file", p.input);
  op_bary->callback([&] {
    action = [&] {
      const auto b = barycentric(read_complex(p.input));
      emit(complex_with_labels(b.complex, b.table), Kind::Complex);
      return kPass;
    };
  });
  auto* op_xm = op->add_subcommand("xm", "order complex of simplices with at least m vertices");
  op_xm->add_option("--m", p.m)->required();
  op_xm->add_option("file", p.input);
  op_xm->callback([&] {
    action = [&] {
      const auto x = xm_complex(read_complex(p.input), *p.m);
      emit(complex_with_labels(x.complex, x.table), Kind::Complex);
      return kPass;
    };
  });
  auto* op_matching = op->add_subcommand("matching", "matching complex of a graph");
  op_matching->add_option("file", p.input);
  op_matching->callback([&] {
    action = [&] {
      const auto m = matching_complex(graph_from_json(read_json(p.input)));
      emit(complex_with_labels(m.complex, m.table), Kind::Complex);
      return kPass;
    };
  });
  auto* op_relabel = op->add_subcommand("relabel", "rename vertices 0..k-1");
  op_relabel->add_option("file", p.input);
  op_relabel->callback([&] {
    action = [&] {
      emit(complex_to_json(compact_relabel(read_complex(p.input))), Kind::Complex);
      return kPass;
    };
  });

  // homology
  std::optional<int> degree, prime;
  auto* hom = app.add_subcommand("homology", "reduced integral homology");
  hom->add_option("file", p.input);
  hom->add_option("--degree", degree);
  hom->add_option("--mod", prime);
  hom->callback([&] {
    action = [&] {
      emit(homology_json(read_complex(p.input), degree, prime), Kind::Homology);
      return kPass;
    };
  });

  // wcm
  bool entries = false;
  auto* wcm = app.add_subcommand("wcm", "weakly Cohen-Macaulay check");
  wcm->add_option("file", p.input);
  wcm->add_option("--dim", p.dim)->required();
  wcm->add_flag("--entries", entries, "list every link check");
  wcm->callback([&] {
    action = [&] {
      return run_report("wcm", [&] {
        const auto w = check_wcm(read_complex(p.input), *p.dim, wcm_options());
        VerificationReport r;
        r.check = "wcm";
        r.parameters = {{"n", *p.dim}};
        r.add({"wcm", w.passed(), w.to_json(entries)});
        r.notes.push_back("k-connected means homologically k-connected; certified when π₁ is trivial-certified");
        r.settle(w.verdict);
        return r;
      });
    };
  });

  // verify
  auto* verify = app.add_subcommand("verify", "check a statement on an instance");
  verify->require_subcommand(1);
  auto* v_t1 = verify->add_subcommand("theorem1", "D^r of a wCM complex");
  add_nr(v_t1, p);
  add_complex_source(v_t1, p);
  v_t1->callback([&] {
    action = [&] {
      return run_report("theorem1", [&] {
        return verify_theorem1(p.complex(), pick(p.n, p.positional, 0, "n"), pick(p.r, p.positional, 1, "r"),
                               wcm_options());
      });
    };
  });
  auto* v_t22 = verify->add_subcommand("theorem22", "matching complexes M_{n+1}(r)");
  add_nr(v_t22, p);
  v_t22->callback([&] {
    action = [&] {
      return run_report("theorem22", [&] {
        return verify_theorem22(pick(p.n, p.positional, 0, "n"), pick(p.r, p.positional, 1, "r"), wcm_options());
      });
    };
  });
  auto* v_l31 = verify->add_subcommand("lemma31", "X_m of a wCM complex");
  add_nr(v_l31, p, false);
  v_l31->add_option("--m", p.m);
  add_complex_source(v_l31, p);
  v_l31->callback([&] {
    action = [&] {
      return run_report("lemma31", [&] {
        return verify_lemma31(p.complex(), pick(p.n, p.positional, 0, "n"), pick(p.m, p.positional, 1, "m"),
                              wcm_options());
      });
    };
  });
  auto* v_link = verify->add_subcommand("link-lemma", "links in D^r");
  v_link->add_option("--r", p.r);
  v_link->add_option("params", p.positional);
  add_complex_source(v_link, p);
  v_link->callback([&] {
    action = [&] { return run_report("link-lemma", [&] { return verify_link_lemma(p.complex(), pick(p.r, p.positional, 0, "r")); }); };
  });
  auto* v_iso = verify->add_subcommand("iso", "D^r(simplex n) against M_{n+1}(r)");
  add_nr(v_iso, p);
  v_iso->callback([&] {
    action = [&] {
      return run_report("iso", [&] {
        return verify_tupling_matching_iso(pick(p.n, p.positional, 0, "n"), pick(p.r, p.positional, 1, "r"));
      });
    };
  });
  auto* v_44 = verify->add_subcommand("prop44", "S_n(∅,[r]) -> D^r(simplex nr-1) is a complete join");
  add_nr(v_44, p);
  v_44->callback([&] {
    action = [&] {
      return run_report("prop44", [&] { return verify_prop44(pick(p.n, p.positional, 0, "n"), pick(p.r, p.positional, 1, "r")); });
    };
  });
  auto* v_45 = verify->add_subcommand("prop45", "S_n(∅,[r]) is wCM");
  add_nr(v_45, p);
  v_45->callback([&] {
    action = [&] {
      return run_report("prop45", [&] {
        return verify_prop45_fi(pick(p.n, p.positional, 0, "n"), pick(p.r, p.positional, 1, "r"), wcm_options());
      });
    };
  });

  // destab
  auto* destab = app.add_subcommand("destab", "destabilization complexes for FI");
  destab->require_subcommand(1);
  auto* d_words = destab->add_subcommand("injective-words", "W_n(∅,[1])");
  add_nr(d_words, p, false);
  d_words->callback([&] {
    action = [&] {
      emit(injective_words(pick(p.n, p.positional, 0, "n")).to_json(), Kind::Other);
      return kPass;
    };
  });
  auto* d_s = destab->add_subcommand("s-complex", "S_n(∅,[r])");
  add_nr(d_s, p);
  d_s->callback([&] {
    action = [&] {
      const auto s = s_complex_fi(pick(p.n, p.positional, 0, "n"), pick(p.r, p.positional, 1, "r"));
      emit(complex_with_labels(s.complex, s.table), Kind::Complex);
      return kPass;
    };
  });

  // bench
  std::string suite;
  auto* b = app.add_subcommand("bench", "timing workloads");
  b->add_option("suite", suite)->required()->check(CLI::IsMember({"tupling", "homology", "wcm-grid"}));
  b->callback([&] {
    action = [&] {
      std::cout << dump_stable(bench(suite));
      return kPass;
    };
  });

  // The first bare word must name a subcommand.
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a.rfind("-", 0) == 0) {
      const bool takes_value = a.find('=') == std::string::npos && a != "--human" && a != "--timing" &&
                               a != "--help" && a != "-h";
      if (takes_value) ++i;
      continue;
    }
    if (!app.get_subcommand_no_throw(a)) {
      print_error("unknown-subcommand", "unknown subcommand " + a);
      return kFail;
    }
    break;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error(e.get_name() == "ExtrasError" ? "unknown-subcommand" : "usage", e.what());
    return kFail;
  }

  Limits limits;
  limits.max_simplices = g.budget_simplices;
  limits.max_matrix_entries = g.budget_entries;
  limits.max_iso_nodes = g.budget_iso;
  limits.max_tietze_steps = g.budget_tietze;
  set_default_limits(limits);

  try {
    return action();
  } catch (const MalformedJson& e) {
    print_error("malformed-json", e.what());
    return kFail;
  } catch (const InvalidInput& e) {
    print_error("invalid-input", e.what());
    return kFail;
  } catch (const BudgetExceeded& e) {
    print_error("budget-exceeded", e.what(), {{"resource", e.resource()}, {"limit", e.limit()},
                                              {"partial_counts", e.partial_counts()}});
    return kUndecided;
  } catch (const std::exception& e) {
    print_error("internal", e.what());
    return kFail;
  }
}

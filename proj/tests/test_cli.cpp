// Runs the built binary through the shell and compares with in-process calls.

#include "doubling/destab.hpp"
#include "doubling/homology.hpp"
#include "doubling/json_io.hpp"
#include "doubling/tupling.hpp"
#include "doubling/wcm.hpp"

#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sys/wait.h>

using namespace doubling;
using json = nlohmann::json;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run sh(const std::string& cmd) {
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string cli() { return std::string("'") + DOUBLING_CLI + "'"; }

// Just enough of JSON Schema for the report schema: type, required,
// properties, items, enum and local $ref.
bool validate(const json& value, const json& schema, const json& root, std::string& why, const std::string& at = "$") {
  if (schema.contains("$ref")) {
    const auto ref = schema["$ref"].get<std::string>();
    return validate(value, root.at(json::json_pointer(ref.substr(1))), root, why, at);
  }
  if (schema.contains("enum")) {
    bool hit = false;
    for (const auto& e : schema["enum"]) hit = hit || e == value;
    if (!hit) {
      why = at + ": not in enum";
      return false;
    }
  }
  if (schema.contains("type")) {
    const auto t = schema["type"].get<std::string>();
    const bool ok = (t == "object" && value.is_object()) || (t == "array" && value.is_array()) ||
                    (t == "string" && value.is_string()) || (t == "boolean" && value.is_boolean()) ||
                    (t == "integer" && value.is_number_integer()) || (t == "number" && value.is_number());
    if (!ok) {
      why = at + ": expected " + t;
      return false;
    }
  }
  if (schema.contains("required")) {
    for (const auto& k : schema["required"]) {
      if (!value.contains(k.get<std::string>())) {
        why = at + ": missing " + k.get<std::string>();
        return false;
      }
    }
  }
  if (schema.contains("properties") && value.is_object()) {
    for (const auto& [k, sub] : schema["properties"].items()) {
      if (value.contains(k) && !validate(value[k], sub, root, why, at + "." + k)) return false;
    }
  }
  if (schema.contains("items") && value.is_array()) {
    for (std::size_t i = 0; i < value.size(); ++i) {
      if (!validate(value[i], schema["items"], root, why, at + "[" + std::to_string(i) + "]")) return false;
    }
  }
  return true;
}

json schema() {
  std::ifstream in(DOUBLING_SCHEMA);
  return json::parse(in);
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("pipeline equals in-process composition") {
  const auto piped = sh(cli() + " gen simplex --n 3 | " + cli() + " op tuple --r 2 | " + cli() + " homology");
  REQUIRE(piped.status == 0);
  const auto tupled = r_tuple(simplex_complex(3), 2);
  json expected = json::array();
  for (const auto& h : reduced_homology_all(ChainComplex::of(tupled.complex))) expected.push_back(h.to_json());
  CHECK(json::parse(piped.out)["homology"] == expected);
  CHECK(expected[0]["free_rank"] == 2);

  const auto gen = sh(cli() + " gen hypergraph-matching --n 6 --r 2");
  const auto direct = hypergraph_matching(6, 2);
  CHECK(complex_from_json(json::parse(gen.out)) == direct.complex);

  const auto matching = sh(cli() + " gen complete-graph --n 5 | " + cli() + " op matching");
  CHECK(complex_from_json(json::parse(matching.out)) == matching_complex(complete_graph(5)).complex);

  const auto words = sh(cli() + " destab injective-words 3");
  CHECK(json::parse(words.out) == injective_words(3).to_json());
}

TEST_CASE("homology degree above the dimension is zero") {
  const auto r = sh(cli() + " gen simplex --n 2 | " + cli() + " homology --degree 5");
  CHECK(r.status == 0);
  const auto j = json::parse(r.out);
  CHECK(j["homology"][0]["degree"] == 5);
  CHECK(j["homology"][0]["free_rank"] == 0);
  const auto mod = sh(cli() + " gen complete-graph --n 7 | " + cli() + " op matching | " + cli() + " homology --mod 3");
  CHECK(json::parse(mod.out)["homology"][1]["betti"] == 1);
}

TEST_CASE("exit codes") {
  CHECK(sh(cli() + " verify theorem22 --n 5 --r 2 >/dev/null").status == 0);
  CHECK(sh(cli() + " verify prop44 2 2 >/dev/null").status == 0);
  // ∂Δ³ is not wCM of dimension 3
  CHECK(sh(cli() + " verify theorem1 --boundary 3 --n 3 --r 2 >/dev/null").status == 1);
  CHECK(sh(cli() + " gen boundary 3 | " + cli() + " wcm --dim 2 >/dev/null").status == 0);
  CHECK(sh(cli() + " gen boundary 3 | " + cli() + " wcm --dim 3 >/dev/null").status == 1);
  CHECK(sh(cli() + " --budget-simplices 10 verify theorem22 --n 6 --r 2 >/dev/null").status == 2);
}

TEST_CASE("errors carry distinct codes") {
  const auto malformed = sh("echo '{\"facets\": [[0,1]' | " + cli() + " homology 2>&1");
  CHECK(malformed.status == 1);
  CHECK(json::parse(malformed.out)["error"]["code"] == "malformed-json");
  const auto invalid = sh("echo '{\"facets\": [[0,0]]}' | " + cli() + " homology 2>&1");
  CHECK(invalid.status == 1);
  CHECK(json::parse(invalid.out)["error"]["code"] == "invalid-input");
  const auto unknown = sh(cli() + " frobnicate 2>&1");
  CHECK(unknown.status == 1);
  CHECK(json::parse(unknown.out)["error"]["code"] == "unknown-subcommand");
  const auto budget = sh(cli() + " --budget-simplices 10 gen hypergraph-matching 8 2 2>&1");
  CHECK(budget.status == 2);
  CHECK(json::parse(budget.out)["error"]["code"] == "budget-exceeded");
}

TEST_CASE("output is byte-identical across runs and worker counts") {
  const auto a = sh(cli() + " verify theorem22 --n 7 --r 2");
  const auto b = sh(cli() + " verify theorem22 --n 7 --r 2");
  CHECK(a.out == b.out);
  const auto one = sh(cli() + " gen boundary 5 | " + cli() + " wcm --dim 4 --entries");
  const auto four = sh(cli() + " gen boundary 5 | " + cli() + " --jobs 4 wcm --dim 4 --entries");
  CHECK(one.status == 0);
  // the command echo differs; everything else must not
  auto ja = json::parse(one.out);
  auto jb = json::parse(four.out);
  ja.erase("command");
  jb.erase("command");
  CHECK(ja == jb);
}

TEST_CASE("verify reports validate against the schema") {
  const auto s = schema();
  const std::vector<std::string> commands{
      "verify theorem22 --n 4 --r 2",          "verify theorem1 --simplex 4 --n 4 --r 2",
      "verify lemma31 --simplex 3 --n 3 --m 2", "verify link-lemma --boundary 4 --r 2",
      "verify iso --n 3 --r 2",                 "verify prop44 2 2",
      "verify prop45 2 2",                      "--budget-simplices 10 verify theorem22 --n 6 --r 2",
      "--timing verify theorem22 --n 3 --r 2"};
  for (const auto& c : commands) {
    const auto r = sh(cli() + " " + c);
    std::string why;
    CHECK_MESSAGE(validate(json::parse(r.out), s, s, why), c << ": " << why);
  }
  std::string why;
  CHECK_FALSE(validate(json{{"check", "x"}}, s, s, why));
}

TEST_CASE("human format") {
  const auto r = sh(cli() + " --human verify theorem22 --n 5 --r 2");
  CHECK(r.out.rfind("theorem22: pass", 0) == 0);
  const auto h = sh(cli() + " gen complete-graph 7 | " + cli() + " op matching | " + cli() + " --format human homology");
  CHECK(h.out.find("H~_1 = Z/3") != std::string::npos);
}

}

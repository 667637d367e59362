#include "doubling/json_io.hpp"

#include "doubling/tupling.hpp"

namespace doubling {

namespace {

std::int64_t require_int(const nlohmann::json& j, const char* what) {
  if (!j.is_number_integer()) throw InvalidInput(std::string("expected integer for ") + what);
  return j.get<std::int64_t>();
}

Vertex require_vertex(const nlohmann::json& j, const char* what) {
  auto v = require_int(j, what);
  if (v < 0 || v > std::numeric_limits<Vertex>::max()) {
    throw InvalidInput(std::string("vertex id out of range in ") + what);
  }
  return static_cast<Vertex>(v);
}

}  // namespace

nlohmann::json complex_to_json(const SimplicialComplex& x) {
  nlohmann::json facets = nlohmann::json::array();
  for (const auto& f : x.facets()) facets.push_back(f.to_vector());
  return {{"vertices", x.vertex_bound()}, {"facets", facets}};
}

SimplicialComplex complex_from_json(const nlohmann::json& j, const Limits& limits) {
  if (!j.is_object() || !j.contains("facets")) throw InvalidInput("complex: expected an object with \"facets\"");
  const auto& fj = j.at("facets");
  if (!fj.is_array()) throw InvalidInput("complex: \"facets\" must be an array");
  std::vector<Simplex> facets;
  for (const auto& f : fj) {
    if (!f.is_array()) throw InvalidInput("complex: each facet must be an array");
    std::vector<Vertex> verts;
    for (const auto& v : f) verts.push_back(require_vertex(v, "facet"));
    facets.emplace_back(std::span<const Vertex>(verts.data(), verts.size()));
    if (facets.back().size() != verts.size()) throw InvalidInput("complex: repeated vertex inside a facet");
  }
  std::optional<Vertex> bound;
  if (j.contains("vertices")) bound = require_vertex(j.at("vertices"), "vertices");
  return SimplicialComplex::from_facets(std::move(facets), bound, limits);
}

nlohmann::json vertex_table_to_json(const VertexTable& table) {
  nlohmann::json labels = nlohmann::json::object();
  for (const auto& [id, label] : table.entries()) labels[std::to_string(id)] = label;
  return {{"labels", labels}};
}

VertexTable vertex_table_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("labels") || !j.at("labels").is_object()) {
    throw InvalidInput("vertex table: expected {\"labels\": {...}}");
  }
  VertexTable table;
  for (const auto& [key, value] : j.at("labels").items()) {
    Vertex id = 0;
    try {
      id = static_cast<Vertex>(std::stoul(key));
    } catch (const std::exception&) {
      throw InvalidInput("vertex table: non-numeric id " + key);
    }
    if (!value.is_array()) throw InvalidInput("vertex table: label must be an array");
    Label label;
    for (const auto& x : value) label.push_back(require_vertex(x, "label"));
    table.insert(id, std::move(label));
  }
  return table;
}

nlohmann::json graph_to_json(const Graph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [a, b] : g.edges) edges.push_back({a, b});
  return {{"vertices", g.vertex_count}, {"edges", edges}};
}

Graph graph_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j.contains("edges") || !j.at("edges").is_array()) {
    throw InvalidInput("graph: expected {\"vertices\": n, \"edges\": [[a,b],...]}");
  }
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2) throw InvalidInput("graph: each edge must be a pair");
    edges.emplace_back(require_vertex(e[0], "edge"), require_vertex(e[1], "edge"));
  }
  return Graph::make(require_vertex(j.at("vertices"), "vertices"), std::move(edges));
}

nlohmann::json parse_json_text(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
}

std::string dump_stable(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace doubling

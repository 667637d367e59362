#pragma once

#include "doubling/complex.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>

namespace doubling {

struct Graph;

/// {"vertices": <id bound>, "facets": [[...], ...]} with facets in
/// lexicographic order.
nlohmann::json complex_to_json(const SimplicialComplex& x);
SimplicialComplex complex_from_json(const nlohmann::json& j, const Limits& limits = default_limits());

/// {"labels": {"<id>": [...]}}
nlohmann::json vertex_table_to_json(const VertexTable& table);
VertexTable vertex_table_from_json(const nlohmann::json& j);

nlohmann::json graph_to_json(const Graph& g);
Graph graph_from_json(const nlohmann::json& j);

/// Parses text, mapping syntax and schema errors to InvalidInput.
nlohmann::json parse_json_text(const std::string& text);

/// Serialization used for every byte-stable output: two-space indent, object
/// keys in sorted order (nlohmann's default map ordering).
std::string dump_stable(const nlohmann::json& j);

}  // namespace doubling

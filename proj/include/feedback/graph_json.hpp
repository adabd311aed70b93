#pragma once

#include <string_view>

#include "json.hpp"

#include "feedback/families.hpp"
#include "feedback/graph.hpp"

namespace feedback {

// {"vertices": [...], "edges": [["u0","v0"], ...]} with an optional
// "layout": {"u0": [x, y], ...}. Edge order defines edge indices.
nlohmann::json graph_to_json(const Graph& g, const Layout* layout = nullptr);

// Rejects the same cases as Graph::build, plus ParseError for malformed
// documents.
Graph graph_from_json(const nlohmann::json& doc);
Graph parse_graph_json(std::string_view text);

}  // namespace feedback

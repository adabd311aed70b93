#include "feedback/graph_json.hpp"

#include "feedback/error.hpp"

namespace feedback {

nlohmann::json graph_to_json(const Graph& g, const Layout* layout) {
  nlohmann::json doc;
  doc["vertices"] = g.names();
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [a, b] : g.edge_name_pairs()) edges.push_back({a, b});
  doc["edges"] = std::move(edges);
  if (layout != nullptr) {
    nlohmann::json pos = nlohmann::json::object();
    for (VertexId v = 0; v < g.vertex_count() && v < layout->size(); ++v) {
      pos[g.name(v)] = {(*layout)[v].x, (*layout)[v].y};
    }
    doc["layout"] = std::move(pos);
  }
  return doc;
}

Graph graph_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw Error(Errc::ParseError, "graph document must be an object");
  auto vit = doc.find("vertices");
  auto eit = doc.find("edges");
  if (vit == doc.end() || !vit->is_array()) throw Error(Errc::ParseError, "\"vertices\" must be an array of names");
  if (eit == doc.end() || !eit->is_array()) throw Error(Errc::ParseError, "\"edges\" must be an array of name pairs");

  std::vector<std::string> names;
  for (const auto& v : *vit) {
    if (!v.is_string()) throw Error(Errc::ParseError, "vertex names must be strings, got " + v.dump());
    names.push_back(v.get<std::string>());
  }
  std::vector<NamePair> pairs;
  for (const auto& e : *eit) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string()) {
      throw Error(Errc::ParseError, "edge must be a pair of vertex names, got " + e.dump());
    }
    pairs.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
  }
  return Graph::build(std::move(names), pairs);
}

Graph parse_graph_json(std::string_view text) {
  nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw Error(Errc::ParseError, "graph document is not valid JSON");
  return graph_from_json(doc);
}

}  // namespace feedback

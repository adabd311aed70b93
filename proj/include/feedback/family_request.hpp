#pragma once

#include <map>
#include <optional>
#include <string>

#include "json.hpp"

#include "feedback/families.hpp"
#include "feedback/graph.hpp"

namespace feedback {

enum class FamilyType { OctahedralPath, DoubleWheel, Cycle, Custom };

// Accepts "octahedral_path"/"octa", "double_wheel"/"dw", "cycle", "custom".
std::optional<FamilyType> parse_family_type(std::string_view text);
std::string_view family_type_name(FamilyType t);

// A graph family plus a start vertex, as named by CLI flags or API bodies.
struct FamilyRequest {
  FamilyType type = FamilyType::OctahedralPath;
  int n = 1;    // level count (octahedral path) or length (cycle)
  int rim = 0;  // double wheel; falls back to n when unset
  std::optional<int> p;              // octahedral path: start at v_p
  std::optional<std::string> start;  // explicit start name, wins over p
  nlohmann::json graph;              // custom: inline Graph JSON
};

struct BuiltFamily {
  Graph graph;
  std::optional<Layout> layout;
  VertexId start = 0;
};

/// Builds the requested graph and resolves the start vertex: the explicit
/// name, else v_p, else vertex 0. Throws the constructor's Error (for
/// instance BadParameter or UnknownVertex).
BuiltFamily build_family(const FamilyRequest& request);

// From a JSON body: {"family": ..., "n": .., "rim": .., "p": .., "start": .., "graph": {..}}.
// Throws ParseError or BadParameter.
FamilyRequest family_request_from_json(const nlohmann::json& body);

// From query parameters with the same keys.
FamilyRequest family_request_from_params(const std::multimap<std::string, std::string>& params);

}  // namespace feedback

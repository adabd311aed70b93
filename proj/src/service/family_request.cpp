#include "feedback/family_request.hpp"

#include <charconv>

#include "feedback/error.hpp"
#include "feedback/graph_json.hpp"

namespace feedback {

std::optional<FamilyType> parse_family_type(std::string_view text) {
  if (text == "octahedral_path" || text == "octa") return FamilyType::OctahedralPath;
  if (text == "double_wheel" || text == "dw") return FamilyType::DoubleWheel;
  if (text == "cycle") return FamilyType::Cycle;
  if (text == "custom") return FamilyType::Custom;
  return std::nullopt;
}

std::string_view family_type_name(FamilyType t) {
  switch (t) {
    case FamilyType::OctahedralPath: return "octahedral_path";
    case FamilyType::DoubleWheel: return "double_wheel";
    case FamilyType::Cycle: return "cycle";
    case FamilyType::Custom: return "custom";
  }
  return "";
}

BuiltFamily build_family(const FamilyRequest& request) {
  BuiltFamily out;
  switch (request.type) {
    case FamilyType::OctahedralPath:
      out.graph = octahedral_path(request.n);
      out.layout = octahedral_path_layout(request.n);
      break;
    case FamilyType::DoubleWheel: {
      int rim = request.rim > 0 ? request.rim : request.n;
      out.graph = double_wheel(rim);
      out.layout = double_wheel_layout(rim);
      break;
    }
    case FamilyType::Cycle:
      out.graph = cycle_graph(request.n);
      out.layout = cycle_layout(request.n);
      break;
    case FamilyType::Custom:
      out.graph = graph_from_json(request.graph);
      break;
  }
  if (request.start) {
    out.start = out.graph.index_of(*request.start);
  } else if (request.p) {
    if (request.type != FamilyType::OctahedralPath || *request.p < 0 || *request.p > request.n) {
      throw Error(Errc::BadParameter, "p must select a level 0..n of an octahedral path");
    }
    out.start = octa_vertex(Row::V, *request.p);
  }
  return out;
}

namespace {

int json_int(const nlohmann::json& body, const char* key, int fallback) {
  auto it = body.find(key);
  if (it == body.end() || it->is_null()) return fallback;
  if (!it->is_number_integer()) throw Error(Errc::ParseError, std::string("\"") + key + "\" must be an integer");
  return it->get<int>();
}

int param_int(const std::string& key, const std::string& text) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(Errc::BadParameter, "parameter " + key + " must be an integer, got '" + text + "'");
  }
  return value;
}

FamilyType require_type(std::string_view text) {
  auto t = parse_family_type(text);
  if (!t) throw Error(Errc::BadParameter, "unknown family '" + std::string(text) + "'");
  return *t;
}

}  // namespace

FamilyRequest family_request_from_json(const nlohmann::json& body) {
  if (!body.is_object()) throw Error(Errc::ParseError, "request body must be a JSON object");
  FamilyRequest req;
  auto fam = body.find("family");
  if (fam == body.end() || !fam->is_string()) throw Error(Errc::ParseError, "\"family\" must be a string");
  req.type = require_type(fam->get<std::string>());
  req.n = json_int(body, "n", req.type == FamilyType::Cycle ? 3 : 1);
  req.rim = json_int(body, "rim", 0);
  if (auto it = body.find("p"); it != body.end() && !it->is_null()) req.p = json_int(body, "p", 0);
  if (auto it = body.find("start"); it != body.end() && !it->is_null()) {
    if (!it->is_string()) throw Error(Errc::ParseError, "\"start\" must be a vertex name");
    req.start = it->get<std::string>();
  }
  if (req.type == FamilyType::Custom) {
    auto g = body.find("graph");
    if (g == body.end()) throw Error(Errc::ParseError, "custom family needs an inline \"graph\"");
    req.graph = *g;
  }
  return req;
}

FamilyRequest family_request_from_params(const std::multimap<std::string, std::string>& params) {
  auto get = [&](const std::string& key) -> std::optional<std::string> {
    auto it = params.find(key);
    if (it == params.end()) return std::nullopt;
    return it->second;
  };
  FamilyRequest req;
  auto fam = get("family");
  if (!fam) throw Error(Errc::BadParameter, "missing parameter family");
  req.type = require_type(*fam);
  if (req.type == FamilyType::Custom) throw Error(Errc::BadParameter, "custom graphs need a JSON body");
  if (req.type == FamilyType::Cycle) req.n = 3;
  if (auto v = get("n")) req.n = param_int("n", *v);
  if (auto v = get("rim")) req.rim = param_int("rim", *v);
  if (auto v = get("p")) req.p = param_int("p", *v);
  if (auto v = get("start")) req.start = *v;
  return req;
}

}  // namespace feedback

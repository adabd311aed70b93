#include "feedback/service.hpp"

#include <cstdio>

#include "httplib.h"

#include "feedback/error.hpp"
#include "feedback/graph_json.hpp"

namespace feedback {

namespace {

using nlohmann::json;

json error_body(const Error& e) { return {{"error", errc_name(e.code())}, {"message", e.what()}}; }
json error_body(std::string_view code, const std::string& message) { return {{"error", code}, {"message", message}}; }

std::int64_t epoch_seconds(std::chrono::system_clock::time_point t) {
  return std::chrono::duration_cast<std::chrono::seconds>(t.time_since_epoch()).count();
}

json move_json(const Graph& g, const MoveRecord& m) {
  return {{"player", player_name(m.player)}, {"from", g.name(m.from)}, {"to", g.name(m.to)}, {"by_engine", m.by_engine}};
}

std::optional<json> parse_body(const std::string& body) {
  json doc = json::parse(body, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) return std::nullopt;
  return doc;
}

}  // namespace

json state_to_json(const GameState& state) {
  const Graph& g = state.graph();
  json used = json::array();
  for (EdgeId e : state.used().elements()) used.push_back({g.name(g.edge(e).a), g.name(g.edge(e).b)});
  json doc = {{"start", g.name(state.start())},
              {"token", g.name(state.token())},
              {"used", std::move(used)},
              {"mover", player_name(state.mover())},
              {"status", state.ongoing() ? "ongoing" : "won"}};
  if (const auto& outcome = state.outcome()) {
    doc["winner"] = player_name(outcome->winner);
    doc["reason"] = reason_name(outcome->reason);
  }
  return doc;
}

json verdict_to_json(const Graph& g, VertexId start, const Verdict& verdict) {
  return {{"start", g.name(start)},
          {"winner", player_name(verdict.winner)},
          {"witness", verdict.witness ? json(g.name(*verdict.witness)) : json(nullptr)},
          {"stats",
           {{"states_explored", verdict.stats.states_explored},
            {"memo_entries", verdict.stats.memo_entries},
            {"elapsed_seconds", verdict.stats.elapsed.count()}}}};
}

json Session::to_json(std::size_t new_moves) const {
  const Graph& g = *graph;
  json all = json::array();
  for (const auto& m : moves) all.push_back(move_json(g, m));
  json last = json::array();
  for (std::size_t i = moves.size() - std::min(new_moves, moves.size()); i < moves.size(); ++i) {
    last.push_back(move_json(g, moves[i]));
  }
  json legal = json::array();
  if (state.ongoing()) {
    for (VertexId v : legal_moves(state)) legal.push_back(g.name(v));
  }
  return {{"id", id},
          {"family", family_type_name(family)},
          {"engine_side", engine_side ? json(player_name(*engine_side)) : json(nullptr)},
          {"engine", engine_side ? json(engine_optimal ? "optimal" : "non-optimal") : json(nullptr)},
          {"state", state_to_json(state)},
          {"legal_moves", std::move(legal)},
          {"moves", std::move(all)},
          {"last_moves", std::move(last)},
          {"created_at", epoch_seconds(created)},
          {"updated_at", epoch_seconds(updated)}};
}

SessionStore::SessionStore(std::size_t capacity, std::chrono::seconds idle, Clock clock)
    : capacity_(capacity == 0 ? 1 : capacity), idle_(idle), clock_(std::move(clock)), ids_(std::random_device{}()) {}

void SessionStore::evict_idle(std::chrono::steady_clock::time_point now) {
  while (!recency_.empty()) {
    auto it = entries_.find(recency_.back());
    if (now - it->second.last_access < idle_) break;
    entries_.erase(it);
    recency_.pop_back();
  }
}

std::shared_ptr<Session> SessionStore::insert(std::shared_ptr<Session> session) {
  std::lock_guard guard(mutex_);
  auto now = clock_();
  evict_idle(now);
  while (entries_.size() >= capacity_) {
    entries_.erase(recency_.back());
    recency_.pop_back();
  }
  std::string id;
  do {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(ids_()));
    id = buf;
  } while (entries_.contains(id));
  session->id = id;
  recency_.push_front(id);
  entries_.emplace(id, Entry{session, now, recency_.begin()});
  return session;
}

std::shared_ptr<Session> SessionStore::find(const std::string& id) {
  std::lock_guard guard(mutex_);
  auto now = clock_();
  evict_idle(now);
  auto it = entries_.find(id);
  if (it == entries_.end()) return nullptr;
  it->second.last_access = now;
  recency_.splice(recency_.begin(), recency_, it->second.position);
  return it->second.session;
}

std::size_t SessionStore::size() {
  std::lock_guard guard(mutex_);
  return entries_.size();
}

Service::Service(ServiceOptions options)
    : options_(std::move(options)), sessions_(options_.session_capacity, options_.session_idle, options_.clock) {}

MoveRecord Service::engine_move(Session& s) {
  VertexId to;
  if (s.engine_optimal) {
    if (!s.solver) s.solver.emplace(*s.graph, s.state.start(), options_.solver);
    to = s.solver->best_move(s.state);
  } else {
    to = greedy_move(s.state);
  }
  MoveRecord rec{s.state.mover(), s.state.token(), to, true};
  s.state = apply_move(s.state, to);
  s.moves.push_back(rec);
  return rec;
}

ApiResponse Service::create_game(const std::string& body) {
  auto doc = parse_body(body);
  if (!doc) return {400, error_body("ParseError", "request body must be a JSON object")};
  try {
    FamilyRequest req = family_request_from_json(*doc);
    std::optional<Player> engine;
    if (auto it = doc->find("engine_side"); it != doc->end() && !it->is_null()) {
      if (!it->is_string()) return {400, error_body("ParseError", "\"engine_side\" must be a string")};
      std::string side = it->get<std::string>();
      if (side != "none") {
        engine = parse_player(side);
        if (!engine) return {400, error_body("BadParameter", "engine_side must be alice, bob or none")};
      }
    }
    BuiltFamily built = build_family(req);
    auto session = std::make_shared<Session>();
    session->family = req.type;
    session->graph = std::make_shared<const Graph>(std::move(built.graph));
    session->layout = std::move(built.layout);
    session->state = new_game(*session->graph, built.start);
    session->engine_side = engine;
    session->engine_optimal = session->graph->edge_count() <= std::min(options_.solver.edge_limit, kMaxEdgeLimit);
    session->created = session->updated = std::chrono::system_clock::now();
    std::size_t fresh = 0;
    if (engine == Player::Alice) {
      engine_move(*session);
      fresh = 1;
    }
    sessions_.insert(session);
    return {201, session->to_json(fresh)};
  } catch (const Error& e) {
    return {e.code() == Errc::IsolatedStart ? 422 : 400, error_body(e)};
  }
}

ApiResponse Service::get_game(const std::string& id) {
  auto session = sessions_.find(id);
  if (!session) return {404, error_body("NotFound", "no session '" + id + "'")};
  std::lock_guard guard(session->mutex);
  return {200, session->to_json()};
}

ApiResponse Service::post_move(const std::string& id, const std::string& body) {
  auto session = sessions_.find(id);
  if (!session) return {404, error_body("NotFound", "no session '" + id + "'")};
  std::unique_lock guard(session->mutex, std::try_to_lock);
  if (!guard.owns_lock()) return {409, error_body("Busy", "another move for this session is in progress")};
  Session& s = *session;
  if (!s.state.ongoing()) return {409, error_body("GameOver", "the game is already decided")};
  if (s.engine_side == s.state.mover()) return {409, error_body("NotYourTurn", "it is the engine's turn")};

  auto doc = parse_body(body);
  if (!doc || !doc->contains("to") || !(*doc)["to"].is_string()) {
    return {400, error_body("ParseError", "body must be {\"to\": <vertex name>}")};
  }
  std::string to_name = (*doc)["to"].get<std::string>();
  auto to = s.graph->find(to_name);
  if (!to) {
    return {422, error_body("IllegalMove", "edge " + s.graph->name(s.state.token()) + "-" + to_name + " does not exist")};
  }
  try {
    MoveRecord rec{s.state.mover(), s.state.token(), *to, false};
    s.state = apply_move(s.state, *to);
    s.moves.push_back(rec);
    std::size_t fresh = 1;
    if (s.state.ongoing() && s.engine_side == s.state.mover()) {
      engine_move(s);
      ++fresh;
    }
    s.updated = std::chrono::system_clock::now();
    return {200, s.to_json(fresh)};
  } catch (const Error& e) {
    if (e.code() == Errc::IllegalMove) return {422, error_body(e)};
    if (e.code() == Errc::GameOver) return {409, error_body(e)};
    return {500, error_body(e)};
  }
}

ApiResponse Service::solve(const QueryParams& params) {
  try {
    BuiltFamily built = build_family(family_request_from_params(params));
    Verdict v = feedback::solve(built.graph, built.start, options_.solver);
    return {200, verdict_to_json(built.graph, built.start, v)};
  } catch (const Error& e) {
    switch (e.code()) {
      case Errc::LimitExceeded:
      case Errc::CapExceeded: return {413, error_body(e)};
      case Errc::IsolatedStart: return {422, error_body(e)};
      default: return {400, error_body(e)};
    }
  }
}

ApiResponse Service::graph(const QueryParams& params) {
  try {
    BuiltFamily built = build_family(family_request_from_params(params));
    json doc = graph_to_json(built.graph, built.layout ? &*built.layout : nullptr);
    return {200, doc};
  } catch (const Error& e) {
    return {400, error_body(e)};
  }
}

void Service::install_routes(httplib::Server& server) {
  auto send = [](httplib::Response& res, const ApiResponse& r) {
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  auto params_of = [](const httplib::Request& req) {
    QueryParams out;
    for (const auto& [k, v] : req.params) out.emplace(k, v);
    return out;
  };
  server.Post("/api/games", [this, send](const httplib::Request& req, httplib::Response& res) {
    send(res, create_game(req.body));
  });
  server.Get(R"(/api/games/([0-9a-f]+))", [this, send](const httplib::Request& req, httplib::Response& res) {
    send(res, get_game(req.matches[1]));
  });
  server.Post(R"(/api/games/([0-9a-f]+)/moves)", [this, send](const httplib::Request& req, httplib::Response& res) {
    send(res, post_move(req.matches[1], req.body));
  });
  server.Get("/api/solve", [this, send, params_of](const httplib::Request& req, httplib::Response& res) {
    send(res, solve(params_of(req)));
  });
  server.Get("/api/graph", [this, send, params_of](const httplib::Request& req, httplib::Response& res) {
    send(res, graph(params_of(req)));
  });
}

}  // namespace feedback

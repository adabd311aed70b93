#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <list>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"

#include "feedback/families.hpp"
#include "feedback/family_request.hpp"
#include "feedback/game.hpp"
#include "feedback/solver.hpp"

namespace httplib {
class Server;
}

namespace feedback {

// Wire encodings. Vertices are always referenced by name.
nlohmann::json state_to_json(const GameState& state);
nlohmann::json verdict_to_json(const Graph& g, VertexId start, const Verdict& verdict);

struct MoveRecord {
  Player player;
  VertexId from;
  VertexId to;
  bool by_engine;
};

struct Session {
  std::string id;
  FamilyType family = FamilyType::Custom;
  std::shared_ptr<const Graph> graph;  // owns what `state` points at
  std::optional<Layout> layout;
  GameState state;
  std::optional<Player> engine_side;
  bool engine_optimal = true;
  std::optional<Solver> solver;  // built on the engine's first move
  std::vector<MoveRecord> moves;
  std::chrono::system_clock::time_point created;
  std::chrono::system_clock::time_point updated;

  // Held for the whole of a move request; a second request gets 409.
  std::mutex mutex;

  nlohmann::json to_json(std::size_t new_moves = 0) const;
};

/// In-memory sessions with an LRU cap and idle eviction.
class SessionStore {
 public:
  using Clock = std::function<std::chrono::steady_clock::time_point()>;

  SessionStore(std::size_t capacity = 1024, std::chrono::seconds idle = std::chrono::hours(1),
               Clock clock = [] { return std::chrono::steady_clock::now(); });

  // Assigns a fresh id and stores the session, evicting the least recently
  // used one when full.
  std::shared_ptr<Session> insert(std::shared_ptr<Session> session);
  // nullptr if unknown or idle past the limit. Refreshes recency.
  std::shared_ptr<Session> find(const std::string& id);
  std::size_t size();

 private:
  struct Entry {
    std::shared_ptr<Session> session;
    std::chrono::steady_clock::time_point last_access;
    std::list<std::string>::iterator position;
  };

  void evict_idle(std::chrono::steady_clock::time_point now);

  std::size_t capacity_;
  std::chrono::seconds idle_;
  Clock clock_;
  std::mutex mutex_;
  std::list<std::string> recency_;  // most recent first
  std::unordered_map<std::string, Entry> entries_;
  std::mt19937_64 ids_;
};

struct ServiceOptions {
  SolverOptions solver;
  std::size_t session_capacity = 1024;
  std::chrono::seconds session_idle = std::chrono::hours(1);
  SessionStore::Clock clock = [] { return std::chrono::steady_clock::now(); };
};

struct ApiResponse {
  int status = 200;
  nlohmann::json body;
};

using QueryParams = std::multimap<std::string, std::string>;

/// Request handlers for the HTTP API, callable without a socket.
///
///   POST /api/games             create_game
///   GET  /api/games/{id}        get_game
///   POST /api/games/{id}/moves  post_move
///   GET  /api/solve             solve
///   GET  /api/graph             graph
class Service {
 public:
  explicit Service(ServiceOptions options = {});

  ApiResponse create_game(const std::string& body);
  ApiResponse get_game(const std::string& id);
  ApiResponse post_move(const std::string& id, const std::string& body);
  ApiResponse solve(const QueryParams& params);
  ApiResponse graph(const QueryParams& params);

  void install_routes(httplib::Server& server);

  SessionStore& sessions() { return sessions_; }

 private:
  MoveRecord engine_move(Session& s);

  ServiceOptions options_;
  SessionStore sessions_;
};

}  // namespace feedback

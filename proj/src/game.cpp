#include "feedback/game.hpp"

#include <bit>

#include "feedback/error.hpp"

namespace feedback {

std::string_view player_name(Player p) { return p == Player::Alice ? "alice" : "bob"; }

std::optional<Player> parse_player(std::string_view text) {
  if (text == "alice" || text == "Alice") return Player::Alice;
  if (text == "bob" || text == "Bob") return Player::Bob;
  return std::nullopt;
}

std::string_view reason_name(WinReason r) {
  return r == WinReason::ReturnedToStart ? "returned_to_start" : "isolated_vertex";
}

std::size_t EdgeSet::size() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::vector<EdgeId> EdgeSet::elements() const {
  std::vector<EdgeId> out;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    for (auto w = words_[i]; w != 0; w &= w - 1) {
      out.push_back(static_cast<EdgeId>(i * 64 + std::countr_zero(w)));
    }
  }
  return out;
}

std::size_t GameState::free_degree(VertexId v) const {
  std::size_t n = 0;
  for (const auto& inc : graph_->adjacency(v)) {
    if (!used_.contains(inc.edge)) ++n;
  }
  return n;
}

GameState new_game(const Graph& g, VertexId start) {
  if (start >= g.vertex_count()) {
    throw Error(Errc::UnknownVertex, "start index " + std::to_string(start) + " out of range");
  }
  if (g.degree(start) == 0) throw Error(Errc::IsolatedStart, "start vertex '" + g.name(start) + "' has no edges");
  GameState s;
  s.graph_ = &g;
  s.start_ = start;
  s.token_ = start;
  s.used_ = EdgeSet(g.edge_count());
  return s;
}

std::vector<VertexId> legal_moves(const GameState& state) {
  if (!state.ongoing()) throw Error(Errc::GameOver, "the game is already decided");
  std::vector<VertexId> out;
  for (const auto& inc : state.graph().adjacency(state.token())) {
    if (!state.used().contains(inc.edge)) out.push_back(inc.neighbor);
  }
  return out;
}

GameState apply_move(const GameState& state, VertexId to) {
  if (!state.ongoing()) throw Error(Errc::GameOver, "the game is already decided");
  const Graph& g = state.graph();
  const std::string from_name = g.name(state.token());
  if (to >= g.vertex_count()) {
    throw Error(Errc::IllegalMove, "no vertex with index " + std::to_string(to) + " next to " + from_name);
  }
  auto e = g.edge_between(state.token(), to);
  if (!e) throw Error(Errc::IllegalMove, "edge " + from_name + "-" + g.name(to) + " does not exist");
  if (state.used().contains(*e)) throw Error(Errc::IllegalMove, "edge " + from_name + "-" + g.name(to) + " is already used");

  Player moved = state.mover();
  GameState next = state;
  next.used_.insert(*e);
  next.token_ = to;
  ++next.moves_played_;
  if (to == state.start()) {
    next.outcome_ = Outcome{moved, WinReason::ReturnedToStart};
  } else if (next.free_degree(to) == 0) {
    next.outcome_ = Outcome{moved, WinReason::IsolatedVertex};
  }
  return next;
}

}  // namespace feedback

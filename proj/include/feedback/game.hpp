#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "feedback/graph.hpp"

namespace feedback {

// Alice always moves first.
enum class Player : std::uint8_t { Alice, Bob };

constexpr Player opponent(Player p) { return p == Player::Alice ? Player::Bob : Player::Alice; }
std::string_view player_name(Player p);  // "alice" / "bob"
std::optional<Player> parse_player(std::string_view text);

enum class WinReason : std::uint8_t { ReturnedToStart, IsolatedVertex };
std::string_view reason_name(WinReason r);  // "returned_to_start" / "isolated_vertex"

struct Outcome {
  Player winner;
  WinReason reason;
  friend bool operator==(const Outcome&, const Outcome&) = default;
};

// Set of edge indices, sized to the graph.
class EdgeSet {
 public:
  EdgeSet() = default;
  explicit EdgeSet(std::size_t edge_count) : words_((edge_count + 63) / 64, 0) {}

  bool contains(EdgeId e) const { return (words_[e >> 6] >> (e & 63)) & 1u; }
  void insert(EdgeId e) { words_[e >> 6] |= std::uint64_t{1} << (e & 63); }
  std::size_t size() const;
  std::vector<EdgeId> elements() const;
  // Low 64 edges; exact whenever the graph has at most 64 edges.
  std::uint64_t low_word() const { return words_.empty() ? 0 : words_[0]; }

  friend bool operator==(const EdgeSet&, const EdgeSet&) = default;

 private:
  std::vector<std::uint64_t> words_;
};

/// A complete position of the feedback game.
///
/// The graph is referenced, not owned, and must outlive the state. The
/// player to move is derived from the number of used edges.
class GameState {
 public:
  const Graph& graph() const { return *graph_; }
  VertexId start() const { return start_; }
  VertexId token() const { return token_; }
  const EdgeSet& used() const { return used_; }
  std::size_t moves_played() const { return moves_played_; }
  Player mover() const { return moves_played_ % 2 == 0 ? Player::Alice : Player::Bob; }
  bool ongoing() const { return !outcome_.has_value(); }
  const std::optional<Outcome>& outcome() const { return outcome_; }
  std::optional<Player> winner() const {
    return outcome_ ? std::optional<Player>(outcome_->winner) : std::nullopt;
  }

  // Unused incident edges of v.
  std::size_t free_degree(VertexId v) const;

 private:
  friend GameState new_game(const Graph& g, VertexId start);
  friend GameState apply_move(const GameState& state, VertexId to);

  const Graph* graph_ = nullptr;
  VertexId start_ = 0;
  VertexId token_ = 0;
  EdgeSet used_;
  std::size_t moves_played_ = 0;
  std::optional<Outcome> outcome_;
};

// Throws UnknownVertex for a bad index and IsolatedStart if deg(start) = 0.
GameState new_game(const Graph& g, VertexId start);

// Neighbors of the token over unused edges, ascending. Throws GameOver.
std::vector<VertexId> legal_moves(const GameState& state);

/// Moves the token to `to` and deletes the edge used. The mover wins if the
/// token lands on the start or on a vertex with no unused edge left.
/// Throws GameOver or IllegalMove (naming the edge).
GameState apply_move(const GameState& state, VertexId to);

}  // namespace feedback

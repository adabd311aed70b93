#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "feedback/game.hpp"
#include "feedback/graph.hpp"

namespace feedback {

// Solver state is a 64-bit used-edge mask.
inline constexpr std::size_t kMaxEdgeLimit = 64;
inline constexpr std::size_t kDefaultEdgeLimit = 40;
inline constexpr std::size_t kNaiveEdgeLimit = 14;

struct SolverOptions {
  std::size_t edge_limit = kDefaultEdgeLimit;
  // 0 means unbounded. Reaching the cap throws CapExceeded; nothing is evicted.
  std::size_t memo_cap = 0;
  // Worker threads for the root fan-out; 1 searches on the calling thread.
  unsigned threads = 1;

  // Defaults, with FEEDBACK_EDGE_LIMIT overriding edge_limit (clamped to
  // kMaxEdgeLimit). Throws BadParameter on a malformed value.
  static SolverOptions from_env();
};

struct SearchStats {
  std::uint64_t states_explored = 0;
  std::uint64_t memo_entries = 0;
  std::chrono::duration<double> elapsed{0};
};

struct Verdict {
  Player winner = Player::Bob;
  // Lowest-index winning first move; present iff Alice wins.
  std::optional<VertexId> witness;
  SearchStats stats;
};

/// Memoized AND/OR search for one (graph, start) pair.
///
/// Positions are keyed by (token, used-mask); the mover is the parity of the
/// mask. Moving to the start or to a vertex left without unused edges wins on
/// the spot, otherwise the mover wins iff some child is lost for the
/// opponent. Terminal positions are never stored. The table persists across
/// calls, so one Solver can answer repeated best_move queries for a game.
class Solver {
 public:
  // Throws UnknownVertex, IsolatedStart, LimitExceeded.
  Solver(const Graph& g, VertexId start, SolverOptions options = {});
  ~Solver();
  Solver(Solver&&) noexcept;
  Solver& operator=(Solver&&) noexcept;

  Verdict solve();

  // True if the player to move in the ongoing `state` wins with best play.
  bool mover_wins(const GameState& state);

  /// Lowest-index move into a position lost for the opponent, or, when the
  /// position is lost, the lowest-index move that keeps the game going
  /// longest against a winner who finishes as fast as possible.
  /// Throws GameOver.
  VertexId best_move(const GameState& state);

  // Plies left under that convention: the winner hurries, the loser delays.
  int remaining_plies(const GameState& state);

  const SearchStats& stats() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

Verdict solve(const Graph& g, VertexId start, const SolverOptions& options = {});

// Unmemoized full recursion; the reference oracle for solve.
// Throws LimitExceeded above kNaiveEdgeLimit edges.
Verdict solve_naive(const Graph& g, VertexId start);

// One-shot helper. Throws GameOver, LimitExceeded.
VertexId best_move(const GameState& state, const SolverOptions& options = {});

// Wins on the spot if it can, otherwise plays the lowest-index legal move.
// Used when the graph is beyond the solver's reach.
VertexId greedy_move(const GameState& state);

// ---------------------------------------------------------------------------
// Octahedral path winner table.

// Winner of E(n, p) as tabulated by (n mod 3, p mod 3).
Player expected_octapath_winner(int n, int p);

struct TableRow {
  int n = 0;
  int p = 0;
  Player expected = Player::Bob;
  Player computed = Player::Bob;
  bool agrees = false;
  SearchStats stats;
};

struct TableReport {
  std::vector<TableRow> rows;

  bool all_agree() const;
  std::string to_text() const;
  std::string to_json() const;
};

/// Solves E(n, p) from v_p for every requested n and every p in 0..n and
/// compares with expected_octapath_winner. Throws BadParameter for n < 1 and
/// LimitExceeded when 9n+3 exceeds the edge limit.
TableReport verify_octapath_table(const std::vector<int>& n_values, const SolverOptions& options = {});

}  // namespace feedback

#include "feedback/solver.hpp"

#include <algorithm>
#include <cstdlib>
#include <mutex>
#include <thread>

#include <absl/container/flat_hash_map.h>
#include <absl/hash/hash.h>

#include "feedback/error.hpp"

namespace feedback {

namespace {

using Mask = std::uint64_t;

struct Key {
  Mask used;
  VertexId token;

  friend bool operator==(const Key&, const Key&) = default;
  template <typename H>
  friend H AbslHashValue(H h, const Key& k) {
    return H::combine(std::move(h), k.used, k.token);
  }
};

struct Arc {
  VertexId to;
  Mask bit;
};

// Flattened adjacency with one bit per edge.
struct Board {
  std::vector<std::vector<Arc>> arcs;
  std::vector<Mask> incident;
  VertexId start = 0;

  Board(const Graph& g, VertexId s) : arcs(g.vertex_count()), incident(g.vertex_count(), 0), start(s) {
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      for (const auto& inc : g.adjacency(v)) {
        Mask bit = Mask{1} << inc.edge;
        arcs[v].push_back({inc.neighbor, bit});
        incident[v] |= bit;
      }
    }
  }

  // The move along `arc` ends the game in the mover's favour.
  bool wins_now(const Arc& arc, Mask used) const {
    return arc.to == start || (incident[arc.to] & ~(used | arc.bit)) == 0;
  }
};

void check_solvable(const Graph& g, VertexId start, std::size_t limit) {
  if (start >= g.vertex_count()) {
    throw Error(Errc::UnknownVertex, "start index " + std::to_string(start) + " out of range");
  }
  if (g.degree(start) == 0) throw Error(Errc::IsolatedStart, "start vertex '" + g.name(start) + "' has no edges");
  std::size_t cap = std::min(limit, kMaxEdgeLimit);
  if (g.edge_count() > cap) {
    throw Error(Errc::LimitExceeded, std::to_string(g.edge_count()) + " edges exceed the solver limit of " + std::to_string(cap));
  }
}

Mask mask_of(const GameState& state) {
  return state.used().low_word();
}

}  // namespace

SolverOptions SolverOptions::from_env() {
  SolverOptions out;
  if (const char* env = std::getenv("FEEDBACK_EDGE_LIMIT"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    long value = std::strtol(env, &end, 10);
    if (*end != '\0' || value < 1) {
      throw Error(Errc::BadParameter, std::string("FEEDBACK_EDGE_LIMIT must be a positive integer, got '") + env + "'");
    }
    out.edge_limit = std::min<std::size_t>(static_cast<std::size_t>(value), kMaxEdgeLimit);
  }
  return out;
}

struct Solver::Impl {
  const Graph* graph;
  Board board;
  SolverOptions options;
  absl::flat_hash_map<Key, bool> memo;
  absl::flat_hash_map<Key, int> plies;
  SearchStats stats;

  Impl(const Graph& g, VertexId start, SolverOptions opts) : graph(&g), board(g, start), options(opts) {}

  bool wins(VertexId token, Mask used) {
    if (auto it = memo.find(Key{used, token}); it != memo.end()) return it->second;
    ++stats.states_explored;
    const auto& arcs = board.arcs[token];
    bool result = false;
    for (const Arc& arc : arcs) {
      if (!(used & arc.bit) && board.wins_now(arc, used)) {
        result = true;
        break;
      }
    }
    if (!result) {
      for (const Arc& arc : arcs) {
        if ((used & arc.bit) == 0 && !wins(arc.to, used | arc.bit)) {
          result = true;
          break;
        }
      }
    }
    if (options.memo_cap != 0 && memo.size() >= options.memo_cap) {
      throw Error(Errc::CapExceeded, "memo table reached its cap of " + std::to_string(options.memo_cap) + " entries");
    }
    memo.emplace(Key{used, token}, result);
    return result;
  }

  // Winner hurries, loser delays. Only called on non-terminal positions.
  int remaining(VertexId token, Mask used) {
    if (auto it = plies.find(Key{used, token}); it != plies.end()) return it->second;
    const auto& arcs = board.arcs[token];
    int best = -1;
    if (wins(token, used)) {
      for (const Arc& arc : arcs) {
        if (used & arc.bit) continue;
        if (board.wins_now(arc, used)) {
          best = 1;
          break;
        }
        if (!wins(arc.to, used | arc.bit)) {
          int length = 1 + remaining(arc.to, used | arc.bit);
          if (best < 0 || length < best) best = length;
        }
      }
    } else {
      for (const Arc& arc : arcs) {
        if (used & arc.bit) continue;
        best = std::max(best, 1 + remaining(arc.to, used | arc.bit));
      }
    }
    plies.emplace(Key{used, token}, best);
    return best;
  }

  void check_state(const GameState& state) const {
    if (&state.graph() != graph || state.start() != board.start) {
      throw Error(Errc::PreconditionFailed, "state belongs to a different game than this solver");
    }
    if (!state.ongoing()) throw Error(Errc::GameOver, "the game is already decided");
  }

  void finish_stats() { stats.memo_entries = memo.size(); }
};

Solver::Solver(const Graph& g, VertexId start, SolverOptions options) {
  check_solvable(g, start, options.edge_limit);
  impl_ = std::make_unique<Impl>(g, start, options);
}

Solver::~Solver() = default;
Solver::Solver(Solver&&) noexcept = default;
Solver& Solver::operator=(Solver&&) noexcept = default;

const SearchStats& Solver::stats() const { return impl_->stats; }

Verdict Solver::solve() {
  auto t0 = std::chrono::steady_clock::now();
  Impl& im = *impl_;
  const VertexId start = im.board.start;
  const auto& arcs = im.board.arcs[start];
  Verdict verdict;

  if (im.options.threads <= 1 || arcs.size() <= 1) {
    for (const Arc& arc : arcs) {
      if (im.board.wins_now(arc, 0) || !im.wins(arc.to, arc.bit)) {
        verdict.witness = arc.to;
        break;
      }
    }
  } else {
    // Each worker owns a private table; all root children are decided before
    // the witness is picked, so the outcome matches the sequential search.
    std::vector<char> child_wins(arcs.size(), 0);
    std::vector<SearchStats> child_stats(arcs.size());
    std::vector<std::exception_ptr> errors(arcs.size());
    std::size_t next = 0;
    std::mutex lock;
    auto worker = [&] {
      for (;;) {
        std::size_t i;
        {
          std::lock_guard guard(lock);
          if (next == arcs.size()) return;
          i = next++;
        }
        try {
          const Arc& arc = arcs[i];
          if (im.board.wins_now(arc, 0)) {
            child_wins[i] = 1;
          } else {
            Impl local(*im.graph, start, im.options);
            child_wins[i] = local.wins(arc.to, arc.bit) ? 0 : 1;
            local.finish_stats();
            child_stats[i] = local.stats;
          }
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    };
    {
      std::vector<std::jthread> pool;
      unsigned n = std::min<unsigned>(im.options.threads, static_cast<unsigned>(arcs.size()));
      for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    }
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      im.stats.states_explored += child_stats[i].states_explored;
      im.stats.memo_entries += child_stats[i].memo_entries;
      if (child_wins[i] && !verdict.witness) verdict.witness = arcs[i].to;
    }
  }

  verdict.winner = verdict.witness ? Player::Alice : Player::Bob;
  if (im.options.threads <= 1 || arcs.size() <= 1) im.finish_stats();
  im.stats.elapsed += std::chrono::steady_clock::now() - t0;
  verdict.stats = im.stats;
  return verdict;
}

bool Solver::mover_wins(const GameState& state) {
  impl_->check_state(state);
  Mask used = mask_of(state);
  const auto& arcs = impl_->board.arcs[state.token()];
  for (const Arc& arc : arcs) {
    if (!(used & arc.bit) && impl_->board.wins_now(arc, used)) return true;
  }
  bool result = impl_->wins(state.token(), used);
  impl_->finish_stats();
  return result;
}

VertexId Solver::best_move(const GameState& state) {
  impl_->check_state(state);
  Impl& im = *impl_;
  Mask used = mask_of(state);
  const auto& arcs = im.board.arcs[state.token()];
  for (const Arc& arc : arcs) {
    if (used & arc.bit) continue;
    if (im.board.wins_now(arc, used) || !im.wins(arc.to, used | arc.bit)) {
      im.finish_stats();
      return arc.to;
    }
  }
  // Lost: every child is a win for the opponent and none is terminal.
  std::optional<VertexId> choice;
  int longest = -1;
  for (const Arc& arc : arcs) {
    if (used & arc.bit) continue;
    int length = 1 + im.remaining(arc.to, used | arc.bit);
    if (length > longest) {
      longest = length;
      choice = arc.to;
    }
  }
  im.finish_stats();
  if (!choice) throw Error(Errc::GameOver, "no legal move from " + im.graph->name(state.token()));
  return *choice;
}

int Solver::remaining_plies(const GameState& state) {
  impl_->check_state(state);
  Mask used = mask_of(state);
  for (const Arc& arc : impl_->board.arcs[state.token()]) {
    if (!(used & arc.bit) && impl_->board.wins_now(arc, used)) return 1;
  }
  return impl_->remaining(state.token(), used);
}

Verdict solve(const Graph& g, VertexId start, const SolverOptions& options) {
  return Solver(g, start, options).solve();
}

namespace {

bool naive_wins(const Board& board, VertexId token, Mask used, std::uint64_t& visited) {
  ++visited;
  for (const Arc& arc : board.arcs[token]) {
    if (used & arc.bit) continue;
    if (board.wins_now(arc, used)) return true;
    if (!naive_wins(board, arc.to, used | arc.bit, visited)) return true;
  }
  return false;
}

}  // namespace

Verdict solve_naive(const Graph& g, VertexId start) {
  check_solvable(g, start, kNaiveEdgeLimit);
  auto t0 = std::chrono::steady_clock::now();
  Board board(g, start);
  Verdict verdict;
  std::uint64_t visited = 1;
  for (const Arc& arc : board.arcs[start]) {
    if (board.wins_now(arc, 0) || !naive_wins(board, arc.to, arc.bit, visited)) {
      verdict.witness = arc.to;
      break;
    }
  }
  verdict.winner = verdict.witness ? Player::Alice : Player::Bob;
  verdict.stats.states_explored = visited;
  verdict.stats.elapsed = std::chrono::steady_clock::now() - t0;
  return verdict;
}

VertexId best_move(const GameState& state, const SolverOptions& options) {
  if (!state.ongoing()) throw Error(Errc::GameOver, "the game is already decided");
  Solver solver(state.graph(), state.start(), options);
  return solver.best_move(state);
}

VertexId greedy_move(const GameState& state) {
  auto moves = legal_moves(state);
  for (VertexId to : moves) {
    if (to == state.start()) return to;
    // The edge about to be used is still counted here.
    if (state.free_degree(to) == 1) return to;
  }
  return moves.front();
}

}  // namespace feedback

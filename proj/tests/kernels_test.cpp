#include <algorithm>
#include <set>

#include "doctest.h"

#include "feedback/error.hpp"
#include "feedback/families.hpp"
#include "feedback/kernels.hpp"
#include "feedback/solver.hpp"
#include "support/corpus.hpp"

using namespace feedback;
using feedback::testing::corpus;
using feedback::testing::corpus_graph;

namespace {

Errc error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::ParseError;
}

std::vector<VertexId> ids(const Graph& g, std::initializer_list<const char*> names) {
  std::vector<VertexId> out;
  for (const char* n : names) out.push_back(g.index_of(n));
  std::sort(out.begin(), out.end());
  return out;
}

std::set<std::string> names_of(const Graph& g, const std::vector<VertexId>& vs) {
  std::set<std::string> out;
  for (VertexId v : vs) out.insert(g.name(v));
  return out;
}

std::set<VertexId> neighbors_in(const Graph& g, VertexId v, const std::vector<VertexId>& s) {
  std::set<VertexId> out;
  for (VertexId u : g.neighbors(v)) {
    if (std::find(s.begin(), s.end(), u) != s.end()) out.insert(u);
  }
  return out;
}

// Smallest brute-force kernel, ties broken on the sorted member list.
std::optional<std::vector<VertexId>> canonical_brute(const Graph& g, VertexId start) {
  std::optional<std::vector<VertexId>> best;
  for (std::uint32_t mask : feedback::testing::brute_force_kernels(g, start)) {
    std::vector<VertexId> members;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      if (mask & (1u << v)) members.push_back(v);
    }
    if (!best || members.size() < best->size() || (members.size() == best->size() && members < *best)) best = members;
  }
  return best;
}

// Wraps a kernel strategy and records whether the game ever leaves the
// pattern: Alice always steps off S, Bob always steps back onto it.
struct PatternWatch {
  std::vector<VertexId> s;
  Strategy inner;
  std::size_t alice_violations = 0;
  std::size_t bob_violations = 0;
  std::size_t calls = 0;

  bool in_s(VertexId v) const { return std::binary_search(s.begin(), s.end(), v); }

  Strategy wrap() {
    return [this](const GameState& state) {
      ++calls;
      if (in_s(state.token())) ++alice_violations;  // Alice just moved onto S
      VertexId to = inner(state);
      if (!in_s(to)) ++bob_violations;
      return to;
    };
  }
};

}  // namespace

TEST_CASE("is_even_kernel examples") {
  Graph e1 = octahedral_path(1);
  VertexId u0 = e1.index_of("u0");
  CHECK(is_even_kernel(e1, u0, ids(e1, {"u0", "v1"})));

  KernelCheck not_ind = is_even_kernel(e1, u0, ids(e1, {"u0", "v0"}));
  CHECK(not_ind.clause == KernelClause::NotIndependent);
  CHECK(not_ind.describe(e1).find("u0-v0") != std::string::npos);

  KernelCheck missing = is_even_kernel(e1, u0, ids(e1, {"v1"}));
  CHECK(missing.clause == KernelClause::StartNotInSet);

  CHECK(is_even_kernel(e1, u0, std::vector<VertexId>{}).clause == KernelClause::EmptySet);

  KernelCheck odd = is_even_kernel(e1, u0, ids(e1, {"u0"}));
  CHECK(odd.clause == KernelClause::OddNeighborCount);
  REQUIRE(odd.vertex);
  CHECK(odd.count == 1);
  CHECK(e1.name(*odd.vertex) == "v0");  // first neighbor of u0 by index

  Graph c4 = cycle_graph(4);
  CHECK(is_even_kernel(c4, 0, std::vector<VertexId>{0, 2}));

  Graph c3 = cycle_graph(3);
  for (VertexId v = 0; v < 3; ++v) CHECK_FALSE(is_even_kernel(c3, v, std::vector<VertexId>{v}));

  CHECK(error_of([&] { is_even_kernel(e1, 99, std::vector<VertexId>{0}); }) == Errc::UnknownVertex);
}

TEST_CASE("lemma32 kernel on E4") {
  KernelSet s = lemma32_kernel(1);
  Graph e4 = octahedral_path(4);
  CHECK(names_of(e4, s.members) == std::set<std::string>{"u0", "v1", "u3", "v4"});
  CHECK(is_even_kernel(e4, s));
  KernelSet p1 = lemma32_kernel(1, Lemma32Start::P1);
  CHECK(e4.name(p1.start) == "v1");
  CHECK(is_even_kernel(e4, p1));
}

TEST_CASE("is_even_kernel agrees with the brute-force enumeration") {
  for (const auto& [name, g] : corpus()) {
    if (g.vertex_count() > 12) continue;
    for (VertexId s = 0; s < g.vertex_count(); ++s) {
      auto kernels = feedback::testing::brute_force_kernels(g, s);
      std::set<std::uint32_t> found(kernels.begin(), kernels.end());
      for (std::uint32_t mask = 0; mask < (1u << g.vertex_count()); ++mask) {
        std::vector<VertexId> members;
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
          if (mask & (1u << v)) members.push_back(v);
        }
        CHECK_MESSAGE(is_even_kernel(g, s, members).holds() == (found.count(mask) == 1), name);
      }
    }
  }
}

TEST_CASE("kernel_graph") {
  Graph e1 = octahedral_path(1);
  auto left = ids(e1, {"u0", "v1"});
  auto right = ids(e1, {"v0", "w0", "u1", "w1"});
  KernelGraph h = kernel_graph(e1, left, right);
  for (VertexId r : right) CHECK(h.degree_in(e1, r) == 2);
  for (VertexId l : left) CHECK(h.degree_in(e1, l) == 4);
  CHECK(h.edges.size() == 8);

  // Star: the centre alone against its leaves.
  Graph star = feedback::testing::complete_bipartite(1, 4);
  KernelGraph sh = kernel_graph(star, std::vector<VertexId>{0}, std::vector<VertexId>{1, 2, 3, 4});
  CHECK(sh.edges.size() == 4);
  CHECK(sh.degree_in(star, 0) == 4);

  CHECK(error_of([&] { kernel_graph(e1, left, ids(e1, {"u0", "v0", "w0", "u1", "w1"})); }) == Errc::BadBipartition);
  CHECK(error_of([&] { kernel_graph(e1, left, ids(e1, {"v0", "w0"})); }) == Errc::BadBipartition);

  // For an independent S, |E(H)| is the degree sum over S and over R.
  for (const char* name : {"E1", "E2", "DW6", "C6", "K2,4"}) {
    const Graph& g = corpus_graph(name);
    auto k = find_even_kernel(g, 0);
    if (!k) continue;
    std::vector<VertexId> rest;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      if (!k->contains(v)) rest.push_back(v);
    }
    KernelGraph kg = kernel_graph(g, k->members, rest);
    std::size_t left_sum = 0, right_sum = 0;
    for (VertexId v : k->members) left_sum += g.degree(v);
    for (VertexId v : rest) right_sum += kg.degree_in(g, v);
    CHECK_MESSAGE(kg.edges.size() == left_sum, name);
    CHECK(kg.edges.size() == right_sum);
    for (VertexId v : rest) CHECK(kg.degree_in(g, v) % 2 == 0);
  }
}

TEST_CASE("find_even_kernel examples") {
  Graph e1 = octahedral_path(1);
  auto k = find_even_kernel(e1, e1.index_of("u0"));
  REQUIRE(k);
  CHECK(names_of(e1, k->members) == std::set<std::string>{"u0", "v1"});

  Graph e4 = octahedral_path(4);
  auto k4 = find_even_kernel(e4, e4.index_of("u0"));
  REQUIRE(k4);
  CHECK(is_even_kernel(e4, *k4));

  Graph c5 = cycle_graph(5);
  for (VertexId s = 0; s < 5; ++s) CHECK_FALSE(find_even_kernel(c5, s));

  KernelSearchOptions tight;
  tight.vertex_limit = 10;
  CHECK(error_of([&] { find_even_kernel(octahedral_path(3), 0, tight); }) == Errc::LimitExceeded);
}

TEST_CASE("both kernel search paths match the brute-force oracle") {
  for (const auto& [name, g] : corpus()) {
    if (g.vertex_count() > 12) continue;
    for (VertexId s = 0; s < g.vertex_count(); ++s) {
      CAPTURE(name);
      CAPTURE(s);
      auto expected = canonical_brute(g, s);
      auto a = find_even_kernel_nullspace(g, s);
      auto b = find_even_kernel_backtracking(g, s);
      auto c = find_even_kernel(g, s);
      REQUIRE(a.has_value() == expected.has_value());
      REQUIRE(b.has_value() == expected.has_value());
      REQUIRE(c.has_value() == expected.has_value());
      if (!expected) continue;
      CHECK(a->members == *expected);
      CHECK(b->members == *expected);
      CHECK(c->members == *expected);
    }
  }
}

TEST_CASE("kernel search on larger graphs") {
  for (int n = 4; n <= 9; ++n) {
    Graph g = octahedral_path(n);
    for (VertexId s : {octa_vertex(Row::V, 0), octa_vertex(Row::V, 1), octa_vertex(Row::U, n)}) {
      auto a = find_even_kernel_nullspace(g, s);
      auto b = find_even_kernel_backtracking(g, s);
      REQUIRE(a.has_value() == b.has_value());
      if (a) {
        CHECK(a->members == b->members);
        CHECK(is_even_kernel(g, *a));
      }
    }
  }
  CHECK(adjacency_nullity(cycle_graph(4)) == 2);
  CHECK(adjacency_nullity(cycle_graph(5)) == 1);  // all-ones, not independent
  CHECK(adjacency_nullity(octahedral_path(1)) == 4);  // three distinct rows, summing to zero
}

TEST_CASE("color_class_kernel") {
  Graph e1 = octahedral_path(1);
  ColorClassKernel c = color_class_kernel(e1, e1.index_of("u0"));
  REQUIRE(c.kernel);
  CHECK(names_of(e1, c.kernel->members) == std::set<std::string>{"u0", "v1"});

  ColorClassKernel e2 = color_class_kernel(octahedral_path(2), 0);
  CHECK_FALSE(e2.kernel);
  CHECK(e2.not_applicable.find("degree 2 mod 4") != std::string::npos);

  CHECK_FALSE(color_class_kernel(cycle_graph(4), 0).kernel);
  ColorClassKernel k44 = color_class_kernel(feedback::testing::complete_bipartite(4, 4), 0);
  CHECK_FALSE(k44.kernel);
  CHECK(k44.not_applicable.find("2 classes") != std::string::npos);

  CHECK_FALSE(color_class_kernel(feedback::testing::two_triangles(), 0).kernel);
  CHECK_FALSE(color_class_kernel(feedback::testing::path_graph(3), 0).kernel);

  for (const char* name : {"DW4", "DW8"}) {
    const Graph& g = corpus_graph(name);
    for (VertexId s = 0; s < g.vertex_count(); ++s) {
      ColorClassKernel k = color_class_kernel(g, s);
      REQUIRE_MESSAGE(k.kernel, name);
      CHECK(k.kernel->contains(s));
      CHECK(is_even_kernel(g, *k.kernel));
    }
  }
}

TEST_CASE("lemma32 neighborhoods") {
  for (int m = 0; m <= 2; ++m) {
    Graph g = octahedral_path(3 * m + 1);
    KernelSet s = lemma32_kernel(m);
    CHECK(is_even_kernel(g, s));
    auto u = [](int j) { return octa_vertex(Row::U, j); };
    auto v = [](int j) { return octa_vertex(Row::V, j); };
    auto w = [](int j) { return octa_vertex(Row::W, j); };
    for (int i = 0; i <= m; ++i) {
      std::set<VertexId> pair{u(3 * i), v(3 * i + 1)};
      CHECK(neighbors_in(g, v(3 * i), s.members) == pair);
      CHECK(neighbors_in(g, w(3 * i), s.members) == pair);
      CHECK(neighbors_in(g, u(3 * i + 1), s.members) == pair);
      CHECK(neighbors_in(g, w(3 * i + 1), s.members) == pair);
    }
    for (int i = 0; i < m; ++i) {
      std::set<VertexId> pair{v(3 * i + 1), u(3 * i + 3)};
      CHECK(neighbors_in(g, u(3 * i + 2), s.members) == pair);
      CHECK(neighbors_in(g, v(3 * i + 2), s.members) == pair);
      CHECK(neighbors_in(g, w(3 * i + 2), s.members).empty());
    }
  }
  CHECK(error_of([] { lemma32_kernel(-1); }) == Errc::BadParameter);
}

TEST_CASE("lemma33 sets") {
  Lemma33Sets z = lemma33_sets(0, 0);
  Graph e2 = octahedral_path(2);
  CHECK(z.n == 2);
  CHECK(names_of(e2, z.s1) == std::set<std::string>{"u0", "v1"});
  CHECK(names_of(e2, z.s2) == std::set<std::string>{"v1", "w2"});
  CHECK(names_of(e2, z.combined) == std::set<std::string>{"u0", "v1", "w2"});
  CHECK(e2.name(z.start) == "v1");
  CHECK(z.combined_check.clause == KernelClause::OddNeighborCount);
  REQUIRE(z.combined_check.vertex);
  CHECK(e2.name(*z.combined_check.vertex) == "u1");
  CHECK(z.combined_check.count == 3);

  for (int m = 0; m <= 2; ++m) {
    for (int k = 0; k <= m; ++k) {
      Lemma33Sets sets = lemma33_sets(m, k);
      Graph g = octahedral_path(sets.n);
      std::vector<VertexId> odd;
      for (VertexId x = 0; x < g.vertex_count(); ++x) {
        if (std::binary_search(sets.combined.begin(), sets.combined.end(), x)) continue;
        if (neighbors_in(g, x, sets.combined).size() % 2 != 0) odd.push_back(x);
      }
      CHECK(sets.odd_vertices == odd);
      CHECK(sets.combined_check.holds() == is_even_kernel(g, sets.start, sets.combined).holds());
      // Bob still wins from the lemma's start vertex.
      if (g.edge_count() <= kDefaultEdgeLimit) CHECK(solve(g, sets.start).winner == Player::Bob);
    }
  }
  CHECK(error_of([] { lemma33_sets(1, 2); }) == Errc::BadParameter);
}

TEST_CASE("kernel_strategy is a winning strategy for Bob") {
  SUBCASE("octahedron") {
    Graph e1 = octahedral_path(1);
    VertexId u0 = e1.index_of("u0");
    KernelSet s = *find_even_kernel(e1, u0);
    Strategy strat = kernel_strategy(e1, u0, s);
    GameState after = apply_move(new_game(e1, u0), e1.index_of("v0"));
    CHECK(e1.name(strat(after)) == "v1");
    StrategyVerdict v = verify_strategy(e1, u0, strat, Player::Bob);
    CHECK(v.verified);
    CHECK(v.counter_line.empty());
  }
  SUBCASE("instances up to 21 edges") {
    for (const auto& [name, g] : corpus()) {
      if (g.edge_count() > 21) continue;
      for (VertexId start = 0; start < g.vertex_count(); ++start) {
        if (g.degree(start) == 0) continue;
        auto k = find_even_kernel(g, start);
        if (!k) continue;
        PatternWatch watch{k->members, kernel_strategy(g, start, *k)};
        StrategyVerdict v = verify_strategy(g, start, watch.wrap(), Player::Bob);
        CHECK_MESSAGE(v.verified, name, " from ", g.name(start));
        CHECK(watch.calls > 0);
        CHECK(watch.alice_violations == 0);
        CHECK(watch.bob_violations == 0);
        CHECK(solve(g, start).winner == Player::Bob);
      }
    }
  }
  SUBCASE("E4 with the lemma kernel") {
    Graph e4 = octahedral_path(4);
    for (Lemma32Start which : {Lemma32Start::P0, Lemma32Start::P1}) {
      KernelSet s = lemma32_kernel(1, which);
      StrategyVerdict v = verify_strategy(e4, s.start, kernel_strategy(e4, s.start, s), Player::Bob);
      CHECK(v.verified);
    }
  }
  SUBCASE("double wheel") {
    Graph dw6 = double_wheel(6);
    // Only the hub pair {x, y} works; a rim class leaves x with 3 members.
    for (const char* hub : {"x", "y"}) {
      VertexId start = dw6.index_of(hub);
      auto k = find_even_kernel(dw6, start);
      REQUIRE(k);
      CHECK(names_of(dw6, k->members) == std::set<std::string>{"x", "y"});
      CHECK(verify_strategy(dw6, start, kernel_strategy(dw6, start, *k), Player::Bob).verified);
    }
    CHECK_FALSE(find_even_kernel(dw6, dw6.index_of("v0")));
  }
  SUBCASE("preconditions") {
    Graph e1 = octahedral_path(1);
    KernelSet bad{{0}, 0};
    CHECK(error_of([&] { kernel_strategy(e1, 0, bad); }) == Errc::PreconditionFailed);
    KernelSet good = *find_even_kernel(e1, 0);
    CHECK(error_of([&] { kernel_strategy(e1, 1, good); }) == Errc::PreconditionFailed);
    Strategy strat = kernel_strategy(e1, 0, good);
    CHECK(error_of([&] { strat(new_game(e1, 0)); }) == Errc::StrategyBreakdown);
  }
}

TEST_CASE("verify_strategy finds a counter line") {
  Graph c4 = cycle_graph(4);
  // First-move play as Alice on C4 walks the cycle and hands Bob the return.
  StrategyVerdict lost = verify_strategy(c4, 0, first_move_strategy(), Player::Alice);
  CHECK_FALSE(lost.verified);
  REQUIRE_FALSE(lost.counter_line.empty());
  GameState s = new_game(c4, 0);
  for (VertexId to : lost.counter_line) s = apply_move(s, to);
  CHECK(s.winner() == Player::Bob);

  Graph c3 = cycle_graph(3);
  StrategyVerdict bob = verify_strategy(c3, 0, first_move_strategy(), Player::Bob);
  CHECK_FALSE(bob.verified);
  CHECK(bob.counter_line.size() == 3);

  CHECK(error_of([] { verify_strategy(octahedral_path(5), 0, first_move_strategy(), Player::Bob); }) ==
        Errc::LimitExceeded);
}

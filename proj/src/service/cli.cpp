#include "feedback/cli.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "httplib.h"

#include "feedback/error.hpp"
#include "feedback/family_request.hpp"
#include "feedback/graph_json.hpp"
#include "feedback/kernels.hpp"
#include "feedback/service.hpp"
#include "feedback/solver.hpp"

namespace feedback {

namespace {

using nlohmann::json;

struct FamilyFlags {
  std::string family = "octa";
  int n = 1;
  int rim = 0;
  std::optional<int> p;
  std::string start;
  std::string graph_file;

  void attach(CLI::App* cmd) {
    cmd->add_option("--family", family, "octa | dw | cycle (ignored with --graph)")->capture_default_str();
    cmd->add_option("--n", n, "levels of the octahedral path, or cycle length")->capture_default_str();
    cmd->add_option("--rim", rim, "double wheel rim length (defaults to --n)");
    cmd->add_option("--p", p, "start at v_p of the octahedral path");
    cmd->add_option("--start", start, "start vertex name");
    cmd->add_option("--graph", graph_file, "custom graph JSON file");
  }

  FamilyRequest request() const {
    FamilyRequest req;
    if (!graph_file.empty()) {
      std::ifstream file(graph_file);
      if (!file) throw Error(Errc::ParseError, "cannot read " + graph_file);
      req.type = FamilyType::Custom;
      req.graph = json::parse(file, nullptr, false);
      if (req.graph.is_discarded()) throw Error(Errc::ParseError, graph_file + " is not valid JSON");
    } else {
      auto t = parse_family_type(family);
      if (!t || *t == FamilyType::Custom) throw Error(Errc::BadParameter, "unknown family '" + family + "'");
      req.type = *t;
    }
    req.n = n;
    req.rim = rim;
    req.p = p;
    if (!start.empty()) req.start = start;
    return req;
  }
};

std::string capitalized(Player p) { return p == Player::Alice ? "Alice" : "Bob"; }

json names_json(const Graph& g, const std::vector<VertexId>& vs) {
  json out = json::array();
  for (VertexId v : vs) out.push_back(g.name(v));
  return out;
}

int run_gen(const FamilyFlags& flags, bool layout, const std::string& out_file, std::ostream& out) {
  BuiltFamily built = build_family(flags.request());
  json doc = graph_to_json(built.graph, layout && built.layout ? &*built.layout : nullptr);
  if (out_file.empty()) {
    out << doc.dump(2) << '\n';
  } else {
    std::ofstream file(out_file);
    if (!file) throw Error(Errc::ParseError, "cannot write " + out_file);
    file << doc.dump(2) << '\n';
  }
  return kExitOk;
}

int run_solve(const FamilyFlags& flags, unsigned threads, bool as_json, std::ostream& out) {
  BuiltFamily built = build_family(flags.request());
  SolverOptions options = SolverOptions::from_env();
  options.threads = threads;
  Verdict v = solve(built.graph, built.start, options);
  if (as_json) {
    out << verdict_to_json(built.graph, built.start, v).dump(2) << '\n';
    return kExitOk;
  }
  out << "start: " << built.graph.name(built.start) << " (" << built.graph.vertex_count() << " vertices, "
      << built.graph.edge_count() << " edges)\n";
  out << "winner: " << capitalized(v.winner) << '\n';
  out << "witness: " << (v.witness ? built.graph.name(*v.witness) : std::string("none")) << '\n';
  out << "states explored: " << v.stats.states_explored << '\n';
  out << "memo entries: " << v.stats.memo_entries << '\n';
  out << "elapsed: " << std::fixed << std::setprecision(3) << v.stats.elapsed.count() << "s\n";
  return kExitOk;
}

int run_verify_table(const std::vector<int>& ns, bool as_json, std::ostream& out) {
  TableReport report = verify_octapath_table(ns, SolverOptions::from_env());
  out << (as_json ? report.to_json() + "\n" : report.to_text());
  return report.all_agree() ? kExitOk : kExitMismatch;
}

int run_kernel_check(const FamilyFlags& flags, const std::vector<std::string>& members, std::ostream& out) {
  BuiltFamily built = build_family(flags.request());
  KernelSet s;
  s.start = built.start;
  for (const auto& name : members) s.members.push_back(built.graph.index_of(name));
  std::sort(s.members.begin(), s.members.end());
  KernelCheck check = is_even_kernel(built.graph, s);
  json doc = {{"start", built.graph.name(s.start)}, {"kernel", s.names(built.graph)}, {"verified", check.holds()}};
  if (!check) doc["reason"] = check.describe(built.graph);
  out << doc.dump() << '\n';
  return check ? kExitOk : kExitMismatch;
}

int run_kernel_find(const FamilyFlags& flags, bool with_strategy, std::ostream& out) {
  BuiltFamily built = build_family(flags.request());
  auto found = find_even_kernel(built.graph, built.start);
  json doc = {{"start", built.graph.name(built.start)}};
  if (!found) {
    doc["kernel"] = nullptr;
    doc["verified"] = false;
  } else {
    doc["kernel"] = found->names(built.graph);
    doc["verified"] = is_even_kernel(built.graph, *found).holds();
    if (with_strategy) {
      StrategyVerdict sv = verify_strategy(built.graph, built.start, kernel_strategy(built.graph, built.start, *found),
                                           Player::Bob, SolverOptions::from_env().edge_limit);
      doc["strategy_verified"] = sv.verified;
    }
  }
  out << doc.dump() << '\n';
  return kExitOk;
}

int run_lemma32(int m, int residue, std::ostream& out) {
  if (residue != 0 && residue != 1) throw Error(Errc::BadParameter, "--residue must be 0 or 1");
  KernelSet s = lemma32_kernel(m, residue == 0 ? Lemma32Start::P0 : Lemma32Start::P1);
  Graph g = octahedral_path(3 * m + 1);
  KernelCheck check = is_even_kernel(g, s);
  json doc = {{"n", 3 * m + 1}, {"start", g.name(s.start)}, {"kernel", s.names(g)}, {"verified", check.holds()}};
  out << doc.dump() << '\n';
  return check ? kExitOk : kExitMismatch;
}

int run_lemma33(int m, int k, std::ostream& out) {
  Lemma33Sets sets = lemma33_sets(m, k);
  Graph g = octahedral_path(sets.n);
  json doc = {{"n", sets.n},
              {"start", g.name(sets.start)},
              {"s1", names_json(g, sets.s1)},
              {"s2", names_json(g, sets.s2)},
              {"kernel", names_json(g, sets.combined)},
              {"verified", sets.combined_check.holds()},
              {"reason", sets.combined_check.describe(g)},
              {"odd_vertices", names_json(g, sets.odd_vertices)}};
  out << doc.dump() << '\n';
  return kExitOk;
}

int run_play(const FamilyFlags& flags, const std::string& engine_side, std::istream& in, std::ostream& out) {
  BuiltFamily built = build_family(flags.request());
  const Graph& g = built.graph;
  std::optional<Player> engine;
  if (engine_side != "none") {
    engine = parse_player(engine_side);
    if (!engine) throw Error(Errc::BadParameter, "--engine must be alice, bob or none");
  }
  SolverOptions options = SolverOptions::from_env();
  const bool optimal = g.edge_count() <= std::min(options.edge_limit, kMaxEdgeLimit);
  std::optional<Solver> solver;
  GameState state = new_game(g, built.start);

  out << "feedback game on " << g.vertex_count() << " vertices, " << g.edge_count() << " edges, start "
      << g.name(state.start()) << '\n';
  if (engine) {
    out << "engine plays " << capitalized(*engine) << (optimal ? "" : " (non-optimal: graph exceeds the solver limit)")
        << '\n';
  }
  while (state.ongoing()) {
    auto moves = legal_moves(state);
    out << capitalized(state.mover()) << " to move from " << g.name(state.token()) << "; legal:";
    for (VertexId v : moves) out << ' ' << g.name(v);
    out << '\n';
    VertexId to;
    if (engine == state.mover()) {
      if (optimal) {
        if (!solver) solver.emplace(g, state.start(), options);
        to = solver->best_move(state);
      } else {
        to = greedy_move(state);
      }
      out << "engine moves to " << g.name(to) << '\n';
    } else {
      out << "> " << std::flush;
      std::string line;
      if (!std::getline(in, line) || line == "quit") {
        out << "game abandoned\n";
        return kExitOk;
      }
      auto picked = g.find(line);
      if (!picked) {
        out << "unknown vertex '" << line << "'\n";
        continue;
      }
      to = *picked;
    }
    try {
      state = apply_move(state, to);
    } catch (const Error& e) {
      if (e.code() != Errc::IllegalMove) throw;
      out << e.what() << '\n';
    }
  }
  const Outcome& o = *state.outcome();
  out << capitalized(o.winner) << " wins ("
      << (o.reason == WinReason::ReturnedToStart ? "returned to start" : "isolated vertex") << ")\n";
  return kExitOk;
}

int run_serve(const std::string& host, int port, const std::string& static_dir, std::ostream& out) {
  ServiceOptions options;
  options.solver = SolverOptions::from_env();
  Service service(options);
  httplib::Server server;
  service.install_routes(server);
  if (!static_dir.empty() && !server.set_mount_point("/", static_dir)) {
    throw Error(Errc::BadParameter, "static directory '" + static_dir + "' does not exist");
  }
  out << "listening on http://" << host << ':' << port << std::endl;
  if (!server.listen(host, port)) throw Error(Errc::BadParameter, "cannot listen on " + host + ":" + std::to_string(port));
  return kExitOk;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Feedback game workbench: rules engine, solver and even-kernel tools"};
  app.require_subcommand(1);

  FamilyFlags gen_flags;
  bool gen_layout = false;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "write a family graph as JSON");
  gen_flags.attach(gen);
  gen->add_flag("--layout", gen_layout, "include drawing hints");
  gen->add_option("--out", gen_out, "output file (default stdout)");

  FamilyFlags solve_flags;
  unsigned threads = 1;
  bool solve_json = false;
  auto* solve_cmd = app.add_subcommand("solve", "decide the winner under perfect play");
  solve_flags.attach(solve_cmd);
  solve_cmd->add_option("--threads", threads, "workers for the root fan-out")->check(CLI::PositiveNumber);
  solve_cmd->add_flag("--json", solve_json, "print the verdict as JSON");

  std::vector<int> table_ns;
  bool table_json = false;
  auto* table = app.add_subcommand("verify-table", "check the octahedral path winner table");
  table->add_option("--n", table_ns, "levels to check (repeatable)")->required();
  table->add_flag("--json", table_json, "print the report as JSON");

  auto* kernel = app.add_subcommand("kernel", "even-kernel tools");
  kernel->require_subcommand(1);
  FamilyFlags check_flags;
  std::vector<std::string> check_members;
  auto* check = kernel->add_subcommand("check", "test a vertex set against the even-kernel predicate");
  check_flags.attach(check);
  check->add_option("--set", check_members, "members, comma separated")->delimiter(',')->required();
  FamilyFlags find_flags;
  bool find_strategy = false;
  auto* find = kernel->add_subcommand("find", "search for an even kernel containing the start");
  find_flags.attach(find);
  find->add_flag("--strategy", find_strategy, "also verify the kernel-following strategy for Bob");
  int lemma_m = 0;
  int lemma_residue = 0;
  int lemma_k = 0;
  auto* l32 = kernel->add_subcommand("lemma32", "the {u_3i, v_3i+1} kernel of E_{3m+1}");
  l32->add_option("--m", lemma_m)->required();
  l32->add_option("--residue", lemma_residue, "start residue 0 (u0) or 1 (v1)")->capture_default_str();
  auto* l33 = kernel->add_subcommand("lemma33", "the S1/S2 sets of E_{3m+2}");
  l33->add_option("--m", lemma_m)->required();
  l33->add_option("--k", lemma_k)->required();

  FamilyFlags play_flags;
  std::string engine_side = "bob";
  auto* play = app.add_subcommand("play", "play against the engine in the terminal");
  play_flags.attach(play);
  play->add_option("--engine", engine_side, "side the engine plays: alice | bob | none")->capture_default_str();

  std::string host = "0.0.0.0";
  int port = 8080;
  std::string static_dir;
  auto* serve = app.add_subcommand("serve", "run the HTTP API");
  serve->add_option("--host", host)->capture_default_str();
  serve->add_option("--port", port)->capture_default_str();
  serve->add_option("--static", static_dir, "directory with the built web UI");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen) return run_gen(gen_flags, gen_layout, gen_out, out);
    if (*solve_cmd) return run_solve(solve_flags, threads, solve_json, out);
    if (*table) return run_verify_table(table_ns, table_json, out);
    if (*check) return run_kernel_check(check_flags, check_members, out);
    if (*find) return run_kernel_find(find_flags, find_strategy, out);
    if (*l32) return run_lemma32(lemma_m, lemma_residue, out);
    if (*l33) return run_lemma33(lemma_m, lemma_k, out);
    if (*play) return run_play(play_flags, engine_side, in, out);
    if (*serve) return run_serve(host, port, static_dir, out);
  } catch (const Error& e) {
    err << e.what() << '\n';
    return e.code() == Errc::LimitExceeded || e.code() == Errc::CapExceeded ? kExitLimitExceeded : kExitDomainError;
  }
  return kExitUsage;
}

}  // namespace feedback

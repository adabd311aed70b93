#include <iomanip>
#include <sstream>

#include "json.hpp"

#include "feedback/error.hpp"
#include "feedback/families.hpp"
#include "feedback/solver.hpp"

namespace feedback {

namespace {

constexpr Player A = Player::Alice;
constexpr Player B = Player::Bob;

// Rows p mod 3, columns n mod 3.
constexpr Player kWinnerTable[3][3] = {
    {A, B, A},
    {A, B, B},
    {A, A, A},
};

}  // namespace

Player expected_octapath_winner(int n, int p) {
  if (n < 1 || p < 0 || p > n) {
    throw Error(Errc::BadParameter, "E(" + std::to_string(n) + "," + std::to_string(p) + ") needs n >= 1 and 0 <= p <= n");
  }
  return kWinnerTable[p % 3][n % 3];
}

bool TableReport::all_agree() const {
  for (const auto& row : rows) {
    if (!row.agrees) return false;
  }
  return true;
}

std::string TableReport::to_text() const {
  std::ostringstream out;
  out << "  n   p  expected  computed  agree      states    seconds\n";
  for (const auto& r : rows) {
    out << std::setw(3) << r.n << ' ' << std::setw(3) << r.p << "  " << std::left << std::setw(8)
        << player_name(r.expected) << "  " << std::setw(8) << player_name(r.computed) << "  " << std::setw(5)
        << (r.agrees ? "yes" : "NO") << std::right << ' ' << std::setw(11) << r.stats.states_explored << ' '
        << std::setw(10) << std::fixed << std::setprecision(3) << r.stats.elapsed.count() << '\n';
  }
  // Winner by residue class, as (n mod 3, p mod 3).
  out << "\n          n=0    n=1    n=2   (mod 3)\n";
  for (int pr = 0; pr < 3; ++pr) {
    out << "p=" << pr << "    ";
    for (int nr = 0; nr < 3; ++nr) {
      std::string cell = std::string(player_name(kWinnerTable[pr][nr]));
      bool seen = false;
      bool ok = true;
      for (const auto& r : rows) {
        if (r.n % 3 == nr && r.p % 3 == pr) {
          seen = true;
          ok = ok && r.agrees;
        }
      }
      if (!seen) cell += "?";
      else if (!ok) cell += "!";
      out << std::left << std::setw(7) << cell << std::right;
    }
    out << '\n';
  }
  out << (all_agree() ? "all rows agree\n" : "MISMATCH\n");
  return out.str();
}

std::string TableReport::to_json() const {
  nlohmann::json rows_json = nlohmann::json::array();
  for (const auto& r : rows) {
    rows_json.push_back({{"n", r.n},
                         {"p", r.p},
                         {"expected", player_name(r.expected)},
                         {"computed", player_name(r.computed)},
                         {"agrees", r.agrees},
                         {"states_explored", r.stats.states_explored},
                         {"memo_entries", r.stats.memo_entries},
                         {"elapsed_seconds", r.stats.elapsed.count()}});
  }
  return nlohmann::json{{"rows", rows_json}, {"all_agree", all_agree()}}.dump(2);
}

TableReport verify_octapath_table(const std::vector<int>& n_values, const SolverOptions& options) {
  TableReport report;
  for (int n : n_values) {
    Graph g = octahedral_path(n);
    if (g.edge_count() > std::min(options.edge_limit, kMaxEdgeLimit)) {
      throw Error(Errc::LimitExceeded, "E_" + std::to_string(n) + " has " + std::to_string(g.edge_count()) +
                                           " edges, above the solver limit of " + std::to_string(options.edge_limit));
    }
    for (int p = 0; p <= n; ++p) {
      Verdict v = solve(g, octa_vertex(Row::V, p), options);
      TableRow row;
      row.n = n;
      row.p = p;
      row.expected = expected_octapath_winner(n, p);
      row.computed = v.winner;
      row.agrees = row.expected == row.computed;
      row.stats = v.stats;
      report.rows.push_back(row);
    }
  }
  return report;
}

}  // namespace feedback

// permwordle -- command-line entry point.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 budget breach.

#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "permwordle/assist.hpp"
#include "permwordle/counting.hpp"
#include "permwordle/http_server.hpp"
#include "permwordle/json_io.hpp"
#include "permwordle/kernels.hpp"
#include "permwordle/search.hpp"
#include "permwordle/strategy.hpp"
#include "permwordle/verify.hpp"

using namespace permwordle;

namespace {

enum Exit { kOk = 0, kFailed = 1, kUsage = 2, kBudget = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void print_json(const Json& j) { std::cout << j.dump(2) << '\n'; }

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Accepts spaces as well as commas between positions.
std::string normalize_list(std::string s) {
  for (char& c : s) {
    if (c == ' ' || c == '\t') c = ',';
  }
  std::string out;
  for (char c : s) {
    if (c == ',' && (out.empty() || out.back() == ',')) continue;
    out += c;
  }
  if (!out.empty() && out.back() == ',') out.pop_back();
  return out;
}

std::string show(const SuitedPermutation& t) {
  return t.suit_count() == 1 ? t.values().to_string() : t.to_string();
}

// ---- count ----

struct CountArgs {
  std::string kind;
  int s = 1;
  int n = 0;
  bool all_rows = false;
  std::string format = "table";
};

int run_count(const CountArgs& a) {
  const TableKind kind = parse_table_kind(a.kind);
  const auto table = count_table(kind, a.s, a.n);
  int first = a.all_rows ? 0 : a.n;
  if (kind == TableKind::B && first < 1) first = std::min(1, a.n);
  if (kind == TableKind::B && a.n < 1) throw UsageError("B rows start at n = 1");
  if (a.format == "json") {
    print_json(table_json(*table, first, a.n));
  } else if (a.format == "csv") {
    std::cout << table_csv(*table, first, a.n);
  } else {
    std::cout << table_kind_name(kind);
    if (kind != TableKind::A && kind != TableKind::B) std::cout << " s=" << table->suit_count();
    std::cout << '\n';
    for (int n = first; n <= a.n; ++n) {
      const TableRow& row = table->row(n);
      std::cout << "n=" << n << " k=" << row.first() << ".." << row.last() << ":";
      for (const auto& v : row.values) std::cout << ' ' << v.str();
      std::cout << '\n';
    }
  }
  return kOk;
}

// ---- simulate ----

struct SimulateArgs {
  int n = 0;
  int s = 1;
  std::string secret;
  std::string strategy = "cycle";
  bool distribution = false;
  int max_rounds = 0;
  std::string format = "table";
};

void print_transcript_table(const GameTranscript<SuitedPermutation>& t) {
  std::cout << "secret " << show(t.secret) << '\n';
  for (int r = 0; r < t.rounds(); ++r) {
    std::cout << "round " << r + 1 << "  " << show(t.steps[r].guess) << "  correct "
              << t.steps[r].feedback.to_string() << '\n';
  }
  std::cout << "solved in " << t.rounds() << " rounds\n";
}

void print_distribution_table(const RoundDistribution& d) {
  std::cout << "n=" << d.n << " s=" << d.suit_count << " secrets=" << d.total() << " total_rounds=" << d.total_rounds()
            << '\n';
  std::cout << "rounds count cumulative\n";
  std::uint64_t cumulative = 0;
  for (std::size_t r = 1; r < d.counts.size(); ++r) {
    cumulative += d.counts[r];
    std::cout << r << ' ' << d.counts[r] << ' ' << cumulative << '\n';
  }
}

int run_simulate(const SimulateArgs& a) {
  const StrategyKind kind = parse_strategy_kind(a.strategy);
  std::optional<SuitedPermutation> secret;
  if (!a.secret.empty()) {
    const bool suited = a.s > 1 || a.secret.find(':') != std::string::npos;
    secret = suited ? parse_suited_permutation(a.secret, a.s) : SuitedPermutation::from_plain(parse_permutation(a.secret));
  }
  int n = a.n;
  if (secret) {
    if (n == 0) n = secret->size();
    if (secret->size() != n) throw UsageError("secret has length " + std::to_string(secret->size()) + ", --n is " + std::to_string(n));
  }
  if (n < 1) throw UsageError("--n (or --secret) is required");
  if (!a.distribution && !secret) throw UsageError("--secret is required unless --distribution is given");

  std::shared_ptr<OptimalSearch> search;
  std::unique_ptr<SuitedStrategy> suited_strategy;
  std::unique_ptr<PlainStrategy> plain_strategy;
  if (kind == StrategyKind::optimal) {
    search = std::make_shared<OptimalSearch>(n, a.s);
    if (a.s == 1) plain_strategy = std::make_unique<OptimalStrategy>(search);
    suited_strategy = std::make_unique<SuitedOptimalStrategy>(search);
  } else {
    if (a.s == 1) plain_strategy = std::make_unique<CycleStrategy>(n);
    suited_strategy = std::make_unique<SuitedCycleStrategy>(n, a.s);
  }

  if (a.distribution) {
    RoundDistribution d;
    if (kind == StrategyKind::cycle && n <= kernels::kMaxPackedSize && a.s <= 15) {
      d = cycle_round_distribution(n, a.s);
    } else if (a.s == 1) {
      d = round_distribution(n, *plain_strategy);
    } else {
      d = round_distribution(n, a.s, *suited_strategy);
    }
    if (a.format == "json") {
      print_json(distribution_json(d));
    } else if (a.format == "csv") {
      std::cout << distribution_csv(d);
    } else {
      print_distribution_table(d);
    }
    return kOk;
  }

  const int max_rounds = a.max_rounds > 0 ? a.max_rounds : default_max_rounds(n, a.s);
  if (a.s == 1) {
    const auto t = play(*plain_strategy, secret->values(), max_rounds);
    if (a.format == "json") {
      print_json(transcript_json(t));
      return kOk;
    }
    GameTranscript<SuitedPermutation> view{*secret, {}};
    for (const auto& st : t.steps) view.steps.push_back({SuitedPermutation::from_plain(st.guess), st.feedback});
    print_transcript_table(view);
    return kOk;
  }
  const auto t = play(*suited_strategy, *secret, max_rounds);
  if (a.format == "json") {
    print_json(transcript_json(t));
  } else {
    print_transcript_table(t);
  }
  return kOk;
}

// ---- verify ----

struct VerifyArgs {
  std::vector<std::string> suites;
  std::uint64_t seed = 1;
  std::string format = "table";
};

int run_verify(const VerifyArgs& a) {
  const auto results = run_verification({a.suites, a.seed});
  bool ok = true;
  Json rows = Json::array();
  for (const auto& r : results) {
    ok = ok && r.passed;
    rows.push_back({{"suite", r.suite}, {"check", r.name}, {"passed", r.passed}, {"detail", r.detail}});
  }
  if (a.format == "json") {
    print_json({{"seed", a.seed}, {"passed", ok}, {"checks", std::move(rows)}});
  } else {
    for (const auto& r : results) {
      std::cout << (r.passed ? "PASS " : "FAIL ") << r.suite << '/' << r.name;
      if (!r.passed) std::cout << ": " << r.detail;
      std::cout << '\n';
    }
    std::cout << (ok ? "all checks passed" : "verification FAILED") << '\n';
  }
  return ok ? kOk : kFailed;
}

// ---- search ----

struct SearchArgs {
  std::string mode;
  int n = 0;
  int s = 1;
  int r_max = 0;
  std::size_t max_states = SearchBudget{}.max_states;
  long long time_limit_ms = SearchBudget{}.time_limit.count();
  std::string format = "table";
};

int run_search(const SearchArgs& a) {
  SearchOptions options;
  options.budget.max_states = a.max_states;
  options.budget.time_limit = std::chrono::milliseconds(a.time_limit_ms);
  if (a.mode == "dominance") {
    const int r_max = a.r_max > 0 ? a.r_max : a.s * a.n;
    const auto r = dominance_report(a.n, r_max, a.s, options);
    if (a.format == "json") {
      print_json(dominance_json(r));
      return kOk;
    }
    std::cout << "n=" << r.n << " s=" << r.suit_count << " r_max=" << r.r_max << '\n';
    std::cout << "r cycle optimal gap\n";
    for (int i = 0; i < r.r_max; ++i) {
      std::cout << i + 1 << ' ' << r.cycle_cdf[i] << ' ' << r.optimal_cdf[i] << ' ' << r.gaps[i] << '\n';
    }
    std::cout << "states_visited " << r.states_visited << '\n';
    std::cout << "verdict " << r.verdict() << '\n';
    return kOk;
  }
  const auto r = expected_report(a.n, a.s, options);
  if (a.format == "json") {
    print_json(expected_json(r));
    return kOk;
  }
  std::cout << "n=" << r.n << " s=" << r.suit_count << " secrets=" << r.secrets << '\n';
  std::cout << "optimal_total " << r.optimal_total << '\n';
  std::cout << "cycle_total " << r.cycle_total << '\n';
  std::cout << "states_visited " << r.states_visited << '\n';
  std::cout << "cycle_optimal " << (r.cycle_optimal() ? "yes" : "no") << '\n';
  return kOk;
}

// ---- assist ----

struct AssistArgs {
  int n = 0;
  int s = 1;
  std::string strategy = "cycle";
  std::string format = "table";
};

std::string show_count(const std::optional<std::uint64_t>& c) { return c ? std::to_string(*c) : "not tracked"; }

int run_assist(const AssistArgs& a) {
  SessionManager manager;
  const StrategyKind kind = parse_strategy_kind(a.strategy);
  CreatedSession created;
  try {
    created = manager.create(a.n, a.s, kind);
  } catch (const AssistError& e) {
    throw UsageError(e.what());
  }
  const bool json = a.format == "json";
  if (json) {
    std::cout << created_json(created, a.n, a.s, kind).dump() << std::endl;
  } else {
    std::cout << "round 1 guess " << show(created.guess) << "  candidates " << show_count(created.candidate_count)
              << std::endl;
    std::cerr << "enter the correct positions (e.g. 2,5,9; none; all)\n";
  }
  std::string line;
  while (true) {
    if (!json) std::cerr << "> " << std::flush;
    if (!std::getline(std::cin, line)) break;
    line = trim(line);
    if (line == "quit" || line == "exit") break;
    try {
      const FeedbackSet fb = parse_feedback(normalize_list(line), a.n);
      std::vector<int> positions(fb.positions().begin(), fb.positions().end());
      const FeedbackOutcome out = manager.submit_feedback(created.id, positions);
      if (json) {
        std::cout << outcome_json(out).dump() << std::endl;
      } else if (out.solved) {
        std::cout << "solved in " << out.round << " rounds" << std::endl;
      } else {
        std::cout << "round " << out.round << " guess " << show(*out.guess) << "  candidates "
                  << show_count(out.candidate_count) << std::endl;
      }
      if (out.solved) return kOk;
    } catch (const AssistError& e) {
      if (json) {
        std::cout << error_json(e).dump() << std::endl;
      } else {
        std::cout << "rejected (" << e.status() << "): " << e.what() << std::endl;
      }
    } catch (const std::invalid_argument& e) {
      if (json) {
        std::cout << Json{{"error", "invalid_positions"}, {"message", e.what()}}.dump() << std::endl;
      } else {
        std::cout << "rejected: " << e.what() << std::endl;
      }
    }
  }
  return kOk;
}

// ---- serve ----

struct ServeArgs {
  ServerOptions server;
  long long ttl_seconds = 3600;
};

int run_serve(const ServeArgs& a) {
  AssistLimits limits;
  limits.ttl = std::chrono::seconds(a.ttl_seconds);
  SessionManager manager(limits);
  std::cerr << "listening on http://" << a.server.host << ':' << a.server.port << "/api/v1\n";
  if (!serve(manager, a.server)) {
    std::cerr << "error: cannot listen on " << a.server.host << ':' << a.server.port << '\n';
    return kFailed;
  }
  return kOk;
}

void add_format(CLI::App* cmd, std::string& target, std::vector<std::string> choices) {
  cmd->add_option("--format", target, "Output format")->check(CLI::IsMember(std::move(choices)))->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Permutation Wordle toolkit: exact counts, Cycle simulation, optimal search, live assist"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  CountArgs count;
  auto* count_cmd = app.add_subcommand("count", "Print rows of an exact count table");
  count_cmd->add_option("--kind", count.kind, "Table: A, B, D, F or C")->required();
  count_cmd->add_option("--s", count.s, "Suit count (D, F, C)")->check(CLI::Range(1, 1000))->capture_default_str();
  count_cmd->add_option("--n", count.n, "Row to print (largest row with --all-rows)")->required()->check(CLI::Range(0, 2000));
  count_cmd->add_flag("--all-rows", count.all_rows, "Print rows 0..n");
  add_format(count_cmd, count.format, {"table", "json", "csv"});

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Play a strategy against a secret, or over every secret");
  sim_cmd->add_option("--n", sim.n, "Size (defaults to the secret's length)")->check(CLI::Range(0, 64));
  sim_cmd->add_option("--s", sim.s, "Suit count")->check(CLI::Range(1, 64))->capture_default_str();
  sim_cmd->add_option("--secret", sim.secret, "Secret, e.g. 7,2,4,8,5,3,1,6,9 or 0:3,1:1,0:2");
  sim_cmd->add_option("--strategy", sim.strategy, "cycle or optimal")
      ->check(CLI::IsMember({"cycle", "optimal"}))
      ->capture_default_str();
  sim_cmd->add_flag("--distribution", sim.distribution, "Exhaustive round distribution over all secrets");
  sim_cmd->add_option("--max-rounds", sim.max_rounds, "Round budget (default s*n+1)")->check(CLI::PositiveNumber);
  add_format(sim_cmd, sim.format, {"table", "json", "csv"});

  VerifyArgs ver;
  auto* ver_cmd = app.add_subcommand("verify", "Run the property suites");
  ver_cmd->add_option("--suite", ver.suites, "Suite to run (repeatable; default all)")
      ->check(CLI::IsMember(suite_names()));
  ver_cmd->add_option("--seed", ver.seed, "Seed for randomized checks")->capture_default_str();
  add_format(ver_cmd, ver.format, {"table", "json"});

  SearchArgs srch;
  auto* srch_cmd = app.add_subcommand("search", "Exact game-tree search reports");
  srch_cmd->add_option("mode", srch.mode, "dominance or expected")
      ->required()
      ->check(CLI::IsMember({"dominance", "expected"}));
  srch_cmd->add_option("--n", srch.n, "Size")->required()->check(CLI::Range(1, 8));
  srch_cmd->add_option("--s", srch.s, "Suit count")->check(CLI::Range(1, 15))->capture_default_str();
  srch_cmd->add_option("--rmax", srch.r_max, "Largest round count compared (default s*n)")->check(CLI::PositiveNumber);
  srch_cmd->add_option("--max-states", srch.max_states, "State budget")->check(CLI::PositiveNumber)->capture_default_str();
  srch_cmd->add_option("--time-limit-ms", srch.time_limit_ms, "Wall-clock budget")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_format(srch_cmd, srch.format, {"table", "json"});

  AssistArgs as;
  auto* as_cmd = app.add_subcommand("assist", "Suggest guesses for a live game, reading feedback from stdin");
  as_cmd->add_option("--n", as.n, "Size")->required()->check(CLI::Range(1, 64));
  as_cmd->add_option("--s", as.s, "Suit count")->check(CLI::Range(1, 64))->capture_default_str();
  as_cmd->add_option("--strategy", as.strategy, "cycle or optimal")
      ->check(CLI::IsMember({"cycle", "optimal"}))
      ->capture_default_str();
  add_format(as_cmd, as.format, {"table", "json"});

  ServeArgs sv;
  auto* sv_cmd = app.add_subcommand("serve", "Run the HTTP assist service");
  sv_cmd->add_option("--host", sv.server.host, "Bind address")->capture_default_str();
  sv_cmd->add_option("--port", sv.server.port, "Port")->check(CLI::Range(1, 65535))->capture_default_str();
  sv_cmd->add_option("--ttl", sv.ttl_seconds, "Idle session lifetime in seconds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sv_cmd->add_option("--cors-origin", sv.server.cors_origin, "Allowed CORS origin")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*count_cmd) return run_count(count);
    if (*sim_cmd) return run_simulate(sim);
    if (*ver_cmd) return run_verify(ver);
    if (*srch_cmd) return run_search(srch);
    if (*as_cmd) return run_assist(as);
    if (*sv_cmd) return run_serve(sv);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return kBudget;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailed;
  }
  return kUsage;
}

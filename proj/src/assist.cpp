#include "permwordle/assist.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <numeric>

namespace permwordle {

namespace {

using Clock = std::chrono::steady_clock;

// One card as suit << 8 | value.
using Code = std::uint16_t;

Code code_of(const Card& c) { return static_cast<Code>(c.suit << 8 | c.value); }

std::vector<Code> codes_of(const SuitedPermutation& t) {
  std::vector<Code> out;
  out.reserve(t.size());
  for (const Card& c : t.cards()) out.push_back(code_of(c));
  return out;
}

std::uint64_t match_mask(std::span<const Code> guess, std::span<const Code> secret) {
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < guess.size(); ++i) {
    if (guess[i] == secret[i]) m |= std::uint64_t{1} << i;
  }
  return m;
}

struct Constraint {
  std::vector<Code> guess;
  std::uint64_t mask;
};

std::vector<Constraint> constraints_of(std::span<const Step<SuitedPermutation>> steps) {
  std::vector<Constraint> out;
  for (const auto& st : steps) out.push_back({codes_of(st.guess), st.feedback.mask()});
  return out;
}

// Calls visit once per suited permutation of size n over s suits.
void for_each_secret(int n, int s, const std::function<void(std::span<const Code>)>& visit) {
  std::vector<int> values(n);
  std::iota(values.begin(), values.end(), 1);
  std::vector<int> suits(n, 0);
  std::vector<Code> codes(n);
  do {
    std::fill(suits.begin(), suits.end(), 0);
    for (;;) {
      for (int i = 0; i < n; ++i) codes[i] = static_cast<Code>(suits[i] << 8 | values[i]);
      visit(codes);
      int i = n - 1;
      while (i >= 0 && suits[i] == s - 1) suits[i--] = 0;
      if (i < 0) break;
      ++suits[i];
    }
  } while (std::next_permutation(values.begin(), values.end()));
}

std::uint64_t key_of(int n, int s) { return static_cast<std::uint64_t>(n) << 32 | static_cast<std::uint32_t>(s); }

}  // namespace

const char* strategy_kind_name(StrategyKind k) { return k == StrategyKind::cycle ? "cycle" : "optimal"; }

StrategyKind parse_strategy_kind(const std::string& name) {
  if (name == "cycle") return StrategyKind::cycle;
  if (name == "optimal") return StrategyKind::optimal;
  throw std::invalid_argument("unknown strategy '" + name + "' (expected cycle or optimal)");
}

struct SessionManager::Session {
  std::mutex mutex;
  std::string id;
  int n = 0;
  int s = 1;
  StrategyKind strategy = StrategyKind::cycle;
  bool tracked = false;
  bool solved = false;
  std::vector<Step<SuitedPermutation>> steps;
  SuitedPermutation pending;
  Clock::time_point touched;

  // Cycle with tracking: candidate codes with stride n, filled at the first
  // feedback; until then every arrangement is a candidate.
  bool materialized = false;
  std::vector<Code> candidates;
  std::uint64_t count = 0;

  // Optimal: universe indices.
  std::shared_ptr<OptimalSearch> search;
  Members members;

  std::optional<std::uint64_t> candidate_count() const {
    if (!tracked) return std::nullopt;
    if (strategy == StrategyKind::optimal) return members.size();
    return count;
  }

  int round() const { return static_cast<int>(steps.size()) + (solved ? 0 : 1); }

  // Smallest round r such that rounds 1..r together with the submitted step
  // leave no secret.
  int contradicting_round(const Constraint& submitted) const {
    const auto history = constraints_of(steps);
    int best = -1;
    for_each_secret(n, s, [&](std::span<const Code> x) {
      if (match_mask(submitted.guess, x) != submitted.mask) return;
      int p = 0;
      while (p < static_cast<int>(history.size()) && match_mask(history[p].guess, x) == history[p].mask) ++p;
      best = std::max(best, p);
    });
    if (best < 0) return static_cast<int>(steps.size()) + 1;
    return best + 1;
  }

  // Without a candidate set: a card kept in place must keep its verdict, and
  // Cycle solves within s*n rounds.
  std::optional<int> structural_contradiction(const Constraint& submitted) const {
    const std::size_t nn = static_cast<std::size_t>(n);
    for (std::size_t r = 0; r < steps.size(); ++r) {
      const auto& g = steps[r].guess.cards();
      for (std::size_t i = 0; i < nn; ++i) {
        if (code_of(g[i]) != submitted.guess[i]) continue;
        const bool then = (steps[r].feedback.mask() >> i) & 1u;
        const bool now = (submitted.mask >> i) & 1u;
        if (then != now) return static_cast<int>(r) + 1;
      }
    }
    const int round = static_cast<int>(steps.size()) + 1;
    const std::uint64_t full = nn == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << nn) - 1;
    if (round >= s * n && submitted.mask != full) return round;
    return std::nullopt;
  }
};

SessionManager::SessionManager(AssistLimits limits) : limits_(limits), rng_(std::random_device{}()) {}

SessionManager::~SessionManager() = default;

std::string SessionManager::fresh_id() {
  std::lock_guard lock(id_mutex_);
  char buf[33];
  std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(rng_()),
                static_cast<unsigned long long>(rng_()));
  return buf;
}

std::shared_ptr<OptimalSearch> SessionManager::search_for(int n, int suit_count) {
  std::lock_guard lock(search_mutex_);
  auto& slot = searches_[key_of(n, suit_count)];
  if (!slot) slot = std::make_shared<OptimalSearch>(n, suit_count);
  return slot;
}

CreatedSession SessionManager::create(int n, int suit_count, StrategyKind strategy) {
  if (n < 1 || suit_count < 1) throw AssistError(422, "invalid_parameters", "n and s must be at least 1");
  if (n > limits_.max_n || suit_count > limits_.max_suits) {
    throw AssistError(422, "too_large",
                      "n is limited to " + std::to_string(limits_.max_n) + " and s to " +
                          std::to_string(limits_.max_suits));
  }
  std::optional<std::uint64_t> total;
  try {
    total = arrangement_count(n, suit_count);
  } catch (const std::overflow_error&) {
  }
  const bool tracked = total && *total <= limits_.tracking_limit;

  auto session = std::make_shared<Session>();
  session->n = n;
  session->s = suit_count;
  session->strategy = strategy;
  session->tracked = tracked;
  session->pending = SuitedPermutation::identity(n, suit_count);
  session->touched = Clock::now();
  if (tracked) session->count = *total;

  if (strategy == StrategyKind::optimal) {
    const bool fits = total && *total <= limits_.optimal_universe &&
                      (suit_count == 1 || suit_count * n <= kMaxSuitedSearchProduct);
    if (!fits) {
      throw AssistError(422, "too_large",
                        "optimal strategy needs s^n n! <= " + std::to_string(limits_.optimal_universe) +
                            (suit_count > 1 ? " and s*n <= " + std::to_string(kMaxSuitedSearchProduct) : ""));
    }
    session->search = search_for(n, suit_count);
    session->members = session->search->universe().all_members();
  }

  purge_expired();
  std::unique_lock lock(mutex_);
  do session->id = fresh_id();
  while (sessions_.contains(session->id));
  sessions_.emplace(session->id, session);
  return {session->id, session->pending, session->candidate_count()};
}

std::shared_ptr<SessionManager::Session> SessionManager::find(const std::string& id) const {
  std::shared_lock lock(mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw AssistError(404, "not_found", "no session '" + id + "'");
  return it->second;
}

FeedbackOutcome SessionManager::submit_feedback(const std::string& id, const std::vector<int>& positions) {
  auto session = find(id);
  std::lock_guard lock(session->mutex);
  Session& ss = *session;
  ss.touched = Clock::now();
  if (ss.solved) throw AssistError(409, "closed", "session is already solved");

  FeedbackSet fb;
  try {
    fb = FeedbackSet(ss.n, positions);
  } catch (const std::invalid_argument& e) {
    throw AssistError(422, "invalid_positions", e.what());
  }
  const Constraint submitted{codes_of(ss.pending), fb.mask()};
  const int round = static_cast<int>(ss.steps.size()) + 1;
  auto reject = [&](int at) {
    throw AssistError(409, "inconsistent",
                      "feedback for round " + std::to_string(round) + " contradicts round " + std::to_string(at),
                      at);
  };

  if (ss.strategy == StrategyKind::optimal) {
    const GameUniverse& u = ss.search->universe();
    const int g = u.index_of(ss.pending);
    Members next;
    for (auto x : ss.members) {
      if (u.feedback(g, x) == submitted.mask) next.push_back(x);
    }
    if (next.empty()) reject(ss.contradicting_round(submitted));
    ss.members = std::move(next);
  } else if (ss.tracked) {
    const std::size_t n = static_cast<std::size_t>(ss.n);
    std::vector<Code> next;
    if (!ss.materialized) {
      for_each_secret(ss.n, ss.s, [&](std::span<const Code> x) {
        if (match_mask(submitted.guess, x) == submitted.mask) next.insert(next.end(), x.begin(), x.end());
      });
    } else {
      for (std::size_t off = 0; off < ss.candidates.size(); off += n) {
        std::span<const Code> x(ss.candidates.data() + off, n);
        if (match_mask(submitted.guess, x) == submitted.mask) next.insert(next.end(), x.begin(), x.end());
      }
    }
    if (next.empty()) reject(ss.contradicting_round(submitted));
    ss.candidates = std::move(next);
    ss.materialized = true;
    ss.count = ss.candidates.size() / n;
  } else if (auto at = ss.structural_contradiction(submitted)) {
    reject(*at);
  }

  ss.steps.push_back({ss.pending, fb});
  FeedbackOutcome out;
  if (fb.is_full()) {
    ss.solved = true;
    out.solved = true;
    out.round = round;
    out.candidate_count = ss.candidate_count();
    return out;
  }
  if (ss.strategy == StrategyKind::optimal) {
    try {
      ss.pending = ss.search->universe().element(ss.search->best_guess(ss.members).guess);
    } catch (const BudgetExceeded& e) {
      ss.steps.pop_back();
      throw AssistError(503, "budget_exceeded", e.what());
    }
  } else {
    ss.pending = suited_cycle_next(ss.pending, fb);
  }
  out.guess = ss.pending;
  out.round = round + 1;
  out.candidate_count = ss.candidate_count();
  return out;
}

SessionView SessionManager::view(const std::string& id) const {
  auto session = find(id);
  std::lock_guard lock(session->mutex);
  SessionView v;
  v.id = session->id;
  v.n = session->n;
  v.suit_count = session->s;
  v.strategy = session->strategy;
  v.solved = session->solved;
  v.round = session->round();
  v.candidate_count = session->candidate_count();
  v.steps = session->steps;
  if (!session->solved) v.pending_guess = session->pending;
  return v;
}

bool SessionManager::remove(const std::string& id) {
  std::unique_lock lock(mutex_);
  return sessions_.erase(id) > 0;
}

std::size_t SessionManager::purge_expired() {
  const auto cutoff = Clock::now() - limits_.ttl;
  std::unique_lock lock(mutex_);
  return std::erase_if(sessions_, [&](const auto& kv) {
    std::unique_lock session_lock(kv.second->mutex, std::try_to_lock);
    return session_lock.owns_lock() && kv.second->touched < cutoff;
  });
}

std::size_t SessionManager::size() const {
  std::shared_lock lock(mutex_);
  return sessions_.size();
}

}  // namespace permwordle

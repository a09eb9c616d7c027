// assist.hpp -- live-game sessions: suggest a guess, take the feedback the
// external game reported, suggest the next one.
//
// Plain games are sessions with s = 1. Candidate sets are tracked exactly
// when s^n n! is at most AssistLimits::tracking_limit; above that the count
// is reported as untracked and only Cycle is offered.

#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "permwordle/permutation.hpp"
#include "permwordle/search.hpp"
#include "permwordle/strategy.hpp"

namespace permwordle {

enum class StrategyKind { cycle, optimal };

const char* strategy_kind_name(StrategyKind k);
/// Throws std::invalid_argument for anything but "cycle" or "optimal".
StrategyKind parse_strategy_kind(const std::string& name);

struct AssistLimits {
  int max_n = 64;
  int max_suits = 64;
  std::uint64_t tracking_limit = 1'000'000;
  /// Largest s^n n! the optimal strategy will search.
  std::uint64_t optimal_universe = 120;
  std::chrono::seconds ttl{std::chrono::hours(1)};
};

/// Carries the HTTP status the service maps it to.
class AssistError : public std::runtime_error {
 public:
  AssistError(int status, std::string code, const std::string& message,
              std::optional<int> contradicting_round = std::nullopt)
      : std::runtime_error(message), status_(status), code_(std::move(code)), round_(contradicting_round) {}

  int status() const { return status_; }
  const std::string& code() const { return code_; }
  std::optional<int> contradicting_round() const { return round_; }

 private:
  int status_;
  std::string code_;
  std::optional<int> round_;
};

struct CreatedSession {
  std::string id;
  SuitedPermutation guess;
  std::optional<std::uint64_t> candidate_count;
};

struct FeedbackOutcome {
  bool solved = false;
  /// Next suggestion; empty once solved.
  std::optional<SuitedPermutation> guess;
  /// Round of the returned guess, or the solving round.
  int round = 0;
  std::optional<std::uint64_t> candidate_count;
};

struct SessionView {
  std::string id;
  int n = 0;
  int suit_count = 1;
  StrategyKind strategy = StrategyKind::cycle;
  bool solved = false;
  int round = 0;
  std::optional<std::uint64_t> candidate_count;
  std::vector<Step<SuitedPermutation>> steps;
  std::optional<SuitedPermutation> pending_guess;
};

class SessionManager {
 public:
  explicit SessionManager(AssistLimits limits = {});
  ~SessionManager();

  /// 422 for out-of-range or oversize parameters.
  CreatedSession create(int n, int suit_count, StrategyKind strategy);

  /// 404 unknown id; 409 when the session is closed or the feedback
  /// contradicts every remaining candidate; 422 for invalid positions.
  FeedbackOutcome submit_feedback(const std::string& id, const std::vector<int>& positions);

  SessionView view(const std::string& id) const;
  /// Returns false when the id is unknown.
  bool remove(const std::string& id);

  std::size_t purge_expired();
  std::size_t size() const;
  const AssistLimits& limits() const { return limits_; }

 private:
  struct Session;

  std::shared_ptr<Session> find(const std::string& id) const;
  std::shared_ptr<OptimalSearch> search_for(int n, int suit_count);
  std::string fresh_id();

  AssistLimits limits_;
  mutable std::shared_mutex mutex_;
  std::unordered_map<std::string, std::shared_ptr<Session>> sessions_;
  std::mutex search_mutex_;
  std::unordered_map<std::uint64_t, std::shared_ptr<OptimalSearch>> searches_;
  std::mutex id_mutex_;
  std::mt19937_64 rng_;
};

}  // namespace permwordle

// search.hpp -- exact game-tree search over information states.
//
// An information state is the set S of secrets consistent with the history.
// Relabeling positions by any fixed permutation (S -> S∘τ) preserves every
// value computed here, so states are keyed by a canonical representative:
// the lexicographically least sorted list among {S∘g⁻¹ : g ∈ S}. That list
// always contains the identity.
//
//   V(S, r)  most secrets of S any strategy can solve within r rounds
//   T(S)     least total number of rounds, summed over the secrets of S
//
// Guesses range over the whole universe, members of S or not.

#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "permwordle/errors.hpp"
#include "permwordle/permutation.hpp"
#include "permwordle/strategy.hpp"

namespace permwordle {

/// Sorted members of a state, as universe indices.
using Members = std::vector<std::uint16_t>;

/// All s^n n! suited permutations (s = 1: S_n) in lexicographic order, with
/// the pairwise feedback table and the normalizing transforms precomputed.
class GameUniverse {
 public:
  static constexpr std::size_t kDefaultMaxSize = 720;

  /// Throws BudgetExceeded when s^n n! exceeds max_size, std::invalid_argument
  /// unless 1 <= n <= 8 and 1 <= s <= 15.
  GameUniverse(int n, int suit_count, std::size_t max_size = kDefaultMaxSize);

  int n() const { return n_; }
  int suit_count() const { return suit_count_; }
  int size() const { return static_cast<int>(elements_.size()); }
  const SuitedPermutation& element(int index) const { return elements_[index]; }
  int index_of(const SuitedPermutation& t) const;
  int index_of(const Permutation& p) const;

  std::uint8_t full_mask() const { return static_cast<std::uint8_t>((1u << n_) - 1u); }

  /// Bitmask of positions where guess and secret agree.
  std::uint8_t feedback(int guess, int secret) const {
    return feedback_[static_cast<std::size_t>(guess) * elements_.size() + secret];
  }

  /// Image of x under the relabeling that sends member to index 0 (the
  /// all-suit-0 identity): positions renamed by member's values, suits at
  /// each position shifted by minus member's suit there. For s = 1 this is
  /// x ∘ member⁻¹.
  std::uint16_t normalize(int member, int x) const {
    return normalize_[static_cast<std::size_t>(member) * elements_.size() + x];
  }

  Members all_members() const;

 private:
  int n_;
  int suit_count_;
  std::vector<SuitedPermutation> elements_;
  std::vector<std::uint8_t> feedback_;
  std::vector<std::uint16_t> normalize_;
};

struct SearchBudget {
  std::size_t max_states = 20'000'000;
  std::chrono::milliseconds time_limit = std::chrono::minutes(30);
};

struct SearchOptions {
  bool canonicalize = true;
  bool memoize = true;
  SearchBudget budget;
};

struct SearchStats {
  std::uint64_t states_visited = 0;
  std::uint64_t memo_entries = 0;
  std::uint64_t elapsed_ms = 0;
};

class SearchBudgetExceeded : public BudgetExceeded {
 public:
  SearchBudgetExceeded(const std::string& what, SearchStats stats)
      : BudgetExceeded(what), stats_(stats) {}
  const SearchStats& stats() const { return stats_; }

 private:
  SearchStats stats_;
};

/// Memoized V and T over one universe. Public calls are serialized; the
/// memo persists across calls.
class OptimalSearch {
 public:
  explicit OptimalSearch(std::shared_ptr<const GameUniverse> universe, SearchOptions options = {});
  OptimalSearch(int n, int suit_count = 1, SearchOptions options = {});

  const GameUniverse& universe() const { return *universe_; }
  const SearchOptions& options() const { return options_; }

  /// Canonical representative of members (must be nonempty).
  Members canonicalize(std::span<const std::uint16_t> members) const;

  /// V(S, r).
  std::uint64_t max_solved_within(std::span<const std::uint16_t> members, int rounds);
  /// V(S, 0..max_rounds).
  std::vector<std::uint64_t> max_solved_profile(std::span<const std::uint16_t> members, int max_rounds);
  /// T(S).
  std::uint64_t min_expected_total(std::span<const std::uint16_t> members);

  struct Choice {
    int guess;
    std::uint64_t total;
  };
  /// A guess attaining T(S); the lowest universe index among ties.
  Choice best_guess(std::span<const std::uint16_t> members);

  SearchStats stats() const;
  void clear_memo();

 private:
  struct KeyHash {
    std::size_t operator()(const std::vector<std::uint64_t>& words) const noexcept;
  };
  using Key = std::vector<std::uint64_t>;

  Key key_of(const Members& canonical) const;
  Members prepare(std::span<const std::uint16_t> members) const;
  void begin_call();
  void tick();

  std::vector<std::uint32_t> profile(const Members& s, int depth);
  std::uint32_t total(const Members& s);

  std::shared_ptr<const GameUniverse> universe_;
  SearchOptions options_;
  mutable std::mutex mutex_;
  std::unordered_map<Key, std::vector<std::uint32_t>, KeyHash> profile_memo_;
  std::unordered_map<Key, std::uint32_t, KeyHash> total_memo_;
  std::uint64_t states_visited_ = 0;
  std::chrono::steady_clock::time_point started_;
  std::chrono::steady_clock::time_point deadline_;
};

/// A state made of concrete permutations.
struct StateSet {
  int n = 0;
  std::vector<Permutation> members;  ///< sorted ascending
};

/// Canonical representative, computed directly from one-line notation.
/// Throws std::invalid_argument for an empty or mixed-length input.
StateSet canonicalize(std::span<const Permutation> members);

struct DominanceReport {
  int n = 0;
  int suit_count = 1;
  int r_max = 0;
  /// Entry r-1 is the count solved within r rounds, out of s^n n!.
  std::vector<std::uint64_t> cycle_cdf;
  std::vector<std::uint64_t> optimal_cdf;
  /// optimal_cdf - cycle_cdf per r; all zero exactly when dominant.
  std::vector<std::int64_t> gaps;
  bool dominant = false;
  std::uint64_t elapsed_ms = 0;
  std::uint64_t states_visited = 0;

  std::string verdict() const { return dominant ? "DOMINANT" : "NOT_DOMINANT"; }
};

/// Default suited search cap: s*n <= 6.
inline constexpr int kMaxSuitedSearchProduct = 6;

/// Compares Cycle's cumulative counts (from the exact tables) with the
/// optimum V(full, r) for r = 1..r_max. Throws BudgetExceeded when the
/// universe is over budget or the search breaches its caps.
DominanceReport dominance_report(int n, int r_max, int suit_count = 1, SearchOptions options = {});

struct ExpectedReport {
  int n = 0;
  int suit_count = 1;
  std::uint64_t secrets = 0;        ///< s^n n!
  std::uint64_t optimal_total = 0;  ///< T(full)
  std::uint64_t cycle_total = 0;    ///< total rounds of Cycle over all secrets
  std::uint64_t elapsed_ms = 0;
  std::uint64_t states_visited = 0;

  bool cycle_optimal() const { return optimal_total == cycle_total; }
};

ExpectedReport expected_report(int n, int suit_count = 1, SearchOptions options = {});

/// Plays the T-minimizing guess on the live candidate set.
class OptimalStrategy final : public PlainStrategy {
 public:
  explicit OptimalStrategy(std::shared_ptr<OptimalSearch> search);
  Permutation next_guess(std::span<const Step<Permutation>> history) const override;
  std::string name() const override { return "optimal"; }

 private:
  std::shared_ptr<OptimalSearch> search_;
};

class SuitedOptimalStrategy final : public SuitedStrategy {
 public:
  explicit SuitedOptimalStrategy(std::shared_ptr<OptimalSearch> search);
  SuitedPermutation next_guess(std::span<const Step<SuitedPermutation>> history) const override;
  std::string name() const override { return "optimal"; }

 private:
  std::shared_ptr<OptimalSearch> search_;
};

/// Universe members consistent with every (guess, feedback) step.
Members consistent_members(const GameUniverse& universe, std::span<const Step<SuitedPermutation>> history);

}  // namespace permwordle

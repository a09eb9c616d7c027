// strategy.hpp -- guessing strategies, game play and exhaustive round counts.

#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "permwordle/errors.hpp"
#include "permwordle/permutation.hpp"

namespace permwordle {

inline FeedbackSet feedback(const SuitedPermutation& guess, const SuitedPermutation& secret) {
  return suited_feedback(guess, secret);
}

template <class Guess>
struct Step {
  Guess guess;
  FeedbackSet feedback;

  friend bool operator==(const Step&, const Step&) = default;
};

/// A guessing strategy sees the whole history, so strategies that are not
/// Markov in the last round fit the same interface. next_guess must be
/// deterministic given the history.
template <class Guess>
class Strategy {
 public:
  virtual ~Strategy() = default;
  virtual Guess next_guess(std::span<const Step<Guess>> history) const = 0;
  virtual std::string name() const = 0;
};

using PlainStrategy = Strategy<Permutation>;
using SuitedStrategy = Strategy<SuitedPermutation>;

template <class Guess>
struct GameTranscript {
  Guess secret;
  std::vector<Step<Guess>> steps;

  int rounds() const { return static_cast<int>(steps.size()); }
  bool solved() const { return !steps.empty() && steps.back().feedback.is_full(); }
};

template <class Guess>
class RoundBudgetExceeded : public BudgetExceeded {
 public:
  RoundBudgetExceeded(GameTranscript<Guess> partial, int max_rounds)
      : BudgetExceeded("round budget of " + std::to_string(max_rounds) + " exhausted"),
        partial_(std::move(partial)) {}
  const GameTranscript<Guess>& partial() const { return partial_; }

 private:
  GameTranscript<Guess> partial_;
};

/// Shift every card outside fb one unfixed slot to the right; the card in the
/// last unfixed slot wraps to the first. Throws std::invalid_argument when fb
/// is full or sized differently from guess.
Permutation cycle_next(const Permutation& guess, const FeedbackSet& fb);

/// As cycle_next, with the wrapping card's suit decremented mod s.
SuitedPermutation suited_cycle_next(const SuitedPermutation& guess, const FeedbackSet& fb);

class CycleStrategy final : public PlainStrategy {
 public:
  explicit CycleStrategy(int n) : n_(n) {}
  Permutation next_guess(std::span<const Step<Permutation>> history) const override;
  std::string name() const override { return "cycle"; }

 private:
  int n_;
};

class SuitedCycleStrategy final : public SuitedStrategy {
 public:
  SuitedCycleStrategy(int n, int suit_count) : n_(n), suit_count_(suit_count) {}
  SuitedPermutation next_guess(std::span<const Step<SuitedPermutation>> history) const override;
  std::string name() const override { return "cycle"; }

 private:
  int n_;
  int suit_count_;
};

/// Plays inner with every guess relabeled by tau (guess -> tau ∘ guess).
/// Feedback positions are unchanged by a common value relabeling, so the
/// round count on secret tau ∘ σ equals the inner strategy's count on σ.
class RelabeledStrategy final : public PlainStrategy {
 public:
  RelabeledStrategy(const PlainStrategy& inner, Permutation tau);
  Permutation next_guess(std::span<const Step<Permutation>> history) const override;
  std::string name() const override { return inner_.name() + "+relabel"; }

 private:
  const PlainStrategy& inner_;
  Permutation tau_;
  Permutation tau_inverse_;
};

/// s*n + 1: Cycle never needs more than s*n rounds.
inline int default_max_rounds(int n, int suit_count = 1) { return suit_count * n + 1; }

/// Runs the strategy against secret until solved. Throws RoundBudgetExceeded
/// (carrying the partial transcript) once max_rounds guesses fail.
template <class Guess>
GameTranscript<Guess> play(const Strategy<Guess>& strategy, const Guess& secret, int max_rounds) {
  if (max_rounds < 1) throw std::invalid_argument("max_rounds must be at least 1");
  GameTranscript<Guess> transcript{secret, {}};
  while (transcript.rounds() < max_rounds) {
    Guess guess = strategy.next_guess(transcript.steps);
    FeedbackSet fb = feedback(guess, secret);
    const bool done = fb.is_full();
    transcript.steps.push_back({std::move(guess), std::move(fb)});
    if (done) return transcript;
  }
  throw RoundBudgetExceeded<Guess>(std::move(transcript), max_rounds);
}

/// counts[r] = number of secrets solved in exactly r rounds (counts[0] = 0).
struct RoundDistribution {
  int n = 0;
  int suit_count = 1;
  std::vector<std::uint64_t> counts;

  std::uint64_t total() const;
  /// Number of secrets solved within r rounds.
  std::uint64_t cumulative(int rounds) const;
  /// Sum of rounds over all secrets; mean = total_rounds() / total().
  std::uint64_t total_rounds() const;

  friend bool operator==(const RoundDistribution&, const RoundDistribution&) = default;
};

inline constexpr std::uint64_t kDefaultEnumerationBudget = 50'000'000;

/// Exhaustive play over all n! secrets. Throws BudgetExceeded if n! exceeds
/// the budget. Work is split over worker_count() threads; the merged result
/// does not depend on the split.
RoundDistribution round_distribution(int n, const PlainStrategy& strategy,
                                     std::uint64_t budget = kDefaultEnumerationBudget);

/// Exhaustive play over all s^n * n! suited secrets.
RoundDistribution round_distribution(int n, int suit_count, const SuitedStrategy& strategy,
                                     std::uint64_t budget = kDefaultEnumerationBudget);

/// Cycle's distribution computed by playing every secret in lockstep on
/// packed words, feedback from the batch SIMD kernels. Requires n <= 8 and
/// s <= 15.
RoundDistribution cycle_round_distribution(int n, int suit_count = 1,
                                           std::uint64_t budget = kDefaultEnumerationBudget);

/// Values that guess places strictly further right than secret does:
/// {i | guess^{-1}(i) > secret^{-1}(i)}.
FeedbackSet right_set(const Permutation& guess, const Permutation& secret);

}  // namespace permwordle

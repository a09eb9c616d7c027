#include "permwordle/strategy.hpp"

#include <algorithm>
#include <thread>

#include "permwordle/kernels.hpp"
#include "permwordle/threads.hpp"

namespace permwordle {

namespace {

// Unfixed positions (1-based, increasing); throws if there are none.
std::vector<int> unfixed_positions(int n, const FeedbackSet& fb) {
  if (fb.universe() != n) throw std::invalid_argument("feedback sized for a different n");
  if (fb.is_full()) throw std::invalid_argument("feedback is full: the game is already over");
  std::vector<int> open;
  open.reserve(n - fb.size());
  for (int i = 1; i <= n; ++i) {
    if (!fb.contains(i)) open.push_back(i);
  }
  return open;
}

void check_budget(std::uint64_t total, std::uint64_t budget) {
  if (total > budget) {
    throw BudgetExceeded("exhaustive play over " + std::to_string(total) +
                         " secrets exceeds the enumeration budget of " + std::to_string(budget));
  }
}

template <class Guess, class Unrank>
RoundDistribution distribute(int n, int suit_count, const Strategy<Guess>& strategy,
                             std::uint64_t budget, Unrank unrank_secret) {
  const std::uint64_t total = arrangement_count(n, suit_count);
  check_budget(total, budget);
  const int max_rounds = default_max_rounds(n, suit_count);
  const unsigned workers =
      static_cast<unsigned>(std::min<std::uint64_t>(worker_count(), std::max<std::uint64_t>(total / 256, 1)));

  std::vector<std::vector<std::uint64_t>> partial(workers, std::vector<std::uint64_t>(max_rounds + 1, 0));
  std::vector<std::exception_ptr> errors(workers);
  auto run = [&](unsigned w) {
    try {
      const std::uint64_t begin = total * w / workers;
      const std::uint64_t end = total * (w + 1) / workers;
      for (std::uint64_t idx = begin; idx < end; ++idx) {
        const auto transcript = play(strategy, unrank_secret(idx), max_rounds);
        ++partial[w][transcript.rounds()];
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  RoundDistribution dist{n, suit_count, std::vector<std::uint64_t>(max_rounds + 1, 0)};
  for (const auto& p : partial) {
    for (std::size_t r = 0; r < p.size(); ++r) dist.counts[r] += p[r];
  }
  while (dist.counts.size() > 1 && dist.counts.back() == 0) dist.counts.pop_back();
  return dist;
}

// One Cycle step on a packed word. unfixed mask bit i means byte i is wrong.
kernels::Packed packed_cycle_step(kernels::Packed word, std::uint8_t wrong, int suit_count) {
  int slots[kernels::kMaxPackedSize];
  int count = 0;
  for (int i = 0; i < kernels::kMaxPackedSize; ++i) {
    if (wrong >> i & 1u) slots[count++] = i;
  }
  auto byte_at = [&](int i) { return static_cast<unsigned>(word >> (8 * i) & 0xff); };
  kernels::Packed next = word;
  auto put = [&](int i, unsigned b) {
    next &= ~(kernels::Packed{0xff} << (8 * i));
    next |= kernels::Packed{b} << (8 * i);
  };
  const unsigned last = byte_at(slots[count - 1]);
  for (int j = count - 1; j > 0; --j) put(slots[j], byte_at(slots[j - 1]));
  const unsigned suit = last / 16;
  put(slots[0], ((suit + suit_count - 1) % suit_count) * 16 + last % 16);
  return next;
}

}  // namespace

Permutation cycle_next(const Permutation& guess, const FeedbackSet& fb) {
  const auto open = unfixed_positions(guess.size(), fb);
  std::vector<int> next(guess.entries().begin(), guess.entries().end());
  for (std::size_t j = 1; j < open.size(); ++j) next[open[j] - 1] = guess(open[j - 1]);
  next[open.front() - 1] = guess(open.back());
  return Permutation(std::move(next));
}

SuitedPermutation suited_cycle_next(const SuitedPermutation& guess, const FeedbackSet& fb) {
  const auto open = unfixed_positions(guess.size(), fb);
  const int s = guess.suit_count();
  std::vector<Card> next(guess.cards().begin(), guess.cards().end());
  for (std::size_t j = 1; j < open.size(); ++j) next[open[j] - 1] = guess(open[j - 1]);
  const Card& wrapped = guess(open.back());
  next[open.front() - 1] = {(wrapped.suit + s - 1) % s, wrapped.value};
  return SuitedPermutation(std::move(next), s);
}

Permutation CycleStrategy::next_guess(std::span<const Step<Permutation>> history) const {
  if (history.empty()) return Permutation::identity(n_);
  return cycle_next(history.back().guess, history.back().feedback);
}

SuitedPermutation SuitedCycleStrategy::next_guess(std::span<const Step<SuitedPermutation>> history) const {
  if (history.empty()) return SuitedPermutation::identity(n_, suit_count_);
  return suited_cycle_next(history.back().guess, history.back().feedback);
}

RelabeledStrategy::RelabeledStrategy(const PlainStrategy& inner, Permutation tau)
    : inner_(inner), tau_(std::move(tau)), tau_inverse_(tau_.inverse()) {}

Permutation RelabeledStrategy::next_guess(std::span<const Step<Permutation>> history) const {
  std::vector<Step<Permutation>> inner_history;
  inner_history.reserve(history.size());
  for (const auto& step : history) inner_history.push_back({compose(tau_inverse_, step.guess), step.feedback});
  return compose(tau_, inner_.next_guess(inner_history));
}

std::uint64_t RoundDistribution::total() const {
  std::uint64_t t = 0;
  for (auto c : counts) t += c;
  return t;
}

std::uint64_t RoundDistribution::cumulative(int rounds) const {
  std::uint64_t t = 0;
  for (int r = 0; r <= rounds && r < static_cast<int>(counts.size()); ++r) t += counts[r];
  return t;
}

std::uint64_t RoundDistribution::total_rounds() const {
  std::uint64_t t = 0;
  for (std::size_t r = 0; r < counts.size(); ++r) t += r * counts[r];
  return t;
}

RoundDistribution round_distribution(int n, const PlainStrategy& strategy, std::uint64_t budget) {
  return distribute(n, 1, strategy, budget, [n](std::uint64_t idx) { return unrank(idx, n); });
}

RoundDistribution round_distribution(int n, int suit_count, const SuitedStrategy& strategy,
                                     std::uint64_t budget) {
  return distribute(n, suit_count, strategy, budget,
                    [n, suit_count](std::uint64_t idx) { return unrank_suited(idx, n, suit_count); });
}

RoundDistribution cycle_round_distribution(int n, int suit_count, std::uint64_t budget) {
  if (n < 1 || n > kernels::kMaxPackedSize || suit_count < 1 || suit_count > 15) {
    throw std::invalid_argument("packed Cycle distribution needs 1 <= n <= 8 and 1 <= s <= 15");
  }
  const std::uint64_t total = arrangement_count(n, suit_count);
  check_budget(total, budget);

  std::vector<kernels::Packed> secrets(total);
  for (std::uint64_t idx = 0; idx < total; ++idx) secrets[idx] = kernels::pack(unrank_suited(idx, n, suit_count));
  std::vector<kernels::Packed> guesses(total, kernels::pack(SuitedPermutation::identity(n, suit_count)));
  std::vector<std::uint8_t> masks(total);
  const std::uint8_t full = static_cast<std::uint8_t>((1u << n) - 1u);

  const int max_rounds = default_max_rounds(n, suit_count);
  RoundDistribution dist{n, suit_count, std::vector<std::uint64_t>(max_rounds + 1, 0)};
  for (int round = 1; !secrets.empty(); ++round) {
    if (round > max_rounds) throw std::logic_error("Cycle exceeded s*n rounds");
    kernels::match_masks_pairwise(guesses, secrets, n, std::span(masks).first(secrets.size()));
    std::size_t kept = 0;
    for (std::size_t k = 0; k < secrets.size(); ++k) {
      if (masks[k] == full) {
        ++dist.counts[round];
        continue;
      }
      secrets[kept] = secrets[k];
      guesses[kept] = packed_cycle_step(guesses[k], static_cast<std::uint8_t>(~masks[k] & full), suit_count);
      ++kept;
    }
    secrets.resize(kept);
    guesses.resize(kept);
  }
  while (dist.counts.size() > 1 && dist.counts.back() == 0) dist.counts.pop_back();
  return dist;
}

FeedbackSet right_set(const Permutation& guess, const Permutation& secret) {
  if (guess.size() != secret.size()) throw std::invalid_argument("right_set: length mismatch");
  const Permutation g_inv = guess.inverse();
  const Permutation s_inv = secret.inverse();
  std::vector<int> values;
  for (int i = 1; i <= guess.size(); ++i) {
    if (g_inv(i) > s_inv(i)) values.push_back(i);
  }
  return FeedbackSet(guess.size(), std::move(values));
}

}  // namespace permwordle

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>

#include "permwordle/counting.hpp"
#include "permwordle/search.hpp"

using namespace permwordle;

namespace {

Members indices(const GameUniverse& u, const std::vector<Permutation>& perms) {
  Members out;
  for (const auto& p : perms) out.push_back(static_cast<std::uint16_t>(u.index_of(p)));
  std::sort(out.begin(), out.end());
  return out;
}

// Oracle: V(S, r) by the plain recursion over every guess, no
// canonicalization, no memo.
std::uint64_t brute_V(const GameUniverse& u, const Members& s, int r) {
  if (r == 0 || s.empty()) return 0;
  std::uint64_t best = 0;
  for (int g = 0; g < u.size(); ++g) {
    std::map<std::uint8_t, Members> classes;
    for (auto x : s) classes[u.feedback(g, x)].push_back(x);
    std::uint64_t v = 0;
    for (auto& [mask, cls] : classes) v += mask == u.full_mask() ? 1 : brute_V(u, cls, r - 1);
    best = std::max(best, v);
  }
  return best;
}

}  // namespace

TEST(Canonicalize, Singleton) {
  const auto c = canonicalize(std::vector<Permutation>{Permutation{3, 1, 2}});
  ASSERT_EQ(c.members.size(), 1u);
  EXPECT_TRUE(c.members[0].is_identity());
  EXPECT_THROW(canonicalize(std::vector<Permutation>{}), std::invalid_argument);
  EXPECT_THROW(canonicalize(std::vector<Permutation>{Permutation{1}, Permutation{2, 1}}), std::invalid_argument);
}

TEST(Canonicalize, TwoThreeCycles) {
  const std::vector<Permutation> s{Permutation{2, 3, 1}, Permutation{3, 1, 2}};
  // Both right translations by hand.
  std::vector<std::vector<Permutation>> candidates;
  for (const auto& g : s) {
    std::vector<Permutation> img;
    for (const auto& x : s) img.push_back(compose(x, g.inverse()));
    std::sort(img.begin(), img.end());
    candidates.push_back(img);
  }
  const auto expected = *std::min_element(candidates.begin(), candidates.end());
  const auto c = canonicalize(s);
  EXPECT_EQ(c.members, expected);
  EXPECT_EQ(c.members, (std::vector<Permutation>{Permutation{1, 2, 3}, Permutation{2, 3, 1}}));
}

TEST(Canonicalize, IndexedFormAgrees) {
  OptimalSearch search(4);
  const auto& u = search.universe();
  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    std::vector<Permutation> s;
    for (int k = 0; k < 1 + t % 7; ++k) s.push_back(u.element(static_cast<int>(rng() % 24)).values());
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    const auto direct = canonicalize(s);
    EXPECT_EQ(search.canonicalize(indices(u, s)), indices(u, direct.members));
  }
}

TEST(MaxSolved, SmallValues) {
  OptimalSearch s3(3), s4(4);
  const auto full3 = s3.universe().all_members();
  const auto full4 = s4.universe().all_members();
  EXPECT_EQ(s3.max_solved_within(full3, 0), 0u);
  EXPECT_EQ(s3.max_solved_within(full3, 1), 1u);
  EXPECT_EQ(s3.max_solved_within(full3, 2), 5u);
  EXPECT_EQ(s4.max_solved_within(full4, 2), 12u);
  EXPECT_EQ(s4.max_solved_within(full4, 3), 23u);
  EXPECT_EQ(s4.max_solved_within(full4, 4), 24u);
  EXPECT_EQ(s4.max_solved_within(full4, 9), 24u);
  EXPECT_THROW(s4.max_solved_within(full4, -1), std::invalid_argument);
  EXPECT_THROW(s4.max_solved_within(Members{}, 2), std::invalid_argument);
}

TEST(MaxSolved, BruteForceOracleOnRandomStates) {
  auto u = std::make_shared<const GameUniverse>(4, 1);
  OptimalSearch search(u);
  std::mt19937_64 rng(9);
  for (int t = 0; t < 25; ++t) {
    Members s = u->all_members();
    std::shuffle(s.begin(), s.end(), rng);
    s.resize(1 + t % 6);
    std::sort(s.begin(), s.end());
    for (int r = 0; r <= 3; ++r) EXPECT_EQ(search.max_solved_within(s, r), brute_V(*u, s, r));
  }
}

TEST(MaxSolved, TransparentToCanonicalizationAndMemo) {
  auto u = std::make_shared<const GameUniverse>(4, 1);
  OptimalSearch plain(u, SearchOptions{false, false, {}});
  OptimalSearch full(u);
  std::mt19937_64 rng(2);
  for (int t = 0; t < 10; ++t) {
    Members s = u->all_members();
    std::shuffle(s.begin(), s.end(), rng);
    s.resize(2 + t % 5);
    std::sort(s.begin(), s.end());
    EXPECT_EQ(plain.max_solved_profile(s, 5), full.max_solved_profile(s, 5));
    EXPECT_EQ(plain.min_expected_total(s), full.min_expected_total(s));
  }
  OptimalSearch no_memo(u, SearchOptions{true, false, {}});
  EXPECT_EQ(no_memo.max_solved_profile(u->all_members(), 4), full.max_solved_profile(u->all_members(), 4));
}

TEST(MaxSolved, TranslationInvariant) {
  auto u = std::make_shared<const GameUniverse>(4, 1);
  OptimalSearch search(u, SearchOptions{false, true, {}});
  const std::vector<Permutation> s{Permutation{2, 1, 4, 3}, Permutation{3, 4, 1, 2}, Permutation{1, 3, 2, 4}};
  const Permutation tau{4, 2, 3, 1};
  std::vector<Permutation> moved;
  for (const auto& x : s) moved.push_back(compose(x, tau));
  EXPECT_EQ(search.max_solved_profile(indices(*u, s), 4), search.max_solved_profile(indices(*u, moved), 4));
  EXPECT_EQ(search.min_expected_total(indices(*u, s)), search.min_expected_total(indices(*u, moved)));
}

TEST(ExpectedTotal, SmallValues) {
  OptimalSearch s3(3), s4(4);
  EXPECT_EQ(s3.min_expected_total(Members{0}), 1u);
  EXPECT_EQ(s3.min_expected_total(s3.universe().all_members()), 12u);
  EXPECT_EQ(s4.min_expected_total(s4.universe().all_members()), 60u);
  BigInt cycle = 0;
  for (int r = 0; r < 4; ++r) cycle += (r + 1) * eulerian_A(4, r);
  EXPECT_EQ(cycle, 60);
}

TEST(ExpectedTotal, BestGuessOnFullSetIsIdentity) {
  OptimalSearch s4(4);
  const auto choice = s4.best_guess(s4.universe().all_members());
  EXPECT_EQ(choice.guess, 0);
  EXPECT_EQ(choice.total, 60u);
}

TEST(Dominance, PlainSmallN) {
  for (int n = 2; n <= 4; ++n) {
    const auto r = dominance_report(n, n);
    EXPECT_TRUE(r.dominant) << "n=" << n;
    EXPECT_EQ(r.verdict(), "DOMINANT");
    EXPECT_EQ(r.optimal_cdf, r.cycle_cdf);
  }
  EXPECT_EQ(dominance_report(4, 4).optimal_cdf, (std::vector<std::uint64_t>{1, 12, 23, 24}));
  EXPECT_EQ(dominance_report(3, 3).optimal_cdf, (std::vector<std::uint64_t>{1, 5, 6}));
}

TEST(Dominance, Suited) {
  const auto a = dominance_report(2, 4, 2);
  EXPECT_TRUE(a.dominant);
  EXPECT_EQ(a.optimal_cdf, (std::vector<std::uint64_t>{1, 4, 7, 8}));
  EXPECT_TRUE(dominance_report(2, 6, 3).dominant);
  EXPECT_THROW(dominance_report(4, 8, 2), BudgetExceeded);
}

TEST(Budget, StateCapRefuses) {
  SearchOptions tight;
  tight.budget.max_states = 3;
  try {
    dominance_report(4, 4, 1, tight);
    FAIL() << "expected refusal";
  } catch (const SearchBudgetExceeded& e) {
    EXPECT_GT(e.stats().states_visited, 3u);
  }
  EXPECT_THROW(GameUniverse(7, 1), BudgetExceeded);
  EXPECT_THROW(GameUniverse(9, 1, 1u << 20), std::invalid_argument);
}

TEST(OptimalStrategy, SolvesEverySecretWithinTotal) {
  auto search = std::make_shared<OptimalSearch>(4);
  const OptimalStrategy strategy(search);
  std::uint64_t total = 0;
  for (const auto& s : all_permutations(4)) total += play(strategy, s, 5).rounds();
  EXPECT_EQ(total, 60u);
  EXPECT_TRUE(strategy.next_guess({}).is_identity());
}

TEST(OptimalStrategy, SuitedFirstGuess) {
  auto search = std::make_shared<OptimalSearch>(2, 2);
  const SuitedOptimalStrategy strategy(search);
  EXPECT_EQ(strategy.next_guess({}), SuitedPermutation::identity(2, 2));
  std::uint64_t total = 0;
  for (const auto& s : all_suited_permutations(2, 2)) total += play(strategy, s, 5).rounds();
  EXPECT_EQ(total, search->min_expected_total(search->universe().all_members()));
}

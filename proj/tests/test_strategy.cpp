#include <gtest/gtest.h>

#include <cstdlib>
#include <map>

#include "permwordle/strategy.hpp"

using namespace permwordle;

namespace {

const Permutation kSecret{7, 2, 4, 8, 5, 3, 1, 6, 9};

FeedbackSet fs(int n, std::vector<int> p) { return FeedbackSet(n, std::move(p)); }

// Oracle: counts of exceedances by direct scan.
std::map<int, std::uint64_t> exceedance_histogram(int n) {
  std::map<int, std::uint64_t> h;
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = i + 1;
  do {
    int e = 0;
    for (int i = 0; i < n; ++i) e += v[i] > i + 1;
    ++h[e];
  } while (std::next_permutation(v.begin(), v.end()));
  return h;
}

// Guesses that always miss, so the round budget trips.
class StubbornStrategy final : public PlainStrategy {
 public:
  explicit StubbornStrategy(Permutation g) : g_(std::move(g)) {}
  Permutation next_guess(std::span<const Step<Permutation>>) const override { return g_; }
  std::string name() const override { return "stubborn"; }

 private:
  Permutation g_;
};

}  // namespace

TEST(CycleNext, NineCardSteps) {
  EXPECT_EQ(cycle_next(Permutation::identity(9), fs(9, {2, 5, 9})), (Permutation{8, 2, 1, 3, 5, 4, 6, 7, 9}));
  EXPECT_EQ(cycle_next(Permutation{8, 2, 1, 3, 5, 4, 6, 7, 9}, fs(9, {2, 5, 9})),
            (Permutation{7, 2, 8, 1, 5, 3, 4, 6, 9}));
  EXPECT_EQ(cycle_next(Permutation{2, 1}, fs(2, {})), (Permutation{1, 2}));
}

TEST(CycleNext, RejectsFullAndMismatched) {
  EXPECT_THROW(cycle_next(Permutation::identity(3), FeedbackSet::full(3)), std::invalid_argument);
  EXPECT_THROW(cycle_next(Permutation::identity(3), fs(4, {})), std::invalid_argument);
  EXPECT_THROW(suited_cycle_next(SuitedPermutation::identity(2, 2), FeedbackSet::full(2)), std::invalid_argument);
}

TEST(SuitedCycleNext, Examples) {
  EXPECT_EQ(suited_cycle_next(SuitedPermutation({{0, 1}}, 2), fs(1, {})), SuitedPermutation({{1, 1}}, 2));
  EXPECT_EQ(suited_cycle_next(SuitedPermutation({{0, 1}, {0, 2}}, 2), fs(2, {})),
            SuitedPermutation({{1, 2}, {0, 1}}, 2));
  // Suit 0 decremented mod 3 wraps to 2.
  EXPECT_EQ(suited_cycle_next(SuitedPermutation({{0, 1}, {1, 2}, {0, 3}}, 3), fs(3, {2})),
            SuitedPermutation({{2, 3}, {1, 2}, {0, 1}}, 3));
}

TEST(SuitedCycleNext, OneSuitIsPlainCycle) {
  for (const auto& g : all_permutations(4)) {
    for (std::uint64_t mask = 0; mask < 15; ++mask) {
      const auto fb = FeedbackSet::from_mask(4, mask);
      EXPECT_EQ(suited_cycle_next(SuitedPermutation::from_plain(g), fb).values(), cycle_next(g, fb));
    }
  }
}

TEST(Play, NineCardGolden) {
  const auto t = play(CycleStrategy(9), kSecret, default_max_rounds(9));
  ASSERT_EQ(t.rounds(), 4);
  EXPECT_TRUE(t.solved());
  const std::vector<Permutation> rows{Permutation::identity(9), {8, 2, 1, 3, 5, 4, 6, 7, 9},
                                      {7, 2, 8, 1, 5, 3, 4, 6, 9}, kSecret};
  const std::vector<FeedbackSet> fbs{fs(9, {2, 5, 9}), fs(9, {2, 5, 9}), fs(9, {1, 2, 5, 6, 8, 9}),
                                     FeedbackSet::full(9)};
  for (int r = 0; r < 4; ++r) {
    EXPECT_EQ(t.steps[r].guess, rows[r]);
    EXPECT_EQ(t.steps[r].feedback, fbs[r]);
  }
}

TEST(Play, SmallCases) {
  EXPECT_EQ(play(CycleStrategy(5), Permutation::identity(5), 6).rounds(), 1);
  EXPECT_EQ(play(CycleStrategy(3), Permutation{2, 3, 1}, 4).rounds(), 3);
  EXPECT_THROW(play(CycleStrategy(3), Permutation{2, 3, 1}, 0), std::invalid_argument);
}

TEST(Play, BudgetCarriesPartialTranscript) {
  try {
    play(StubbornStrategy(Permutation{2, 1, 3}), Permutation{1, 2, 3}, 3);
    FAIL() << "expected a budget error";
  } catch (const RoundBudgetExceeded<Permutation>& e) {
    EXPECT_EQ(e.partial().rounds(), 3);
    EXPECT_FALSE(e.partial().solved());
    EXPECT_EQ(e.partial().steps[0].feedback, fs(3, {3}));
  }
}

TEST(Distribution, SmallRows) {
  EXPECT_EQ(round_distribution(3, CycleStrategy(3)).counts, (std::vector<std::uint64_t>{0, 1, 4, 1}));
  EXPECT_EQ(round_distribution(4, CycleStrategy(4)).counts, (std::vector<std::uint64_t>{0, 1, 11, 11, 1}));
  const auto d = round_distribution(2, 2, SuitedCycleStrategy(2, 2));
  EXPECT_EQ(d.counts, (std::vector<std::uint64_t>{0, 1, 3, 3, 1}));
  EXPECT_EQ(d.total(), 8u);
  EXPECT_EQ(d.cumulative(2), 4u);
}

TEST(Distribution, RoundsLawAgainstExceedanceOracle) {
  for (int n = 1; n <= 8; ++n) {
    const auto d = cycle_round_distribution(n);
    const auto h = exceedance_histogram(n);
    for (const auto& [k, count] : h) ASSERT_EQ(d.counts.at(k + 1), count) << "n=" << n << " k=" << k;
    ASSERT_EQ(2 * d.total_rounds(), static_cast<std::uint64_t>(n + 1) * d.total());
  }
}

TEST(Distribution, PackedAndPlayedAgree) {
  for (int s = 1; s <= 3; ++s) {
    for (int n = 1; n <= 4; ++n) {
      EXPECT_EQ(cycle_round_distribution(n, s), round_distribution(n, s, SuitedCycleStrategy(n, s)));
    }
  }
}

TEST(Distribution, IndependentOfWorkerCount) {
  const auto base = round_distribution(7, CycleStrategy(7));
  ::setenv("PERMWORDLE_THREADS", "1", 1);
  const auto one = round_distribution(7, CycleStrategy(7));
  ::setenv("PERMWORDLE_THREADS", "3", 1);
  const auto three = round_distribution(7, CycleStrategy(7));
  ::unsetenv("PERMWORDLE_THREADS");
  EXPECT_EQ(base, one);
  EXPECT_EQ(base, three);
}

TEST(Distribution, Budget) {
  EXPECT_THROW(round_distribution(9, CycleStrategy(9), 1000), BudgetExceeded);
  EXPECT_THROW(cycle_round_distribution(6, 2, 1000), BudgetExceeded);
}

TEST(RightSet, Examples) {
  EXPECT_TRUE(right_set(kSecret, kSecret).empty());
  EXPECT_EQ(right_set(Permutation::identity(9), kSecret), fs(9, {4, 7, 8}));
  EXPECT_THROW(right_set(Permutation::identity(2), Permutation::identity(3)), std::invalid_argument);
}

TEST(RightSet, ShrinksByOnePerRound) {
  for (int n = 1; n <= 6; ++n) {
    for (const auto& s : all_permutations(n)) {
      const auto t = play(CycleStrategy(n), s, default_max_rounds(n));
      // R_1 mapped through secret^{-1} gives the exceedance positions.
      const auto first = right_set(t.steps[0].guess, s);
      std::vector<int> mapped;
      for (int v : first.positions()) mapped.push_back(s.inverse()(v));
      ASSERT_EQ(FeedbackSet(n, mapped), exceedance_set(s));
      for (int k = 0; k + 1 < t.rounds(); ++k) {
        ASSERT_EQ(right_set(t.steps[k + 1].guess, s).size(), right_set(t.steps[k].guess, s).size() - 1);
      }
    }
  }
}

TEST(SuitedPlay, TransferToLift) {
  for (int s = 1; s <= 3; ++s) {
    for (int n = 1; n <= 4; ++n) {
      for (const auto& t : all_suited_permutations(n, s)) {
        const auto suited = play(SuitedCycleStrategy(n, s), t, default_max_rounds(n, s));
        const auto plain = play(CycleStrategy(s * n), phi(t), default_max_rounds(s * n));
        ASSERT_EQ(suited.rounds(), plain.rounds());
        ASSERT_EQ(suited.rounds(), 1 + exceedances(phi(t)));
        for (int r = 0; r < suited.rounds(); ++r) ASSERT_EQ(phi(suited.steps[r].guess), plain.steps[r].guess);
      }
    }
  }
}

TEST(SuitedPlay, FirstGuessAllSuitZero) {
  const auto g = SuitedCycleStrategy(3, 2).next_guess({});
  EXPECT_EQ(g, SuitedPermutation({{0, 1}, {0, 2}, {0, 3}}, 2));
}

TEST(Relabel, FeedbackSequencePreserved) {
  const CycleStrategy cycle(5);
  const Permutation tau{3, 5, 1, 2, 4};
  const RelabeledStrategy moved(cycle, tau);
  for (const auto& s : all_permutations(5)) {
    const auto a = play(cycle, s, 6);
    const auto b = play(moved, compose(tau, s), 6);
    ASSERT_EQ(a.rounds(), b.rounds());
    for (int r = 0; r < a.rounds(); ++r) {
      ASSERT_EQ(a.steps[r].feedback, b.steps[r].feedback);
      ASSERT_EQ(b.steps[r].guess, compose(tau, a.steps[r].guess));
    }
  }
}

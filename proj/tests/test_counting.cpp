#include <gtest/gtest.h>

#include "permwordle/counting.hpp"
#include "permwordle/permutation.hpp"
#include "permwordle/strategy.hpp"

using namespace permwordle;

namespace {

std::vector<BigInt> row(TableKind kind, int s, int n) {
  const auto t = count_table(kind, s, n);
  return t->row(n).values;
}

std::vector<BigInt> big(std::initializer_list<long long> v) {
  std::vector<BigInt> out;
  for (long long x : v) out.emplace_back(x);
  return out;
}

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt b = 1;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

// Oracle for C_s: direct enumeration of pot fillings.
BigInt pebble_brute(int s, int n, int j) {
  std::vector<int> pots(n, 0);
  BigInt count = 0;
  for (;;) {
    int sum = 0;
    for (int p : pots) sum += p;
    count += sum == j;
    int i = 0;
    while (i < n && pots[i] == s - 1) pots[i++] = 0;
    if (i == n) break;
    ++pots[i];
  }
  return count;
}

}  // namespace

TEST(EulerianA, Rows) {
  EXPECT_EQ(row(TableKind::A, 1, 3), big({1, 4, 1}));
  EXPECT_EQ(row(TableKind::A, 1, 4), big({1, 11, 11, 1}));
  EXPECT_EQ(row(TableKind::A, 1, 5), big({1, 26, 66, 26, 1}));
  EXPECT_EQ(eulerian_A(0, 0), 1);
  EXPECT_EQ(eulerian_A(0, 1), 0);
  EXPECT_EQ(eulerian_A(4, -1), 0);
  EXPECT_EQ(eulerian_A(4, 4), 0);
}

TEST(EulerianA, BruteForceOracle) {
  for (int n = 1; n <= 8; ++n) {
    std::vector<BigInt> h(n, 0);
    for (const auto& p : all_permutations(n)) {
      int e = 0;
      for (int i = 1; i <= n; ++i) e += p(i) > i;
      h[e] += 1;
    }
    EXPECT_EQ(row(TableKind::A, 1, n), h) << "n=" << n;
  }
}

TEST(EulerianA, ExactBeyondSixtyFourBits) {
  BigInt sum = 0;
  for (int k = 0; k < 30; ++k) sum += eulerian_A(30, k);
  BigInt f = 1;
  for (int i = 2; i <= 30; ++i) f *= i;
  EXPECT_EQ(sum, f);
  EXPECT_EQ(eulerian_A(30, 1), power(2, 30) - 31);
}

TEST(EulerianB, Examples) {
  EXPECT_EQ(eulerian_B(1, 1), 1);
  EXPECT_EQ(eulerian_B(1, 0), 0);
  EXPECT_EQ(eulerian_B(1, 2), 0);
  EXPECT_EQ(eulerian_B(2, 1), 1);
  EXPECT_EQ(eulerian_B(2, 2), 1);
  EXPECT_EQ(eulerian_B(3, 2), 6);
}

TEST(SuitedD, Examples) {
  for (int n = 0; n <= 10; ++n) {
    for (int r = -1; r <= n; ++r) EXPECT_EQ(suited_count_D(1, n, r), eulerian_A(n, r));
  }
  EXPECT_EQ(row(TableKind::D, 2, 1), big({1, 1}));
  EXPECT_EQ(row(TableKind::D, 2, 2), big({1, 3, 3, 1}));
  EXPECT_EQ(suited_count_D(2, 0, 0), 1);
  EXPECT_EQ(suited_count_D(2, 0, 1), 0);
}

TEST(SuitedD, MatchesExhaustiveSimulation) {
  for (auto [s, n] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {2, 3}, {3, 2}, {3, 3}, {4, 2}}) {
    const auto d = round_distribution(n, s, SuitedCycleStrategy(n, s));
    for (int r = 0; r < s * n; ++r) EXPECT_EQ(suited_count_D(s, n, r), d.counts.at(r + 1)) << s << ' ' << n << ' ' << r;
  }
}

TEST(SuitedD, BTypeCrossCheck) {
  // F_2(2,1) = D_2(2,1) + D_2(2,2), both from simulation.
  const auto d = round_distribution(2, 2, SuitedCycleStrategy(2, 2));
  EXPECT_EQ(eulerian_B(3, 2), d.counts[2] + d.counts[3]);
}

TEST(WindowF, Examples) {
  EXPECT_EQ(window_sum_F(2, 1, 0), 2);
  EXPECT_EQ(window_sum_F(2, 1, 0), power(2, 1) * eulerian_A(1, 0));
  for (int s = 1; s <= 4; ++s) {
    for (int n = 0; n <= 12; ++n) {
      for (int k = 0; k < n; ++k) ASSERT_EQ(window_sum_F(s, n, s * k), power(s, n) * eulerian_A(n, k));
    }
  }
  for (int n = 0; n <= 12; ++n) {
    for (int k = 0; k <= n; ++k) ASSERT_EQ(window_sum_F(2, n, 2 * k - 1), eulerian_B(n + 1, k + 1));
  }
}

TEST(WindowF, RecurrenceAgreesWithDefinition) {
  for (int s = 1; s <= 4; ++s) EXPECT_TRUE(window_sum_divergences(s, 12).empty()) << "s=" << s;
  EXPECT_EQ(window_sum_F_recurrence(3, 0, -2), 1);
  EXPECT_EQ(window_sum_F_recurrence(3, 0, -3), 0);
}

TEST(PebbleC, Examples) {
  for (int n = 0; n <= 12; ++n) {
    for (int j = -1; j <= n + 1; ++j) ASSERT_EQ(pebble_count_C(2, n, j), binomial(n, j));
  }
  EXPECT_EQ(pebble_count_C(4, 0, 0), 1);
  EXPECT_EQ(pebble_count_C(4, 0, 1), 0);
  EXPECT_EQ(pebble_count_C(3, 2, 2), 3);
  for (int s = 1; s <= 4; ++s) {
    for (int n = 0; n <= 5; ++n) {
      for (int j = 0; j <= n * (s - 1); ++j) ASSERT_EQ(pebble_count_C(s, n, j), pebble_brute(s, n, j));
    }
  }
}

TEST(Convolution, Cases) {
  for (const auto& t : convolution_check(1, 6)) EXPECT_TRUE(t.ok());
  const auto two = convolution_check(2, 2);
  ASSERT_EQ(two.size(), 4u);
  EXPECT_EQ(two[1].lhs, 3);
  EXPECT_EQ(two[1].rhs, pebble_count_C(2, 2, 0) * eulerian_A(2, 1) + pebble_count_C(2, 2, 1) * eulerian_A(2, 0));
  for (int n = 0; n <= 6; ++n) {
    for (const auto& t : convolution_check(3, n)) EXPECT_TRUE(t.ok()) << "n=" << n << " k=" << t.k;
  }
}

TEST(Tables, RowSumsAndSymmetry) {
  for (int n = 0; n <= 15; ++n) {
    for (int s = 1; s <= 4; ++s) {
      BigInt d = 0, c = 0;
      for (const auto& v : row(TableKind::D, s, n)) d += v;
      for (const auto& v : row(TableKind::C, s, n)) c += v;
      EXPECT_EQ(d, power(s, n) * factorial(n));
      EXPECT_EQ(c, power(s, n));
      for (int r = 0; r < s * n; ++r) EXPECT_EQ(suited_count_D(s, n, r), suited_count_D(s, n, s * n - r - 1));
    }
  }
}

TEST(Tables, CacheGrowsAndStaysDeterministic) {
  const auto small = count_table(TableKind::D, 3, 4);
  const auto large = count_table(TableKind::D, 3, 9);
  EXPECT_GE(large->max_n(), 9);
  for (int n = 0; n <= 4; ++n) EXPECT_EQ(small->row(n).values, large->row(n).values);
  EXPECT_THROW(count_table(TableKind::A, 1, -1), std::invalid_argument);
  EXPECT_THROW(count_table(TableKind::D, 0, 3), std::invalid_argument);
}

TEST(Tables, ParseKind) {
  EXPECT_EQ(parse_table_kind("A"), TableKind::A);
  EXPECT_EQ(parse_table_kind("D_s"), TableKind::D);
  EXPECT_EQ(parse_table_kind("C"), TableKind::C);
  EXPECT_THROW(parse_table_kind("E"), std::invalid_argument);
  EXPECT_THROW(parse_table_kind(""), std::invalid_argument);
}

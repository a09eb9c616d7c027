#include <gtest/gtest.h>

#include "permwordle/verify.hpp"

using namespace permwordle;

TEST(Verify, EverySuitePasses) {
  const auto results = run_verification({});
  std::set<std::string> suites;
  for (const auto& r : results) {
    suites.insert(r.suite);
    EXPECT_TRUE(r.passed) << r.suite << '/' << r.name << ": " << r.detail;
  }
  EXPECT_EQ(suites, (std::set<std::string>{"perm-core", "strategy-engine", "combinatorics", "optimal-search"}));
}

TEST(Verify, SelectionAndSeeds) {
  const auto a = run_verification({{"perm-core"}, 7});
  const auto b = run_verification({{"perm-core"}, 7});
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].suite, "perm-core");
    EXPECT_EQ(a[i].name, b[i].name);
    EXPECT_EQ(a[i].passed, b[i].passed);
  }
  for (const auto& r : run_verification({{"optimal-search"}, 12345})) EXPECT_TRUE(r.passed) << r.name;
  EXPECT_THROW(run_verification({{"nonsense"}, 1}), std::invalid_argument);
}

#include "vigemin/oracle.hpp"

#include <gtest/gtest.h>

using namespace vigemin;

namespace {

Word W(const char* s) { return Word::parse(s); }

}  // namespace

TEST(BruteForcePi, Examples) {
  EXPECT_EQ(brute_force_pi(W("T"), W("A"), 3), 1u);
  // AAA, AAC, AAG, AAT, CAA, GAA, TAA.
  EXPECT_EQ(brute_force_pi(W("AA"), W("AA"), 3), 7u);
  for (std::uint64_t r = 0; r < 64; ++r) EXPECT_EQ(brute_force_pi(Word::from_rank(r, 3), W("CGT"), 3), 1u);
}

TEST(BruteForcePi, RefusesOverBudget) {
  EXPECT_THROW(brute_force_pi(W("AAA"), W("AAA"), 20), BudgetExceeded);
  EXPECT_THROW(brute_force_pi(W("AAA"), W("AAA"), 9, 1000), BudgetExceeded);
  try {
    brute_force_pi(W("AAA"), W("AAA"), 13);
  } catch (const BudgetExceeded& e) {
    EXPECT_NE(std::string(e.what()).find("4^13"), std::string::npos);
  }
}

TEST(BruteForceDistribution, Examples) {
  const auto lex = brute_force_distribution(1, W("A"), 2);
  EXPECT_EQ(lex.counts, (std::vector<BigCount>{7, 5, 3, 1}));
  EXPECT_EQ(lex.total, 16);

  const auto reversed = brute_force_distribution(1, W("T"), 2);
  EXPECT_EQ(reversed.counts, (std::vector<BigCount>{1, 3, 5, 7}));
}

TEST(BruteForceDistribution, MassIsAllKmers) {
  for (std::size_t m = 1; m <= 4; ++m) {
    for (std::size_t k = m; k <= 9; ++k) {
      const auto d = brute_force_distribution(m, alternating_key(m), k, kDefaultOracleBudget, 2);
      EXPECT_EQ(d.total, big_pow(4, k));
    }
  }
}

TEST(BruteForceDistribution, ParallelMatchesSerial) {
  const Word gamma = W("GAT");
  const auto serial = brute_force_distribution(3, gamma, 10, kDefaultOracleBudget, 1);
  const auto parallel = brute_force_distribution(3, gamma, 10, kDefaultOracleBudget, 4);
  EXPECT_EQ(serial.counts, parallel.counts);
}

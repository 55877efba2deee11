#include "vigemin/counting.hpp"
#include "vigemin/oracle.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace vigemin;

namespace {

Word W(const char* s) { return Word::parse(s); }

std::vector<Word> keys_for(std::size_t m, std::mt19937_64& rng, int random_keys) {
  std::vector<Word> keys{lexicographic_key(m), Word::repeat(3, m), alternating_key(m), antilexicographic_key(m)};
  for (int i = 0; i < random_keys; ++i) keys.push_back(ref::random_dna(rng, m));
  return keys;
}

}  // namespace

TEST(Pi, KEqualsMGivesOne) {
  std::mt19937_64 rng(1);
  for (int iter = 0; iter < 200; ++iter) {
    const std::size_t m = 1 + rng() % 12;
    EXPECT_EQ(pi(ref::random_dna(rng, m), ref::random_dna(rng, m), m).count, 1);
  }
}

TEST(Pi, SingleLetterClosedForm) {
  EXPECT_EQ(pi(W("A"), W("A"), 2).count, 7);
  for (std::size_t k = 1; k <= 60; ++k) {
    const BigCount expected = big_pow(4, k) - big_pow(3, k);
    EXPECT_EQ(pi(W("A"), W("A"), k).count, expected) << "k=" << k;
    BigCount decomposition = 0;
    for (std::size_t beta = 0; beta < k; ++beta) decomposition += big_pow(3, k - 1 - beta) * big_pow(4, beta);
    EXPECT_EQ(decomposition, expected);
    EXPECT_EQ(pi(W("T"), W("A"), k).count, 1);
  }
}

TEST(Pi, Errors) {
  EXPECT_THROW(pi(W("AA"), W("AA"), 1), std::invalid_argument);
  EXPECT_THROW(pi(W("AA"), W("A"), 4), std::invalid_argument);
  EXPECT_THROW(pi(W(""), W(""), 4), std::invalid_argument);
}

TEST(Pi, MatchesBruteForce) {
  std::mt19937_64 rng(2);
  for (std::size_t m = 1; m <= 3; ++m) {
    for (const Word& gamma : keys_for(m, rng, 3)) {
      for (std::size_t k = m; k <= 10; ++k) {
        const auto oracle = detail::brute_force_counts(gamma, k, kDefaultOracleBudget, 1);
        for (std::uint64_t rank = 0; rank < oracle.size(); ++rank) {
          const Word w = Word::from_rank(rank, m);
          ASSERT_EQ(pi(w, gamma, k).count, oracle[rank]) << "w=" << w.str() << " gamma=" << gamma.str() << " k=" << k;
        }
      }
    }
  }
}

TEST(Pi, MatchesBruteForceBinaryAndWideAlphabets) {
  std::mt19937_64 rng(3);
  for (unsigned bits : {1U, 3U}) {
    const Alphabet alphabet = Alphabet::with_bits(bits);
    const std::size_t max_k = bits == 1 ? 14 : 6;
    for (std::size_t m = 1; m <= (bits == 1 ? 6u : 3u); ++m) {
      for (int g = 0; g < 4; ++g) {
        const Word gamma = random_word(rng, m, alphabet);
        for (std::size_t k = m; k <= max_k; ++k) {
          const auto oracle = detail::brute_force_counts(gamma, k, kDefaultOracleBudget, 1);
          for (std::uint64_t rank = 0; rank < oracle.size(); ++rank) {
            const Word w = Word::from_rank(rank, m, alphabet);
            ASSERT_EQ(pi(w, gamma, k).count, oracle[rank]) << "w=" << w.str() << " gamma=" << gamma.str() << " k=" << k;
          }
        }
      }
    }
  }
}

TEST(Pi, PartitionOfAllKmers) {
  std::mt19937_64 rng(4);
  for (std::size_t m = 1; m <= 5; ++m) {
    for (int g = 0; g < 2; ++g) {
      const Word gamma = ref::random_dna(rng, m);
      for (std::size_t k : {m, m + 1, m + 4, std::size_t{14}}) {
        if (k < m) continue;
        BigCount total = 0;
        for (std::uint64_t rank = 0; rank < ref::ipow(4, m); ++rank) total += pi(Word::from_rank(rank, m), gamma, k).count;
        EXPECT_EQ(total, big_pow(4, k)) << "m=" << m << " k=" << k << " gamma=" << gamma.str();
      }
    }
  }
}

TEST(Pi, ConstantKeyConjugation) {
  // Oracle first: xor by c^m maps k-mers bijectively and commutes with windows.
  for (Letter c = 1; c < 4; ++c) {
    const Word key = Word::repeat(c, 2);
    const auto keyed = detail::brute_force_counts(key, 6, kDefaultOracleBudget, 1);
    const auto plain = detail::brute_force_counts(lexicographic_key(2), 6, kDefaultOracleBudget, 1);
    for (std::uint64_t rank = 0; rank < 16; ++rank) {
      const Word w = Word::from_rank(rank, 2);
      EXPECT_EQ(keyed[rank], plain[word_xor(w, key).rank()]);
    }
  }
  std::mt19937_64 rng(5);
  for (int iter = 0; iter < 300; ++iter) {
    const std::size_t m = 1 + rng() % 8;
    const std::size_t k = m + rng() % 20;
    const Word w = ref::random_dna(rng, m);
    const Word key = Word::repeat(static_cast<Letter>(rng() % 4), m);
    EXPECT_EQ(pi(w, key, k).count, pi(word_xor(w, key), lexicographic_key(m), k).count);
  }
}

TEST(Pi, GloballyMinimalWordCountsContainingKmers) {
  std::mt19937_64 rng(6);
  for (std::size_t m = 1; m <= 4; ++m) {
    for (int iter = 0; iter < 10; ++iter) {
      const Word gamma = ref::random_dna(rng, m);
      const Word w = gamma;  // w xor gamma = A^m
      for (std::size_t k = m; k <= 16; ++k) {
        EXPECT_EQ(pi(w, gamma, k).count, ref::containment_count(w, k)) << "w=" << w.str() << " k=" << k;
      }
    }
  }
}

TEST(Pi, FastPathAgreesWithUnboundedPath) {
  std::mt19937_64 rng(7);
  for (int iter = 0; iter < 300; ++iter) {
    const std::size_t m = 1 + rng() % 12;
    const std::size_t k = m + rng() % (31 - m + 1);
    const Context ctx(ref::random_dna(rng, m), ref::random_dna(rng, m));
    EXPECT_EQ(BigCount(count_vigemin_kmers<std::uint64_t>(ctx, k)), count_vigemin_kmers<BigCount>(ctx, k));
  }
}

TEST(Pi, BoundedByAllKmers) {
  std::mt19937_64 rng(8);
  for (int iter = 0; iter < 100; ++iter) {
    const std::size_t m = 1 + rng() % 10;
    const std::size_t k = m + rng() % 80;
    const auto r = pi(ref::random_dna(rng, m), ref::random_dna(rng, m), k);
    EXPECT_GE(r.count, 0);
    EXPECT_LE(r.count, big_pow(4, k));
  }
}

TEST(PiBatch, Examples) {
  EXPECT_TRUE(pi_batch({}, W("A"), 2).empty());

  const std::vector<Word> letters{W("A"), W("C"), W("G"), W("T")};
  const auto results = pi_batch(letters, W("A"), 2, 2);
  ASSERT_EQ(results.size(), 4u);
  const int expected[] = {7, 5, 3, 1};
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(results[i].w, letters[i]);
    EXPECT_EQ(results[i].count, expected[i]);
  }
}

TEST(PiBatch, EqualsIndependentCalls) {
  std::mt19937_64 rng(9);
  const Word gamma = ref::random_dna(rng, 4);
  std::vector<Word> ws;
  for (int i = 0; i < 100; ++i) ws.push_back(ref::random_dna(rng, 4));
  const auto batch = pi_batch(ws, gamma, 12, 4);
  for (std::size_t i = 0; i < ws.size(); ++i) EXPECT_EQ(batch[i].count, pi(ws[i], gamma, 12).count);
}

TEST(PiBatch, ReportsOffendingIndex) {
  const std::vector<Word> ws{W("AC"), W("GT"), W("A")};
  try {
    pi_batch(ws, W("AA"), 5);
    FAIL() << "expected BatchError";
  } catch (const BatchError& e) {
    EXPECT_EQ(e.index, 2u);
  }
}

TEST(Instrumentation, CountsGrowLinearlyInK) {
  std::mt19937_64 rng(10);
  for (int iter = 0; iter < 10; ++iter) {
    const Word w = ref::random_dna(rng, 8);
    const Word gamma = ref::random_dna(rng, 8);
    OpCounter small, large;
    pi(w, gamma, 32, &small);
    pi(w, gamma, 64, &large);
    EXPECT_LE(static_cast<double>(large.ops) / static_cast<double>(small.ops), 2.0 * 1.3);
  }
}

#include "vigemin/empirical.hpp"
#include "vigemin/oracle.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

using namespace vigemin;

namespace {

Word W(const char* s) { return Word::parse(s); }

std::vector<SequenceRecord> parse(const std::string& text) {
  std::istringstream in(text);
  return read_fasta(in);
}

std::vector<SequenceRecord> single(const char* seq) { return {{"r", {W(seq)}}}; }

}  // namespace

TEST(Fasta, Examples) {
  const auto one = parse(">r1\nACGT\n");
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].id, "r1");
  ASSERT_EQ(one[0].segments.size(), 1u);
  EXPECT_EQ(one[0].segments[0], W("ACGT"));

  const auto split = parse(">r1\nACNGT\n");
  ASSERT_EQ(split[0].segments.size(), 2u);
  EXPECT_EQ(split[0].segments[0], W("AC"));
  EXPECT_EQ(split[0].segments[1], W("GT"));

  EXPECT_TRUE(parse("").empty());
}

TEST(Fasta, MultiLineLowercaseAndCrlf) {
  const auto records = parse(">a desc\r\nacg\r\nTT\n\n>b\nGG\n");
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[0].id, "a");
  ASSERT_EQ(records[0].segments.size(), 1u);
  EXPECT_EQ(records[0].segments[0], W("ACGTT"));
  EXPECT_EQ(records[1].segments[0], W("GG"));
}

TEST(Fasta, DataBeforeHeader) {
  try {
    parse("\nACGT\n>r\n");
    FAIL() << "expected FastaParseError";
  } catch (const FastaParseError& e) {
    EXPECT_EQ(e.line, 2u);
  }
}

TEST(Buckets, Examples) {
  const auto aaaa = bucket_histogram(single("AAAA"), 1, 2, W("A"));
  EXPECT_EQ(aaaa.counts.size(), 1u);
  EXPECT_EQ(aaaa.at(0), 1u);
  EXPECT_EQ(aaaa.distinct_kmers, 1u);

  const auto acgt = bucket_histogram(single("ACGT"), 2, 3, W("AA"));
  EXPECT_EQ(acgt.counts.size(), 2u);
  EXPECT_EQ(acgt.at(W("AC").rank()), 1u);
  EXPECT_EQ(acgt.at(W("CG").rank()), 1u);

  const auto dup = bucket_histogram(single("AAAAA"), 1, 2, W("A"));
  EXPECT_EQ(dup.at(0), 1u);
  EXPECT_EQ(dup.distinct_kmers, 1u);
}

TEST(Buckets, SplitSegmentsYieldOnlyTheirKmers) {
  const auto records = parse(">r\nACNGT\n");
  const auto b = bucket_histogram(records, 1, 2, W("A"));
  EXPECT_EQ(b.distinct_kmers, 2u);
  EXPECT_EQ(b.at(W("A").rank()), 1u);
  EXPECT_EQ(b.at(W("G").rank()), 1u);
}

TEST(Buckets, DeduplicatesAcrossRecordsAndWideK) {
  const std::vector<SequenceRecord> twice{{"a", {W("ACGTACGTAC")}}, {"b", {W("ACGTACGTAC")}}};
  EXPECT_EQ(bucket_histogram(twice, 2, 4, W("AA")).distinct_kmers, 4u);

  std::mt19937_64 rng(3);
  const Word seq = ref::random_dna(rng, 300);
  const std::vector<SequenceRecord> records{{"a", {seq}}, {"b", {seq}}};
  const auto wide = bucket_histogram(records, 3, 40, W("CAT"));
  EXPECT_EQ(wide.distinct_kmers, 300u - 40 + 1);
}

TEST(Streaming, MatchesPerWindowScan) {
  std::mt19937_64 rng(4);
  for (int iter = 0; iter < 10000; ++iter) {
    const std::size_t len = 1 + rng() % 200;
    const std::size_t m = 1 + rng() % 6;
    const std::size_t k = m + rng() % 12;
    const Word seq = ref::random_dna(rng, len);
    const Word key = ref::random_dna(rng, m);
    std::size_t calls = 0;
    for_each_vigemin(seq.letters(), k, key.letters(), [&](std::size_t start, std::size_t pos) {
      ASSERT_EQ(start, calls);
      ASSERT_EQ(pos, start + detail::vigemin_position(seq.letters().subspan(start, k), key.letters()));
      ++calls;
    });
    EXPECT_EQ(calls, len >= k ? len - k + 1 : 0);
  }
}

TEST(Buckets, NeverExceedTheory) {
  std::mt19937_64 rng(5);
  const Word gamma = W("GTA");
  std::vector<SequenceRecord> records;
  for (int i = 0; i < 20; ++i) records.push_back({"r", {ref::random_dna(rng, 500)}});
  const auto b = bucket_histogram(records, 3, 8, gamma);
  const auto theory = brute_force_distribution(3, gamma, 8);
  std::uint64_t total = 0;
  for (const auto& [rank, count] : b.counts) {
    EXPECT_LE(BigCount(count), theory.counts[rank]);
    total += count;
  }
  EXPECT_EQ(total, b.distinct_kmers);
  EXPECT_NO_THROW(compare(theory, b));
}

TEST(Compare, CompleteInputGivesPerfectCorrelation) {
  const Word gamma = W("TA");
  std::vector<SequenceRecord> all;
  for (std::uint64_t r = 0; r < 256; ++r) all.push_back({"r", {Word::from_rank(r, 4)}});
  const auto b = bucket_histogram(all, 2, 4, gamma);
  const auto theory = brute_force_distribution(2, gamma, 4);
  const auto report = compare(theory, b, 5);
  ASSERT_TRUE(report.spearman.has_value());
  EXPECT_DOUBLE_EQ(*report.spearman, 1.0);
  EXPECT_EQ(report.rows.size(), 16u);
  EXPECT_EQ(report.most_divergent.size(), 5u);
  for (const auto& row : report.rows) EXPECT_EQ(BigCount(row.empirical), row.theoretical);

  std::ostringstream os;
  write_report_csv(report, os);
  EXPECT_EQ(os.str().substr(0, os.str().find('\n')), "mmer,theoretical,empirical");
}

TEST(Compare, EmptyInputHasNoCorrelation) {
  const auto report = compare(brute_force_distribution(2, W("AA"), 4), bucket_histogram({}, 2, 4, W("AA")));
  EXPECT_FALSE(report.spearman.has_value());
  EXPECT_TRUE(report.most_divergent.empty());
}

TEST(Compare, Errors) {
  const auto b = bucket_histogram(single("ACGTT"), 2, 4, W("AA"));
  EXPECT_THROW(compare(brute_force_distribution(2, W("AA"), 5), b), std::invalid_argument);
  EXPECT_THROW(compare(brute_force_distribution(2, W("AC"), 4), b), std::invalid_argument);

  auto inflated = b;
  inflated.counts[W("TT").rank()] = 5;
  EXPECT_THROW(compare(brute_force_distribution(2, W("AA"), 4), inflated), InvariantViolation);

  EXPECT_THROW(bucket_histogram(single("ACGT"), 3, 2, W("AAA")), std::invalid_argument);
}

TEST(Spearman, TiesAndReversal) {
  EXPECT_DOUBLE_EQ(*spearman({1, 2, 3, 4}, {40, 30, 20, 10}), -1.0);
  EXPECT_DOUBLE_EQ(*spearman({1, 1, 2}, {5, 5, 9}), 1.0);
  EXPECT_FALSE(spearman({1, 1, 1}, {1, 2, 3}).has_value());
}

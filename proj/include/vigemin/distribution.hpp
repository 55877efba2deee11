#pragma once

#include "vigemin/count.hpp"
#include "vigemin/counting.hpp"
#include "vigemin/parallel.hpp"
#include "vigemin/word.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace vigemin {

// Bucket sizes for every m-mer, indexed by the lexicographic rank of the raw
// (not xored) m-mer.
struct Distribution {
  std::size_t m = 0;
  std::size_t k = 0;
  Word gamma;
  std::vector<BigCount> counts;
  BigCount total = 0;

  const Alphabet& alphabet() const noexcept { return gamma.alphabet(); }
  Word mmer(std::size_t rank) const { return Word::from_rank(rank, m, alphabet()); }
};

struct DistributionStats {
  BigCount max;
  BigCount min;
  std::size_t empty_buckets = 0;
  BigCount balanced_line;  // |Sigma|^(k-m)
};

struct Bucket {
  Word mmer;
  BigCount count;
};

// Raised when a computed distribution does not partition Sigma^k.
struct InvariantViolation : std::logic_error {
  using std::logic_error::logic_error;
};

namespace detail {

inline std::size_t mmer_count(const Alphabet& alphabet, std::size_t m) {
  if (m * alphabet.bits() > 40) throw std::length_error("too many m-mers to enumerate densely");
  return std::size_t{1} << (m * alphabet.bits());
}

}  // namespace detail

inline Distribution enumerate_all(std::size_t m, const Word& gamma, std::size_t k, unsigned threads = 0) {
  if (gamma.size() != m) throw std::invalid_argument("|gamma| != m");
  if (m == 0) throw std::invalid_argument("m must be at least 1");
  if (k < m) throw std::invalid_argument("k < m");
  const Alphabet alphabet = gamma.alphabet();
  const std::size_t n = detail::mmer_count(alphabet, m);

  Distribution d{m, k, gamma, std::vector<BigCount>(n), 0};
  if (k * alphabet.bits() < 64) {
    std::vector<std::uint64_t> fast(n);
    parallel_for(n, threads, [&](std::size_t rank) {
      fast[rank] = count_vigemin_kmers<std::uint64_t>(Context(Word::from_rank(rank, m, alphabet), gamma), k);
    }, 256);
    for (std::size_t rank = 0; rank < n; ++rank) d.counts[rank] = fast[rank];
  } else {
    parallel_for(n, threads, [&](std::size_t rank) {
      d.counts[rank] = count_vigemin_kmers<BigCount>(Context(Word::from_rank(rank, m, alphabet), gamma), k);
    }, 16);
  }
  d.total = std::accumulate(d.counts.begin(), d.counts.end(), BigCount(0));

  const BigCount expected = big_pow(alphabet.size(), k);
  if (d.total != expected) {
    throw InvariantViolation("distribution total " + d.total.str() + " != |Sigma|^k = " + expected.str() +
                             " (difference " + BigCount(d.total - expected).str() + ")");
  }
  return d;
}

inline DistributionStats stats(const Distribution& d) {
  if (d.counts.empty()) throw std::invalid_argument("empty distribution");
  DistributionStats s;
  s.max = *std::max_element(d.counts.begin(), d.counts.end());
  s.min = *std::min_element(d.counts.begin(), d.counts.end());
  s.empty_buckets = static_cast<std::size_t>(std::count(d.counts.begin(), d.counts.end(), BigCount(0)));
  s.balanced_line = big_pow(d.alphabet().size(), d.k - d.m);
  return s;
}

// Decreasing bucket size; ties keep ascending m-mer rank.
inline std::vector<Bucket> sort_desc(const Distribution& d) {
  std::vector<std::size_t> order(d.counts.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return d.counts[x] > d.counts[y]; });
  std::vector<Bucket> out;
  out.reserve(order.size());
  for (std::size_t rank : order) out.push_back({d.mmer(rank), d.counts[rank]});
  return out;
}

// CSV: "mmer,count" rows in lexicographic m-mer order.
inline void write_csv(const Distribution& d, std::ostream& os) {
  os << "mmer,count\n";
  for (std::size_t rank = 0; rank < d.counts.size(); ++rank) os << d.mmer(rank).str() << ',' << d.counts[rank] << '\n';
}

// CSV: "rank,mmer,count" with 1-based rank in sorted order.
inline void write_sorted_csv(const std::vector<Bucket>& sorted, std::ostream& os) {
  os << "rank,mmer,count\n";
  for (std::size_t i = 0; i < sorted.size(); ++i) os << i + 1 << ',' << sorted[i].mmer.str() << ',' << sorted[i].count << '\n';
}

namespace detail {

template <typename Writer>
void write_file(const std::string& path, Writer&& writer) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  writer(out);
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace detail

inline void write_csv(const Distribution& d, const std::string& path) {
  detail::write_file(path, [&](std::ostream& os) { write_csv(d, os); });
}

inline void write_sorted_csv(const std::vector<Bucket>& sorted, const std::string& path) {
  detail::write_file(path, [&](std::ostream& os) { write_sorted_csv(sorted, os); });
}

// Reads a "mmer,count" CSV back into dense counts indexed by m-mer rank.
inline std::vector<BigCount> read_counts_csv(std::istream& in, const Alphabet& alphabet, std::size_t m) {
  std::vector<BigCount> counts(detail::mmer_count(alphabet, m));
  std::vector<bool> seen(counts.size(), false);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1) {
      if (line != "mmer,count") throw std::runtime_error("expected header 'mmer,count'");
      continue;
    }
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::runtime_error("line " + std::to_string(line_no) + ": missing comma");
    const Word w = Word::parse(std::string_view(line).substr(0, comma), alphabet);
    if (w.size() != m) throw std::runtime_error("line " + std::to_string(line_no) + ": m-mer length != " + std::to_string(m));
    const std::string digits = line.substr(comma + 1);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": bad count '" + digits + "'");
    }
    const std::uint64_t rank = w.rank();
    if (seen[rank]) throw std::runtime_error("line " + std::to_string(line_no) + ": duplicate m-mer " + w.str());
    seen[rank] = true;
    counts[rank] = BigCount(digits);
  }
  if (line_no == 0) throw std::runtime_error("empty CSV");
  return counts;
}

inline std::vector<BigCount> read_counts_csv(const std::string& path, const Alphabet& alphabet, std::size_t m) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_counts_csv(in, alphabet, m);
}

}  // namespace vigemin

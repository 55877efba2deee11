#pragma once

#include "vigemin/count.hpp"
#include "vigemin/distribution.hpp"
#include "vigemin/parallel.hpp"
#include "vigemin/word.hpp"

#include <cstddef>
#include <cstdint>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace vigemin {

inline constexpr std::uint64_t kDefaultOracleBudget = std::uint64_t{1} << 24;  // 4^12

struct BudgetExceeded : std::length_error {
  using std::length_error::length_error;
};

namespace detail {

inline std::uint64_t checked_space(const Alphabet& alphabet, std::size_t k, std::uint64_t budget) {
  if (k * alphabet.bits() >= 63 || (std::uint64_t{1} << (k * alphabet.bits())) > budget) {
    throw BudgetExceeded("refusing to enumerate |Sigma|^k = " + std::to_string(alphabet.size()) + "^" +
                         std::to_string(k) + " k-mers (budget " + std::to_string(budget) + ")");
  }
  return std::uint64_t{1} << (k * alphabet.bits());
}

// Enumerates every packed k-mer and tallies its vigemin. Packing is
// big-endian so integer order on windows is lexicographic order.
inline std::vector<std::uint64_t> brute_force_counts(const Word& gamma, std::size_t k, std::uint64_t budget,
                                                     unsigned threads) {
  const Alphabet alphabet = gamma.alphabet();
  const std::size_t m = gamma.size();
  if (m == 0 || k < m) throw std::invalid_argument("oracle needs 1 <= m <= k");
  const std::uint64_t space = checked_space(alphabet, k, budget);
  const unsigned bits = alphabet.bits();
  const std::uint64_t mask = (std::uint64_t{1} << (m * bits)) - 1;
  const std::uint64_t key = gamma.rank();
  const std::size_t windows = k - m + 1;

  std::vector<std::uint64_t> counts(std::size_t{1} << (m * bits), 0);
  std::mutex merge;
  const std::uint64_t block = std::uint64_t{1} << 16;
  const std::size_t blocks = static_cast<std::size_t>((space + block - 1) / block);
  parallel_for(blocks, threads, [&](std::size_t b) {
    std::vector<std::uint64_t> local(counts.size(), 0);
    const std::uint64_t end = std::min(space, (b + 1) * block);
    for (std::uint64_t x = b * block; x < end; ++x) {
      std::uint64_t best_window = 0;
      std::uint64_t best_value = ~std::uint64_t{0};
      for (std::size_t p = 0; p < windows; ++p) {
        const std::uint64_t window = (x >> ((windows - 1 - p) * bits)) & mask;
        const std::uint64_t value = window ^ key;
        if (value < best_value) {
          best_value = value;
          best_window = window;
        }
      }
      ++local[best_window];
    }
    std::lock_guard lock(merge);
    for (std::size_t i = 0; i < local.size(); ++i) counts[i] += local[i];
  }, 1);
  return counts;
}

}  // namespace detail

// Number of x in Sigma^k with vigemin(x) == w, by exhaustive enumeration.
inline std::uint64_t brute_force_pi(const Word& w, const Word& gamma, std::size_t k,
                                    std::uint64_t budget = kDefaultOracleBudget, unsigned threads = 1) {
  if (w.size() != gamma.size()) throw std::invalid_argument("|w| != |gamma|");
  return detail::brute_force_counts(gamma, k, budget, threads)[w.rank()];
}

inline Distribution brute_force_distribution(std::size_t m, const Word& gamma, std::size_t k,
                                             std::uint64_t budget = kDefaultOracleBudget, unsigned threads = 1) {
  if (gamma.size() != m) throw std::invalid_argument("|gamma| != m");
  const auto raw = detail::brute_force_counts(gamma, k, budget, threads);
  Distribution d{m, k, gamma, std::vector<BigCount>(raw.begin(), raw.end()), 0};
  for (const auto& c : d.counts) d.total += c;
  return d;
}

}  // namespace vigemin

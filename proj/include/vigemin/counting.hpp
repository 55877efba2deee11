#pragma once

#include "vigemin/antemers.hpp"
#include "vigemin/count.hpp"
#include "vigemin/parallel.hpp"
#include "vigemin/postmers.hpp"
#include "vigemin/precompute.hpp"

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace vigemin {

// pi = sum over beta = 0..beta_max of A(k - m - beta) * P_m(beta + m).
template <typename Count>
Count count_vigemin_kmers(const Context& ctx, std::size_t k, OpCounter* counter = nullptr) {
  using Ops = CountOps<Count>;
  const std::size_t m = ctx.m();
  if (k < m) throw std::invalid_argument("k < m");
  const std::size_t beta_max = ctx.beta_max(k);
  const auto antemers = compute_antemers<Count>(ctx, k - m, counter);
  const auto postmers = compute_postmers<Count>(ctx, m + beta_max, counter);
  Count sum(0);
  for (std::size_t beta = 0; beta <= beta_max; ++beta) {
    tick(counter);
    const Count a = antemers.total(static_cast<std::ptrdiff_t>(k - m - beta));
    const Count p = postmers.at(m, static_cast<std::ptrdiff_t>(beta + m));
    Ops::add(sum, Ops::mul(a, p));
  }
  return sum;
}

// Exact count through the checked 64-bit path when |Sigma|^k fits, otherwise
// (or on overflow) through unbounded integers.
inline BigCount count_vigemin_kmers(const Context& ctx, std::size_t k, OpCounter* counter = nullptr) {
  if (k * ctx.alphabet().bits() < 64) {
    try {
      return BigCount(count_vigemin_kmers<std::uint64_t>(ctx, k, counter));
    } catch (const CountOverflow&) {
    }
  }
  return count_vigemin_kmers<BigCount>(ctx, k, counter);
}

struct PiResult {
  Word w;
  Word gamma;
  std::size_t k;
  BigCount count;
};

// Number of k-mers whose vigemin under key gamma is w.
inline PiResult pi(const Word& w, const Word& gamma, std::size_t k, OpCounter* counter = nullptr) {
  if (w.size() != gamma.size()) throw std::invalid_argument("|w| != |gamma|");
  if (k < w.size()) throw std::invalid_argument("k < m");
  const Context ctx(w, gamma, counter);
  return {w, gamma, k, count_vigemin_kmers(ctx, k, counter)};
}

struct BatchError : std::invalid_argument {
  BatchError(std::size_t index, const std::string& what)
      : std::invalid_argument("entry " + std::to_string(index) + ": " + what), index(index) {}
  std::size_t index;
};

// Independent pi calls, possibly concurrent; output order matches input order.
inline std::vector<PiResult> pi_batch(std::span<const Word> ws, const Word& gamma, std::size_t k,
                                      unsigned threads = 0) {
  for (std::size_t idx = 0; idx < ws.size(); ++idx) {
    if (ws[idx].size() != gamma.size()) throw BatchError(idx, "|w| != |gamma|");
    if (!(ws[idx].alphabet() == gamma.alphabet())) throw BatchError(idx, "alphabet mismatch");
    if (k < ws[idx].size()) throw BatchError(idx, "k < m");
  }
  std::vector<BigCount> counts(ws.size());
  parallel_for(ws.size(), threads, [&](std::size_t idx) {
    try {
      counts[idx] = count_vigemin_kmers(Context(ws[idx], gamma), k);
    } catch (const std::exception& e) {
      throw BatchError(idx, e.what());
    }
  }, 4);
  std::vector<PiResult> out;
  out.reserve(ws.size());
  for (std::size_t idx = 0; idx < ws.size(); ++idx) out.push_back({ws[idx], gamma, k, std::move(counts[idx])});
  return out;
}

}  // namespace vigemin

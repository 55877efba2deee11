#pragma once

#include "vigemin/count.hpp"
#include "vigemin/precompute.hpp"

#include <algorithm>
#include <bit>
#include <cstddef>
#include <vector>

namespace vigemin {

// P_i(beta): postmers of size beta whose longest common prefix with w has
// size i, for 0 <= i <= m. Out-of-range arguments read as zero.
template <typename Count>
class PostmerTable {
 public:
  PostmerTable(std::size_t m, std::size_t beta_target)
      : rows_(m + 1), beta_target_(beta_target), values_(rows_ * (beta_target + 1), Count(0)),
        totals_(beta_target + 1, Count(0)) {}

  std::size_t beta_target() const noexcept { return beta_target_; }

  Count at(std::size_t i, std::ptrdiff_t beta) const {
    if (beta < 0 || i >= rows_ || static_cast<std::size_t>(beta) > beta_target_) return Count(0);
    return values_[cell(i, static_cast<std::size_t>(beta))];
  }

  // P(beta); P(negative) = 0.
  Count total(std::ptrdiff_t beta) const {
    if (beta < 0 || static_cast<std::size_t>(beta) > beta_target_) return Count(0);
    return totals_[static_cast<std::size_t>(beta)];
  }

  Count& ref(std::size_t i, std::size_t beta) { return values_[cell(i, beta)]; }
  Count& total_ref(std::size_t beta) { return totals_[beta]; }

 private:
  std::size_t cell(std::size_t i, std::size_t beta) const noexcept { return beta * rows_ + i; }

  std::size_t rows_;
  std::size_t beta_target_;
  std::vector<Count> values_;
  std::vector<Count> totals_;
};

template <typename Count = BigCount>
PostmerTable<Count> compute_postmers(const Context& ctx, std::size_t beta_target, OpCounter* counter = nullptr) {
  using Ops = CountOps<Count>;
  const std::size_t m = ctx.m();
  const std::size_t q = ctx.q();
  PostmerTable<Count> table(m, beta_target);

  // Sum of P_{i'}(beta') for i' in [from, to].
  auto row_sum = [&](Count& acc, std::size_t from, std::size_t to, std::ptrdiff_t beta) {
    for (std::size_t ip = from; ip <= to; ++ip) {
      tick(counter);
      Ops::add(acc, table.at(ip, beta));
    }
  };

  for (std::size_t beta = 0; beta <= beta_target; ++beta) {
    const auto b = static_cast<std::ptrdiff_t>(beta);
    if (beta == 0) {
      table.ref(0, 0) = Count(1);
    } else if (beta < m) {
      // No window fits yet: only the prefix bookkeeping matters.
      tick(counter);
      table.ref(0, beta) = Ops::mul(table.total(b - 1), q - 1);
      table.ref(beta, beta) = Count(1);
      for (std::size_t i = 1; i < beta; ++i) {
        const SplitAlphabet& split = ctx.d_alphabets(i);
        tick(counter);
        Count value = Ops::mul(table.total(b - static_cast<std::ptrdiff_t>(i + 1)), set_size(split.zero));
        for (LetterSet rest = split.nonzero; rest != 0; rest &= rest - 1) {
          const std::size_t t = ctx.T(i, static_cast<Letter>(std::countr_zero(rest)));
          const std::size_t shorter = beta + 1 - t;
          row_sum(value, i + 2 - t, std::min(shorter, m), static_cast<std::ptrdiff_t>(shorter));
        }
        table.ref(i, beta) = value;
      }
    } else if (beta == m) {
      tick(counter);
      table.ref(0, m) = Ops::mul(table.total(b - 1), set_size(ctx.sigma(1)));
      Count free_tail(1);
      for (std::size_t i = m - 1; i >= 1; --i) {
        tick(counter);
        table.ref(i, m) = Ops::mul(free_tail, set_size(ctx.sigma(i + 1)));
        free_tail = Ops::mul(free_tail, q);
      }
      table.ref(m, m) = Count(1);
    } else {
      tick(counter);
      table.ref(0, beta) = Ops::mul(table.total(b - 1), set_size(ctx.sigma(1)));
      for (std::size_t i = 1; i <= m; ++i) {
        if (beta >= ctx.postmer_zero_from(i)) continue;
        const SplitAlphabet split = ctx.sigma_P(i, beta, counter);
        Count value = Ops::mul(table.total(b - static_cast<std::ptrdiff_t>(i + 1)), set_size(split.zero));
        for (LetterSet rest = split.nonzero; rest != 0; rest &= rest - 1) {
          const std::size_t t = ctx.t_tilde(i, static_cast<Letter>(std::countr_zero(rest)), beta);
          row_sum(value, i + 2 - t, m, static_cast<std::ptrdiff_t>(beta + 1 - t));
        }
        table.ref(i, beta) = value;
      }
    }

    Count sum(0);
    for (std::size_t i = 0; i <= m; ++i) {
      tick(counter);
      Ops::add(sum, table.at(i, b));
    }
    table.total_ref(beta) = sum;
  }
  return table;
}

}  // namespace vigemin

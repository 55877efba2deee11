#pragma once

#include "vigemin/count.hpp"
#include "vigemin/precompute.hpp"

#include <bit>
#include <cstddef>
#include <vector>

namespace vigemin {

// A_i(alpha): antemers of size alpha whose longest common prefix with w has
// size i, for 0 <= i <= i_max. Out-of-range arguments read as zero.
template <typename Count>
class AntemerTable {
 public:
  AntemerTable(std::size_t rows, std::size_t alpha_target)
      : rows_(rows), alpha_target_(alpha_target), values_(rows * (alpha_target + 1), Count(0)),
        totals_(alpha_target + 1, Count(0)) {}

  std::size_t alpha_target() const noexcept { return alpha_target_; }
  std::size_t rows() const noexcept { return rows_; }

  Count at(std::size_t i, std::ptrdiff_t alpha) const {
    if (alpha < 0 || i >= rows_ || static_cast<std::size_t>(alpha) > alpha_target_) return Count(0);
    return values_[cell(i, static_cast<std::size_t>(alpha))];
  }

  // A(alpha); A(negative) = 0.
  Count total(std::ptrdiff_t alpha) const {
    if (alpha < 0 || static_cast<std::size_t>(alpha) > alpha_target_) return Count(0);
    return totals_[static_cast<std::size_t>(alpha)];
  }

  Count& ref(std::size_t i, std::size_t alpha) { return values_[cell(i, alpha)]; }
  Count& total_ref(std::size_t alpha) { return totals_[alpha]; }

 private:
  std::size_t cell(std::size_t i, std::size_t alpha) const noexcept { return alpha * rows_ + i; }

  std::size_t rows_;
  std::size_t alpha_target_;
  std::vector<Count> values_;
  std::vector<Count> totals_;
};

// Fills the table column by column in alpha. Every recursive reference points
// to a strictly smaller alpha, since T_i(a) >= 2 whenever it is nonzero.
template <typename Count = BigCount>
AntemerTable<Count> compute_antemers(const Context& ctx, std::size_t alpha_target, OpCounter* counter = nullptr) {
  using Ops = CountOps<Count>;
  const std::size_t i_max = ctx.i_max();
  const auto& r = ctx.R();
  AntemerTable<Count> table(i_max + 1, alpha_target);
  const std::size_t sigma1 = set_size(ctx.sigma(1));

  for (std::size_t alpha = 0; alpha <= alpha_target; ++alpha) {
    const auto a = static_cast<std::ptrdiff_t>(alpha);
    if (alpha == 0) {
      table.ref(0, 0) = Count(1);
    } else {
      tick(counter);
      table.ref(0, alpha) = Ops::mul(table.total(a - 1), sigma1);
    }

    if (alpha >= 1 && alpha <= i_max) {
      bool exists = true;
      for (std::size_t j = 1; j <= alpha && exists; ++j) {
        tick(counter);
        const Cmp c = r(alpha, j);
        exists = c == Cmp::gt || (c == Cmp::eq && ctx.S(alpha - j));
      }
      table.ref(alpha, alpha) = Count(exists ? 1 : 0);
    }

    const std::size_t upper = std::min(alpha, i_max + 1);
    for (std::size_t i = 1; i < upper; ++i) {
      const SplitAlphabet& split = ctx.antemer_alphabets(i);
      tick(counter);
      Count value = Ops::mul(table.total(a - static_cast<std::ptrdiff_t>(i + 1)), set_size(split.zero));
      for (LetterSet rest = split.nonzero; rest != 0; rest &= rest - 1) {
        const auto letter = static_cast<Letter>(std::countr_zero(rest));
        const std::size_t t = ctx.T(i, letter);
        const std::ptrdiff_t shorter = a - static_cast<std::ptrdiff_t>(t) + 1;
        for (std::size_t ip = i + 2 - t; ip <= i_max; ++ip) {
          tick(counter);
          Ops::add(value, table.at(ip, shorter));
        }
      }
      table.ref(i, alpha) = value;
    }

    Count sum(0);
    for (std::size_t i = 0; i <= i_max; ++i) {
      tick(counter);
      Ops::add(sum, table.at(i, a));
    }
    table.total_ref(alpha) = sum;
  }
  return table;
}

}  // namespace vigemin

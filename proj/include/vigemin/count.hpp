#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace vigemin {

// Exact, unbounded nonnegative count.
using BigCount = boost::multiprecision::cpp_int;

struct CountOverflow : std::overflow_error {
  using std::overflow_error::overflow_error;
};

// Arithmetic used by the counting tables. The 64-bit specialisation checks
// every operation and throws CountOverflow instead of wrapping.
template <typename Count>
struct CountOps {
  static void add(Count& acc, const Count& x) { acc += x; }
  static Count mul(const Count& x, std::uint64_t n) { return x * n; }
  static Count mul(const Count& x, const Count& y) { return x * y; }
};

template <>
struct CountOps<std::uint64_t> {
  static void add(std::uint64_t& acc, std::uint64_t x) {
    if (__builtin_add_overflow(acc, x, &acc)) throw CountOverflow("count exceeds 64 bits");
  }
  static std::uint64_t mul(std::uint64_t x, std::uint64_t n) {
    std::uint64_t out;
    if (__builtin_mul_overflow(x, n, &out)) throw CountOverflow("count exceeds 64 bits");
    return out;
  }
};

template <typename Count>
BigCount to_big(const Count& x) {
  return BigCount(x);
}

inline BigCount big_pow(std::uint64_t base, std::uint64_t exponent) {
  return boost::multiprecision::pow(BigCount(base), static_cast<unsigned>(exponent));
}

// Natural log of a positive count, exact in the exponent for huge values.
inline double log_count(const BigCount& x) {
  if (x <= 0) throw std::domain_error("log of non-positive count");
  const std::size_t bits = boost::multiprecision::msb(x) + 1;
  if (bits <= 1000) return std::log(x.convert_to<double>());
  const std::size_t shift = bits - 64;
  const BigCount top = x >> shift;
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

inline std::string to_string(const BigCount& x) { return x.str(); }

}  // namespace vigemin

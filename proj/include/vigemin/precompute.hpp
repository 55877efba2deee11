#pragma once

#include "vigemin/word.hpp"

#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace vigemin {

// Elementary-step counter for complexity measurements. Passing nullptr
// everywhere disables instrumentation.
struct OpCounter {
  std::uint64_t ops = 0;
};

inline void tick(OpCounter* counter, std::uint64_t n = 1) noexcept {
  if (counter) counter->ops += n;
}

inline std::size_t set_size(LetterSet s) noexcept { return static_cast<std::size_t>(std::popcount(s)); }
constexpr LetterSet singleton(Letter a) noexcept { return LetterSet{1} << a; }
constexpr bool contains(LetterSet s, Letter a) noexcept { return (s >> a) & 1U; }

// Lower-triangular sign matrix; R(i, j) compares the substring a_j..a_i against
// the prefix a_1..a_{i-j+1}, both xored with c_1..c_{i-j+1}. 1-based indices.
class AutocorrelationMatrix {
 public:
  AutocorrelationMatrix() = default;
  explicit AutocorrelationMatrix(std::size_t m) : m_(m), cells_(m * (m + 1) / 2, Cmp::eq) {}

  std::size_t order() const noexcept { return m_; }

  Cmp operator()(std::size_t i, std::size_t j) const {
    assert(1 <= j && j <= i && i <= m_);
    return cells_[index(i, j)];
  }
  Cmp& operator()(std::size_t i, std::size_t j) {
    assert(1 <= j && j <= i && i <= m_);
    return cells_[index(i, j)];
  }

 private:
  static std::size_t index(std::size_t i, std::size_t j) noexcept { return (i - 1) * i / 2 + (j - 1); }

  std::size_t m_ = 0;
  std::vector<Cmp> cells_;
};

namespace detail {

inline void check_key(const Word& w, const Word& gamma) {
  if (w.size() != gamma.size()) throw std::invalid_argument("|w| != |gamma|");
  if (w.empty()) throw std::invalid_argument("m must be at least 1");
  if (!(w.alphabet() == gamma.alphabet())) throw std::invalid_argument("w and gamma use different alphabets");
}

}  // namespace detail

// Each cell is derived from the cell above it in O(1): once the comparison is
// decided by a shorter prefix, extending both sides cannot change it.
inline AutocorrelationMatrix build_autocorrelation(const Word& w, const Word& gamma, OpCounter* counter = nullptr) {
  detail::check_key(w, gamma);
  const std::size_t m = w.size();
  AutocorrelationMatrix r(m);
  for (std::size_t i = 1; i <= m; ++i) {
    for (std::size_t j = 1; j <= i; ++j) {
      tick(counter);
      if (j < i && r(i - 1, j) != Cmp::eq) {
        r(i, j) = r(i - 1, j);
        continue;
      }
      // New last position i-j+1 of the compared pair: a_i vs a_{i-j+1}, key c_{i-j+1}.
      const std::size_t p = i - j + 1;
      const Letter lhs = letter_xor(w[i - 1], gamma[p - 1]);
      const Letter rhs = letter_xor(w[p - 1], gamma[p - 1]);
      r(i, j) = lhs < rhs ? Cmp::lt : (lhs > rhs ? Cmp::gt : Cmp::eq);
    }
  }
  return r;
}

inline std::size_t compute_i_max(const AutocorrelationMatrix& r) {
  const std::size_t m = r.order();
  for (std::size_t i = 2; i + 1 <= m; ++i) {
    for (std::size_t j = 2; j <= i; ++j) {
      if (r(i, j) == Cmp::lt) return i - 1;
    }
  }
  return m - 1;
}

inline std::size_t compute_beta_max(const AutocorrelationMatrix& r, std::size_t k) {
  const std::size_t m = r.order();
  if (k < m) throw std::invalid_argument("k < m");
  for (std::size_t j = 2; j <= m; ++j) {
    if (r(m, j) == Cmp::lt) return std::min(j - 2, k - m);
  }
  return k - m;
}

// Sigma_i = letters a with (a xor c_i) > (a_i xor c_i), for i = 1..m; index m+1
// holds the full alphabet and index 0 is unused.
inline std::vector<LetterSet> specialized_alphabets(const Word& w, const Word& gamma, OpCounter* counter = nullptr) {
  detail::check_key(w, gamma);
  const std::size_t m = w.size();
  const std::size_t q = w.alphabet().size();
  std::vector<LetterSet> sigma(m + 2, 0);
  for (std::size_t i = 1; i <= m; ++i) {
    const Letter pivot = letter_xor(w[i - 1], gamma[i - 1]);
    for (std::size_t a = 0; a < q; ++a) {
      tick(counter);
      if (letter_xor(static_cast<Letter>(a), gamma[i - 1]) > pivot) sigma[i] |= singleton(static_cast<Letter>(a));
    }
  }
  sigma[m + 1] = w.alphabet().full_set();
  return sigma;
}

// S_l for l = 0..count-1: is (a_1..a_{m-l-1}) xor (c_{l+2}..c_m) strictly greater
// than (a_{l+2}..a_m) xor (c_{l+2}..c_m)?
inline std::vector<bool> compute_S(const Word& w, const Word& gamma, std::size_t count, OpCounter* counter = nullptr) {
  detail::check_key(w, gamma);
  const std::size_t m = w.size();
  if (count > 0 && count > m - 1) throw std::out_of_range("S_l requested beyond l = m-2");
  std::vector<bool> s(count, false);
  const auto a = w.letters();
  const auto c = gamma.letters();
  for (std::size_t l = 0; l < count; ++l) {
    const std::size_t len = m - l - 1;
    Cmp res = Cmp::eq;
    for (std::size_t t = 0; t < len && res == Cmp::eq; ++t) {
      tick(counter);
      const Letter key = c[l + 1 + t];
      const Letter lhs = letter_xor(a[t], key);
      const Letter rhs = letter_xor(a[l + 1 + t], key);
      if (lhs != rhs) res = lhs > rhs ? Cmp::gt : Cmp::lt;
    }
    s[l] = res == Cmp::gt;
  }
  return s;
}

// T_i(a) for i = 1..m, stored row-wise with |Sigma| entries per row (row 0 unused).
class PrefixLetterVectors {
 public:
  PrefixLetterVectors() = default;
  PrefixLetterVectors(std::size_t m, std::size_t q) : q_(q), values_((m + 1) * q, 0) {}

  std::uint32_t operator()(std::size_t i, Letter a) const { return values_[i * q_ + a]; }
  std::uint32_t& operator()(std::size_t i, Letter a) { return values_[i * q_ + a]; }

 private:
  std::size_t q_ = 0;
  std::vector<std::uint32_t> values_;
};

inline PrefixLetterVectors prefix_letter_vectors(const AutocorrelationMatrix& r, const Word& w,
                                                 OpCounter* counter = nullptr) {
  const std::size_t m = w.size();
  const std::size_t q = w.alphabet().size();
  PrefixLetterVectors t(m, q);
  t(1, w[0]) = 2;
  for (std::size_t i = 2; i <= m; ++i) {
    for (std::size_t j = 2; j <= i; ++j) {
      tick(counter);
      if (r(i, j) != Cmp::eq) continue;
      const Letter a = w[i - j + 1];  // a_{i-j+2}
      if (t(i, a) == 0) t(i, a) = static_cast<std::uint32_t>(j);
    }
    if (t(i, w[0]) == 0) t(i, w[0]) = static_cast<std::uint32_t>(i + 1);
  }
  return t;
}

struct SplitAlphabet {
  LetterSet zero = 0;     // letters a with T(a) = 0
  LetterSet nonzero = 0;  // letters a with T(a) != 0

  LetterSet all() const noexcept { return zero | nonzero; }
  friend bool operator==(const SplitAlphabet&, const SplitAlphabet&) = default;
};

// Everything derived from (w, gamma) that the antemer and postmer recursions
// consume. Independent of k except for beta_max().
class Context {
 public:
  Context(const Word& w, const Word& gamma, OpCounter* counter = nullptr) : w_(w), gamma_(gamma) {
    detail::check_key(w, gamma);
    const std::size_t m = w.size();
    r_ = build_autocorrelation(w, gamma, counter);
    i_max_ = m == 1 ? 0 : compute_i_max(r_);
    sigma_ = specialized_alphabets(w, gamma, counter);
    s_ = compute_S(w, gamma, i_max_, counter);
    t_ = prefix_letter_vectors(r_, w, counter);

    antemer_.assign(i_max_ + 1, {});
    for (std::size_t i = 1; i <= i_max_; ++i) {
      LetterSet allowed = sigma_[i + 1] & (sigma_[1] | singleton(w[0]));
      for (std::size_t j = 2; j <= i; ++j) {
        tick(counter);
        if (r_(i, j) == Cmp::eq) allowed &= sigma_[i - j + 2] | singleton(w[i - j + 1]);
      }
      antemer_[i] = split(i, allowed, counter);
    }

    short_postmer_.assign(m, {});
    for (std::size_t i = 1; i < m; ++i) {
      short_postmer_[i] = split(i, w.alphabet().full_set() & ~singleton(w[i]), counter);
    }

    // Constraints on the postmer letter after a shared prefix of size i: l = 1
    // (window at i+1) and l = i-j+2 for every border j (R(i, j) is '='). Each one
    // applies only once its window fits, i.e. beta >= m + j - 1.
    constraints_.assign(m + 1, {});
    postmer_zero_from_.assign(m + 1, std::numeric_limits<std::size_t>::max());
    std::size_t zero_from = std::numeric_limits<std::size_t>::max();
    for (std::size_t i = 1; i <= m; ++i) {
      auto add = [&](std::size_t l, std::size_t window) {
        const Letter al = w[l - 1];
        constraints_[i].push_back({sigma_[l] | singleton(al), m + window - 1});
      };
      add(1, i + 1);
      for (std::size_t j = 2; j <= i; ++j) {
        tick(counter);
        if (r_(i, j) == Cmp::eq) add(i - j + 2, j);
        if (r_(i, j) == Cmp::lt) zero_from = std::min(zero_from, m + j - 1);
      }
      postmer_zero_from_[i] = zero_from;
    }
  }

  const Word& w() const noexcept { return w_; }
  const Word& gamma() const noexcept { return gamma_; }
  const Alphabet& alphabet() const noexcept { return w_.alphabet(); }
  std::size_t m() const noexcept { return w_.size(); }
  std::size_t q() const noexcept { return w_.alphabet().size(); }

  const AutocorrelationMatrix& R() const noexcept { return r_; }
  std::size_t i_max() const noexcept { return i_max_; }
  std::size_t beta_max(std::size_t k) const { return compute_beta_max(r_, k); }

  LetterSet sigma(std::size_t i) const { return sigma_.at(i); }

  bool S(std::size_t l) const {
    if (l >= s_.size()) throw std::out_of_range("S_l consulted outside 0..i_max-1");
    return s_[l];
  }

  std::uint32_t T(std::size_t i, Letter a) const { return t_(i, a); }

  // T~_i(a, beta) = T_i(a) * [beta >= m + T_i(a) - 1].
  std::uint32_t t_tilde(std::size_t i, Letter a, std::size_t beta) const {
    const std::uint32_t t = t_(i, a);
    return beta + 1 >= m() + t ? t : 0;
  }

  // Sigma_A^{=0}(i), Sigma_A^{!=0}(i) for 0 < i <= i_max.
  const SplitAlphabet& antemer_alphabets(std::size_t i) const {
    if (i == 0 || i > i_max_) throw std::out_of_range("antemer alphabets need 0 < i <= i_max");
    return antemer_[i];
  }

  // Sigma_D^{=0}(i), Sigma_D^{!=0}(i) for 0 < i < m.
  const SplitAlphabet& d_alphabets(std::size_t i) const {
    if (i == 0 || i >= m()) throw std::out_of_range("D alphabets need 0 < i < m");
    return short_postmer_[i];
  }

  // Sigma_P(i, beta) split by T~_i(a, beta) for beta > m, 1 <= i <= m.
  SplitAlphabet sigma_P(std::size_t i, std::size_t beta, OpCounter* counter = nullptr) const {
    if (i == 0 || i > m() || beta <= m()) throw std::out_of_range("sigma_P needs beta > m, 1 <= i <= m");
    LetterSet allowed = sigma_[i + 1];
    for (const auto& c : constraints_[i]) {
      tick(counter);
      if (beta >= c.active_from) allowed &= c.letters;
    }
    SplitAlphabet out;
    for (LetterSet rest = allowed; rest != 0; rest &= rest - 1) {
      tick(counter);
      const auto a = static_cast<Letter>(std::countr_zero(rest));
      (t_tilde(i, a, beta) == 0 ? out.zero : out.nonzero) |= singleton(a);
    }
    return out;
  }

  // Smallest beta from which P_i(beta) vanishes because some window of the
  // postmer falls strictly below w; max() when no such window exists.
  std::size_t postmer_zero_from(std::size_t i) const { return postmer_zero_from_.at(i); }

  void dump(std::ostream& os, std::optional<std::size_t> k = std::nullopt) const;

 private:
  struct Constraint {
    LetterSet letters;        // Sigma_l united with {a_l}
    std::size_t active_from;  // m + j - 1: the window at j fits in a postmer of this size
  };

  SplitAlphabet split(std::size_t i, LetterSet allowed, OpCounter* counter) const {
    SplitAlphabet out;
    for (std::size_t a = 0; a < q(); ++a) {
      tick(counter);
      if (!contains(allowed, static_cast<Letter>(a))) continue;
      (t_(i, static_cast<Letter>(a)) == 0 ? out.zero : out.nonzero) |= singleton(static_cast<Letter>(a));
    }
    return out;
  }

  Word w_;
  Word gamma_;
  AutocorrelationMatrix r_;
  std::size_t i_max_ = 0;
  std::vector<LetterSet> sigma_;
  std::vector<bool> s_;
  PrefixLetterVectors t_;
  std::vector<SplitAlphabet> antemer_;
  std::vector<SplitAlphabet> short_postmer_;
  std::vector<std::vector<Constraint>> constraints_;
  std::vector<std::size_t> postmer_zero_from_;
};

inline std::string format_set(LetterSet s, const Alphabet& alphabet) {
  std::string out = "{";
  for (std::size_t a = 0; a < alphabet.size(); ++a) {
    if (!contains(s, static_cast<Letter>(a))) continue;
    if (out.size() > 1) out += ',';
    out += alphabet.symbol(static_cast<Letter>(a));
  }
  return out + "}";
}

inline void Context::dump(std::ostream& os, std::optional<std::size_t> k) const {
  const std::size_t m = this->m();
  os << "w=" << w_.str() << " gamma=" << gamma_.str() << " m=" << m << '\n';
  os << "R:\n";
  for (std::size_t i = 1; i <= m; ++i) {
    os << "  ";
    for (std::size_t j = 1; j <= i; ++j) os << to_char(r_(i, j));
    os << '\n';
  }
  os << "i_max=" << i_max_ << '\n';
  if (k) os << "beta_max=" << beta_max(*k) << " (k=" << *k << ")\n";
  for (std::size_t i = 1; i <= m + 1; ++i) os << "Sigma_" << i << '=' << format_set(sigma_[i], alphabet()) << '\n';
  os << "S=";
  for (bool b : s_) os << (b ? '1' : '0');
  os << '\n';
  for (std::size_t i = 1; i <= m; ++i) {
    os << "T_" << i << ":";
    for (std::size_t a = 0; a < q(); ++a) os << ' ' << alphabet().symbol(static_cast<Letter>(a)) << '=' << t_(i, static_cast<Letter>(a));
    os << '\n';
  }
}

}  // namespace vigemin

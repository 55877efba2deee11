#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vigemin {

using Letter = std::uint8_t;

// Bitmask over the letters of an alphabet (|Sigma| <= 32).
using LetterSet = std::uint32_t;

enum class Cmp : std::int8_t { lt = -1, eq = 0, gt = 1 };

inline char to_char(Cmp c) {
  switch (c) {
    case Cmp::lt: return '<';
    case Cmp::eq: return '=';
    case Cmp::gt: return '>';
  }
  return '?';
}

// Power-of-two alphabet. Two bits per letter gives DNA (A,C,G,T = 0,1,2,3);
// every other width uses the digits-then-uppercase symbol table.
class Alphabet {
 public:
  static constexpr unsigned kMaxBits = 5;

  static Alphabet dna() { return Alphabet(2, true); }

  static Alphabet with_bits(unsigned bits) {
    if (bits == 0 || bits > kMaxBits) {
      throw std::invalid_argument("alphabet must have 1.." + std::to_string(kMaxBits) +
                                  " bits per letter, got " + std::to_string(bits));
    }
    return Alphabet(bits, false);
  }

  // Accepts "dna" or "b:<bits>".
  static Alphabet parse(std::string_view spec) {
    if (spec == "dna" || spec == "DNA") return dna();
    if (spec.size() > 2 && spec.substr(0, 2) == "b:") {
      unsigned bits = 0;
      for (char ch : spec.substr(2)) {
        if (ch < '0' || ch > '9') throw std::invalid_argument("bad alphabet spec: " + std::string(spec));
        bits = bits * 10 + static_cast<unsigned>(ch - '0');
        if (bits > 64) break;
      }
      if (bits == 2) return dna();
      return with_bits(bits);
    }
    throw std::invalid_argument("bad alphabet spec: " + std::string(spec));
  }

  unsigned bits() const noexcept { return bits_; }
  std::size_t size() const noexcept { return std::size_t{1} << bits_; }
  LetterSet full_set() const noexcept {
    return size() == 32 ? ~LetterSet{0} : (LetterSet{1} << size()) - 1;
  }
  bool is_dna() const noexcept { return dna_; }

  char symbol(Letter a) const { return symbols()[a]; }

  std::optional<Letter> letter(char ch) const noexcept {
    if (ch >= 'a' && ch <= 'z') ch = static_cast<char>(ch - 'a' + 'A');
    const std::string_view sym = symbols().substr(0, size());
    auto pos = sym.find(ch);
    if (pos == std::string_view::npos) return std::nullopt;
    return static_cast<Letter>(pos);
  }

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  Alphabet(unsigned bits, bool dna) : bits_(bits), dna_(dna) {}

  std::string_view symbols() const noexcept {
    return dna_ ? std::string_view("ACGT") : std::string_view("0123456789ABCDEFGHIJKLMNOPQRSTUV");
  }

  unsigned bits_;
  bool dna_;
};

class Word {
 public:
  Word() : alphabet_(Alphabet::dna()) {}
  explicit Word(Alphabet alphabet) : alphabet_(alphabet) {}

  Word(Alphabet alphabet, std::vector<Letter> letters) : alphabet_(alphabet), letters_(std::move(letters)) {
    for (Letter a : letters_) {
      if (a >= alphabet_.size()) throw std::invalid_argument("letter value out of alphabet range");
    }
  }

  static Word parse(std::string_view text, Alphabet alphabet = Alphabet::dna()) {
    std::vector<Letter> letters;
    letters.reserve(text.size());
    for (char ch : text) {
      auto a = alphabet.letter(ch);
      if (!a) throw std::invalid_argument("invalid letter '" + std::string(1, ch) + "' in \"" + std::string(text) + "\"");
      letters.push_back(*a);
    }
    return Word(alphabet, std::move(letters));
  }

  // Word of length m whose 0-based lexicographic rank is `rank`.
  static Word from_rank(std::uint64_t rank, std::size_t m, Alphabet alphabet = Alphabet::dna()) {
    std::vector<Letter> letters(m);
    const std::uint64_t mask = alphabet.size() - 1;
    for (std::size_t i = m; i-- > 0;) {
      letters[i] = static_cast<Letter>(rank & mask);
      rank >>= alphabet.bits();
    }
    return Word(alphabet, std::move(letters));
  }

  static Word repeat(Letter a, std::size_t n, Alphabet alphabet = Alphabet::dna()) {
    return Word(alphabet, std::vector<Letter>(n, a));
  }

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  std::span<const Letter> letters() const noexcept { return letters_; }

  // Lexicographic rank among words of the same length; requires size()*bits <= 64.
  std::uint64_t rank() const {
    if (size() * alphabet_.bits() > 64) throw std::length_error("word too long to rank in 64 bits");
    std::uint64_t r = 0;
    for (Letter a : letters_) r = (r << alphabet_.bits()) | a;
    return r;
  }

  std::string str() const {
    std::string out;
    out.reserve(size());
    for (Letter a : letters_) out.push_back(alphabet_.symbol(a));
    return out;
  }

  friend bool operator==(const Word& x, const Word& y) {
    return x.alphabet_ == y.alphabet_ && x.letters_ == y.letters_;
  }

 private:
  Alphabet alphabet_;
  std::vector<Letter> letters_;
};

constexpr Letter letter_xor(Letter a, Letter b) noexcept { return static_cast<Letter>(a ^ b); }

inline Word word_xor(const Word& x, const Word& y) {
  if (x.size() != y.size()) throw std::invalid_argument("word_xor: length mismatch");
  if (!(x.alphabet() == y.alphabet())) throw std::invalid_argument("word_xor: alphabet mismatch");
  std::vector<Letter> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = letter_xor(x[i], y[i]);
  return Word(x.alphabet(), std::move(out));
}

namespace detail {

inline Cmp from_ordering(std::strong_ordering o) noexcept {
  return o < 0 ? Cmp::lt : (o > 0 ? Cmp::gt : Cmp::eq);
}

// Compares (x xor key) against (y xor key) letter by letter; all spans share one length.
inline Cmp compare_keyed(std::span<const Letter> x, std::span<const Letter> y,
                         std::span<const Letter> key) noexcept {
  for (std::size_t i = 0; i < x.size(); ++i) {
    const Letter u = letter_xor(x[i], key[i]);
    const Letter v = letter_xor(y[i], key[i]);
    if (u != v) return u < v ? Cmp::lt : Cmp::gt;
  }
  return Cmp::eq;
}

}  // namespace detail

inline Cmp lex_compare(const Word& x, const Word& y) {
  if (x.size() != y.size()) throw std::invalid_argument("lex_compare: length mismatch");
  return detail::from_ordering(std::lexicographical_compare_three_way(
      x.letters().begin(), x.letters().end(), y.letters().begin(), y.letters().end()));
}

struct VigeminResult {
  std::size_t position;
  Word minimizer;
};

namespace detail {

// Start of the leftmost window of `x` minimal under xor with `key` (|key| = m).
inline std::size_t vigemin_position(std::span<const Letter> x, std::span<const Letter> key) {
  const std::size_t m = key.size();
  std::size_t best = 0;
  for (std::size_t p = 1; p + m <= x.size(); ++p) {
    if (compare_keyed(x.subspan(p, m), x.subspan(best, m), key) == Cmp::lt) best = p;
  }
  return best;
}

}  // namespace detail

// Leftmost m-mer of x whose xor with gamma is lexicographically minimal.
inline VigeminResult vigemin(const Word& x, std::size_t m, const Word& gamma) {
  if (gamma.size() != m) throw std::invalid_argument("vigemin: |gamma| != m");
  if (m == 0 || x.size() < m) throw std::invalid_argument("vigemin: |x| < m");
  const std::size_t pos = detail::vigemin_position(x.letters(), gamma.letters());
  auto first = x.letters().begin() + static_cast<std::ptrdiff_t>(pos);
  return {pos, Word(x.alphabet(), std::vector<Letter>(first, first + static_cast<std::ptrdiff_t>(m)))};
}

// Keys for the classic orders: lexicographic A^m, anti-lexicographic A T^(m-1),
// alternating (AT)^(m/2).
inline Word lexicographic_key(std::size_t m, Alphabet alphabet = Alphabet::dna()) {
  return Word::repeat(0, m, alphabet);
}

inline Word antilexicographic_key(std::size_t m, Alphabet alphabet = Alphabet::dna()) {
  std::vector<Letter> letters(m, static_cast<Letter>(alphabet.size() - 1));
  if (m > 0) letters[0] = 0;
  return Word(alphabet, std::move(letters));
}

inline Word alternating_key(std::size_t m, Alphabet alphabet = Alphabet::dna()) {
  std::vector<Letter> letters(m);
  for (std::size_t i = 0; i < m; ++i) letters[i] = i % 2 == 0 ? 0 : static_cast<Letter>(alphabet.size() - 1);
  return Word(alphabet, std::move(letters));
}

// Uniform random word; the first letters are taken from `prefix`. Uses the top
// bits of each draw so the output depends only on the engine's sequence.
template <typename Engine>
Word random_word(Engine& rng, std::size_t m, Alphabet alphabet = Alphabet::dna(), std::string_view prefix = {}) {
  Word fixed = Word::parse(prefix, alphabet);
  if (fixed.size() > m) throw std::invalid_argument("key prefix longer than m");
  std::vector<Letter> letters(fixed.letters().begin(), fixed.letters().end());
  while (letters.size() < m) letters.push_back(static_cast<Letter>(rng() >> (64 - alphabet.bits())));
  return Word(alphabet, std::move(letters));
}

}  // namespace vigemin

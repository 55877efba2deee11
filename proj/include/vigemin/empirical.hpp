#pragma once

#include "vigemin/count.hpp"
#include "vigemin/distribution.hpp"
#include "vigemin/word.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace vigemin {

// A FASTA record split into maximal runs of alphabet letters.
struct SequenceRecord {
  std::string id;
  std::vector<Word> segments;
};

struct FastaParseError : std::runtime_error {
  FastaParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
  std::size_t line;
};

class FastaReader {
 public:
  explicit FastaReader(std::istream& in, Alphabet alphabet = Alphabet::dna()) : in_(in), alphabet_(alphabet) {}

  std::optional<SequenceRecord> next() {
    std::string line;
    if (!pending_header_) {
      while (std::getline(in_, line)) {
        ++line_;
        strip(line);
        if (line.empty()) continue;
        if (line.front() != '>') throw FastaParseError(line_, "sequence data before the first '>' header");
        pending_header_ = line.substr(1);
        break;
      }
      if (!pending_header_) return std::nullopt;
    }

    SequenceRecord record;
    record.id = std::move(*pending_header_);
    pending_header_.reset();
    if (auto space = record.id.find_first_of(" \t"); space != std::string::npos) record.id.resize(space);

    std::vector<Letter> run;
    auto flush = [&] {
      if (!run.empty()) record.segments.emplace_back(alphabet_, std::move(run));
      run.clear();
    };
    while (std::getline(in_, line)) {
      ++line_;
      strip(line);
      if (!line.empty() && line.front() == '>') {
        pending_header_ = line.substr(1);
        break;
      }
      for (char ch : line) {
        if (auto a = alphabet_.letter(ch)) {
          run.push_back(*a);
        } else {
          flush();
        }
      }
    }
    flush();
    return record;
  }

 private:
  static void strip(std::string& line) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.pop_back();
  }

  std::istream& in_;
  Alphabet alphabet_;
  std::size_t line_ = 0;
  std::optional<std::string> pending_header_;
};

inline std::vector<SequenceRecord> read_fasta(std::istream& in, Alphabet alphabet = Alphabet::dna()) {
  FastaReader reader(in, alphabet);
  std::vector<SequenceRecord> out;
  while (auto rec = reader.next()) out.push_back(std::move(*rec));
  return out;
}

inline std::vector<SequenceRecord> read_fasta(const std::string& path, Alphabet alphabet = Alphabet::dna()) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_fasta(in, alphabet);
}

// Calls visit(start, vigemin_position) for every k-mer of seq, positions
// absolute. The current minimizer is kept while it stays inside the window;
// the window is rescanned only when it slides out.
template <typename Visitor>
void for_each_vigemin(std::span<const Letter> seq, std::size_t k, std::span<const Letter> key, Visitor&& visit) {
  const std::size_t m = key.size();
  if (m == 0 || k < m) throw std::invalid_argument("need 1 <= m <= k");
  if (seq.size() < k) return;
  std::size_t best = detail::vigemin_position(seq.subspan(0, k), key);
  visit(std::size_t{0}, best);
  for (std::size_t start = 1; start + k <= seq.size(); ++start) {
    if (best < start) {
      best = start + detail::vigemin_position(seq.subspan(start, k), key);
    } else {
      const std::size_t incoming = start + k - m;
      if (detail::compare_keyed(seq.subspan(incoming, m), seq.subspan(best, m), key) == Cmp::lt) best = incoming;
    }
    visit(start, best);
  }
}

// Number of distinct k-mers seen per vigemin, keyed by the m-mer's rank.
struct EmpiricalBuckets {
  std::size_t m = 0;
  std::size_t k = 0;
  Word gamma;
  std::unordered_map<std::uint64_t, std::uint64_t> counts;
  std::uint64_t distinct_kmers = 0;

  std::uint64_t at(std::uint64_t rank) const {
    auto it = counts.find(rank);
    return it == counts.end() ? 0 : it->second;
  }
};

inline EmpiricalBuckets bucket_histogram(std::span<const SequenceRecord> records, std::size_t m, std::size_t k,
                                         const Word& gamma) {
  if (gamma.size() != m) throw std::invalid_argument("|gamma| != m");
  if (m == 0 || k < m) throw std::invalid_argument("need 1 <= m <= k");
  const Alphabet alphabet = gamma.alphabet();
  if (m * alphabet.bits() > 64) throw std::invalid_argument("m too large to rank m-mers in 64 bits");
  const unsigned bits = alphabet.bits();
  const bool packed = k * bits <= 64;
  const std::uint64_t kmask = k * bits == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << (k * bits)) - 1;

  EmpiricalBuckets out{m, k, gamma, {}, 0};
  std::unordered_set<std::uint64_t> seen_packed;
  std::unordered_set<std::string> seen_wide;

  for (const auto& record : records) {
    for (const Word& segment : record.segments) {
      if (!(segment.alphabet() == alphabet)) throw std::invalid_argument("record alphabet differs from key alphabet");
      const auto seq = segment.letters();
      if (seq.size() < k) continue;
      std::uint64_t code = 0;
      for (std::size_t i = 0; i + 1 < k; ++i) code = (code << bits) | seq[i];
      for_each_vigemin(seq, k, gamma.letters(), [&](std::size_t start, std::size_t pos) {
        bool fresh;
        if (packed) {
          code = ((code << bits) | seq[start + k - 1]) & kmask;
          fresh = seen_packed.insert(code).second;
        } else {
          fresh = seen_wide.emplace(reinterpret_cast<const char*>(seq.data() + start), k).second;
        }
        if (!fresh) return;
        std::uint64_t rank = 0;
        for (std::size_t i = 0; i < m; ++i) rank = (rank << bits) | seq[pos + i];
        ++out.counts[rank];
        ++out.distinct_kmers;
      });
    }
  }
  return out;
}

struct ComparisonRow {
  Word mmer;
  BigCount theoretical;
  std::uint64_t empirical = 0;
};

struct ComparisonReport {
  std::optional<double> spearman;  // empty when undefined (no data or constant side)
  std::vector<ComparisonRow> rows;
  std::vector<ComparisonRow> most_divergent;
};

namespace detail {

// 1-based ranks with ties averaged.
template <typename T>
std::vector<double> fractional_ranks(const std::vector<T>& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = avg;
    i = j + 1;
  }
  return ranks;
}

inline std::optional<double> pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  if (x.size() < 2) return std::nullopt;
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0 || syy == 0) return std::nullopt;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace detail

inline std::optional<double> spearman(const std::vector<BigCount>& x, const std::vector<std::uint64_t>& y) {
  return detail::pearson(detail::fractional_ranks(x), detail::fractional_ranks(y));
}

// Rank correlation between theoretical and observed bucket sizes; the most
// divergent buckets are those whose shares of the respective totals differ most.
inline ComparisonReport compare(const Distribution& theoretical, const EmpiricalBuckets& empirical,
                                std::size_t top_n = 20) {
  if (theoretical.m != empirical.m || theoretical.k != empirical.k || !(theoretical.gamma == empirical.gamma)) {
    throw std::invalid_argument("theoretical and empirical parameters (m, k, gamma) differ");
  }
  const std::size_t n = theoretical.counts.size();
  std::vector<std::uint64_t> observed(n, 0);
  for (const auto& [rank, count] : empirical.counts) {
    if (rank >= n) throw std::invalid_argument("empirical m-mer rank out of range");
    observed[rank] = count;
  }

  ComparisonReport report;
  report.rows.reserve(n);
  for (std::size_t rank = 0; rank < n; ++rank) {
    if (BigCount(observed[rank]) > theoretical.counts[rank]) {
      throw InvariantViolation("empirical bucket " + theoretical.mmer(rank).str() + " (" +
                               std::to_string(observed[rank]) + ") exceeds pi = " + theoretical.counts[rank].str());
    }
    report.rows.push_back({theoretical.mmer(rank), theoretical.counts[rank], observed[rank]});
  }
  if (empirical.distinct_kmers == 0) return report;

  report.spearman = spearman(theoretical.counts, observed);

  const double theo_total = log_count(theoretical.total);
  const double emp_total = static_cast<double>(empirical.distinct_kmers);
  std::vector<std::pair<double, std::size_t>> divergence;
  divergence.reserve(n);
  for (std::size_t rank = 0; rank < n; ++rank) {
    const double theo_share =
        theoretical.counts[rank] == 0 ? 0.0 : std::exp(log_count(theoretical.counts[rank]) - theo_total);
    divergence.emplace_back(std::abs(static_cast<double>(observed[rank]) / emp_total - theo_share), rank);
  }
  const std::size_t take = std::min(top_n, n);
  std::partial_sort(divergence.begin(), divergence.begin() + static_cast<std::ptrdiff_t>(take), divergence.end(),
                    [](const auto& a, const auto& b) { return a.first > b.first || (a.first == b.first && a.second < b.second); });
  for (std::size_t i = 0; i < take; ++i) report.most_divergent.push_back(report.rows[divergence[i].second]);
  return report;
}

// CSV: "mmer,theoretical,empirical", one row per m-mer in lexicographic order.
inline void write_report_csv(const ComparisonReport& report, std::ostream& os) {
  os << "mmer,theoretical,empirical\n";
  for (const auto& row : report.rows) os << row.mmer.str() << ',' << row.theoretical << ',' << row.empirical << '\n';
}

}  // namespace vigemin

#include "vigemin/vigemin.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace {

using namespace vigemin;

constexpr int kExitInvariant = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct KeyOptions {
  std::string gamma;
  std::string order;
  std::string key_prefix;

  void attach(CLI::App* cmd) {
    cmd->add_option("--gamma", gamma, "key as a word over the alphabet");
    cmd->add_option("--order", order, "shorthand key: lex, antilex, alternating or random")
        ->check(CLI::IsMember({"lex", "antilex", "alternating", "random"}));
    cmd->add_option("--key-prefix", key_prefix, "fixed leading letters for --order random");
  }

  bool given() const { return !gamma.empty() || !order.empty(); }

  Word resolve(std::size_t m, const Alphabet& alphabet, std::mt19937_64& rng) const {
    if (!gamma.empty() && !order.empty()) throw UsageError("give either --gamma or --order, not both");
    if (!gamma.empty()) {
      Word key = Word::parse(gamma, alphabet);
      if (m != 0 && key.size() != m) throw UsageError("|gamma| = " + std::to_string(key.size()) + " but m = " + std::to_string(m));
      return key;
    }
    if (m == 0) throw UsageError("--order needs the key length (m)");
    if (order == "lex") return lexicographic_key(m, alphabet);
    if (order == "antilex") return antilexicographic_key(m, alphabet);
    if (order == "alternating") return alternating_key(m, alphabet);
    if (order == "random") return random_word(rng, m, alphabet, key_prefix);
    throw UsageError("a key is required: --gamma STR or --order NAME");
  }
};

struct Common {
  std::string alphabet = "dna";
  unsigned threads = 0;
  std::uint64_t seed = 42;

  Alphabet resolve_alphabet() const { return Alphabet::parse(alphabet); }
};

void write_output(const std::string& path, const std::function<void(std::ostream&)>& writer) {
  if (path.empty() || path == "-") {
    writer(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  writer(out);
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::pair<std::size_t, std::size_t> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("--fit-range expects LO:HI");
  try {
    const std::size_t lo = std::stoul(text.substr(0, colon));
    const std::size_t hi = std::stoul(text.substr(colon + 1));
    if (lo >= hi) throw UsageError("--fit-range needs LO < HI");
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw UsageError("--fit-range expects LO:HI");
  }
}

int run_pi(const Common& common, const std::string& w_text, const KeyOptions& key, std::size_t k, bool dump) {
  const Alphabet alphabet = common.resolve_alphabet();
  const Word w = Word::parse(w_text, alphabet);
  std::mt19937_64 rng(common.seed);
  const Word gamma = key.resolve(w.size(), alphabet, rng);
  if (k < w.size()) throw UsageError("k < m");
  if (dump) Context(w, gamma).dump(std::cerr, k);
  std::cout << pi(w, gamma, k).count << '\n';
  return 0;
}

int run_enumerate(const Common& common, std::size_t m, std::size_t k, const KeyOptions& key, const std::string& out,
                  bool sorted) {
  const Alphabet alphabet = common.resolve_alphabet();
  std::mt19937_64 rng(common.seed);
  const Word gamma = key.resolve(m, alphabet, rng);
  if (k < m) throw UsageError("k < m");
  const Distribution d = enumerate_all(m, gamma, k, common.threads);
  if (sorted) {
    const auto buckets = sort_desc(d);
    write_output(out, [&](std::ostream& os) { write_sorted_csv(buckets, os); });
  } else {
    write_output(out, [&](std::ostream& os) { write_csv(d, os); });
  }
  const DistributionStats s = stats(d);
  std::ostream& log = (out.empty() || out == "-") ? std::cerr : std::cout;
  log << "m=" << m << " k=" << k << " gamma=" << gamma.str() << " total=" << d.total << " balanced=" << s.balanced_line
      << " max=" << s.max << " min=" << s.min << " empty=" << s.empty_buckets << '\n';
  return 0;
}

int run_verify(const Common& common, std::size_t m, std::size_t k, const KeyOptions& key, std::size_t random_gammas,
               std::uint64_t budget) {
  const Alphabet alphabet = common.resolve_alphabet();
  if (k < m) throw UsageError("k < m");
  std::mt19937_64 rng(common.seed);
  std::vector<Word> keys;
  if (key.given()) keys.push_back(key.resolve(m, alphabet, rng));
  for (std::size_t i = 0; i < random_gammas; ++i) keys.push_back(random_word(rng, m, alphabet));
  if (keys.empty()) throw UsageError("give --gamma, --order or --random-gammas");

  bool all_ok = true;
  for (const Word& gamma : keys) {
    const Distribution oracle = brute_force_distribution(m, gamma, k, budget, common.threads);
    std::size_t agree = 0;
    for (std::size_t rank = 0; rank < oracle.counts.size(); ++rank) {
      const Word w = oracle.mmer(rank);
      const BigCount got = pi(w, gamma, k).count;
      if (got == oracle.counts[rank]) {
        ++agree;
      } else {
        std::cout << "MISMATCH gamma=" << gamma.str() << " w=" << w.str() << " dp=" << got
                  << " oracle=" << oracle.counts[rank] << '\n';
      }
    }
    const bool ok = agree == oracle.counts.size();
    all_ok = all_ok && ok;
    std::cout << (ok ? "OK " : "FAIL ") << agree << '/' << oracle.counts.size() << " m-mers gamma=" << gamma.str()
              << " m=" << m << " k=" << k << '\n';
  }
  return all_ok ? 0 : kExitInvariant;
}

int run_approx(const Common& common, const std::string& w_text, std::size_t random_count, const KeyOptions& key,
               std::size_t k, const std::string& range_text, bool exact, const std::string& out) {
  const Alphabet alphabet = common.resolve_alphabet();
  const auto [lo, hi] = parse_range(range_text);
  std::mt19937_64 rng(common.seed);

  std::vector<Word> ws;
  if (!w_text.empty()) ws.push_back(Word::parse(w_text, alphabet));
  const std::size_t m = !ws.empty() ? ws.front().size() : (key.gamma.empty() ? 0 : key.gamma.size());
  const Word gamma = key.resolve(m, alphabet, rng);
  for (std::size_t i = 0; i < random_count; ++i) ws.push_back(random_word(rng, gamma.size(), alphabet));
  if (ws.empty()) throw UsageError("give --w or --random");
  if (k < gamma.size() || lo < gamma.size()) throw UsageError("k and fit range must be >= m");

  const auto ks = k_range(lo, hi);
  struct Row {
    RegressionFit fit;
    double predicted;
    std::optional<double> exact;
  };
  std::vector<std::optional<Row>> rows(ws.size());
  std::vector<std::string> skipped(ws.size());
  parallel_for(ws.size(), common.threads, [&](std::size_t idx) {
    try {
      RegressionFit f = fit(ws[idx], gamma, ks);
      Row row{f, predict(f, k), std::nullopt};
      if (exact) {
        const BigCount count = pi(ws[idx], gamma, k).count;
        if (count > 0) row.exact = log_count(count);
      }
      rows[idx] = std::move(row);
    } catch (const DegenerateMinimizer& e) {
      skipped[idx] = e.what();
    }
  }, 1);

  double error_sum = 0;
  std::size_t error_n = 0;
  write_output(out, [&](std::ostream& os) {
    os << "w,slope,intercept,predicted_log_pi_at_k" << (exact ? ",exact_log_pi" : "") << '\n';
    os << std::setprecision(12);
    for (std::size_t idx = 0; idx < ws.size(); ++idx) {
      if (!rows[idx]) continue;
      const Row& row = *rows[idx];
      os << ws[idx].str() << ',' << row.fit.slope << ',' << row.fit.intercept << ',' << row.predicted;
      if (exact) {
        os << ',';
        if (row.exact) {
          os << *row.exact;
          error_sum += row.predicted - *row.exact;
          ++error_n;
        }
      }
      os << '\n';
    }
  });
  for (std::size_t idx = 0; idx < ws.size(); ++idx) {
    if (!skipped[idx].empty()) std::cerr << "skipped " << ws[idx].str() << ": " << skipped[idx] << '\n';
  }
  if (ws.size() == 1 && rows[0]) {
    std::cerr << "predicted log10 pi_" << k << " = " << rows[0]->predicted / std::log(10.0);
    if (rows[0]->exact) std::cerr << ", exact log10 = " << *rows[0]->exact / std::log(10.0);
    std::cerr << '\n';
  }
  if (error_n > 0) std::cerr << "signed mean error (predicted - exact, natural log) = " << error_sum / static_cast<double>(error_n) << '\n';
  return 0;
}

int run_empirical(const Common& common, const std::string& fasta, std::size_t m, std::size_t k, const KeyOptions& key,
                  const std::string& theory, bool compute_theory, const std::string& out, std::size_t top) {
  const Alphabet alphabet = common.resolve_alphabet();
  std::mt19937_64 rng(common.seed);
  const Word gamma = key.resolve(m, alphabet, rng);
  if (k < m) throw UsageError("k < m");
  if (theory.empty() == !compute_theory) throw UsageError("give exactly one of --theory PATH or --compute-theory");

  Distribution d;
  if (compute_theory) {
    d = enumerate_all(m, gamma, k, common.threads);
  } else {
    d = Distribution{m, k, gamma, read_counts_csv(theory, alphabet, m), 0};
    for (const auto& c : d.counts) d.total += c;
  }
  const auto records = read_fasta(fasta, alphabet);
  const EmpiricalBuckets buckets = bucket_histogram(records, m, k, gamma);
  const ComparisonReport report = compare(d, buckets, top);
  write_output(out, [&](std::ostream& os) { write_report_csv(report, os); });

  std::ostream& log = (out.empty() || out == "-") ? std::cerr : std::cout;
  log << "distinct_kmers=" << buckets.distinct_kmers << " nonempty_buckets=" << buckets.counts.size() << '\n';
  if (report.spearman) {
    log << "spearman=" << std::setprecision(6) << *report.spearman << '\n';
  } else {
    log << "spearman=undefined (insufficient data)\n";
  }
  for (const auto& row : report.most_divergent) {
    log << "divergent " << row.mmer.str() << " theoretical=" << row.theoretical << " empirical=" << row.empirical << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact counts of k-mers per XOR-keyed minimizer"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--alphabet", common.alphabet, "dna or b:BITS")->capture_default_str();
  app.add_option("--seed", common.seed, "seed for randomized keys and words")->capture_default_str();
  app.add_option("--threads", common.threads, "worker threads (0: VIGEMIN_THREADS or all cores)");

  std::string w_text, out, fasta, theory, fit_range = "15:25";
  std::size_t k = 0, m = 0, random_gammas = 0, random_count = 0, top = 20;
  std::uint64_t budget = kDefaultOracleBudget;
  bool dump = false, sorted = false, exact = false, compute_theory = false;

  auto* pi_cmd = app.add_subcommand("pi", "count the k-mers whose vigemin is w");
  pi_cmd->add_option("--w", w_text, "the m-mer")->required();
  pi_cmd->add_option("--k", k, "k-mer size")->required();
  pi_cmd->add_flag("--dump-context", dump, "print R, i_max, beta_max, Sigma_i, S and T_i to stderr");
  KeyOptions pi_key;
  pi_key.attach(pi_cmd);

  auto* enum_cmd = app.add_subcommand("enumerate", "bucket sizes for every m-mer");
  enum_cmd->add_option("--m", m, "minimizer size")->required();
  enum_cmd->add_option("--k", k, "k-mer size")->required();
  enum_cmd->add_option("--out", out, "CSV path (default stdout)");
  enum_cmd->add_flag("--sorted", sorted, "rows by decreasing bucket size");
  KeyOptions enum_key;
  enum_key.attach(enum_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "compare the counting tables with exhaustive enumeration");
  verify_cmd->add_option("--m", m, "minimizer size")->required();
  verify_cmd->add_option("--k", k, "k-mer size")->required();
  verify_cmd->add_option("--random-gammas", random_gammas, "number of seeded random keys");
  verify_cmd->add_option("--budget", budget, "maximum number of k-mers to enumerate")->capture_default_str();
  KeyOptions verify_key;
  verify_key.attach(verify_cmd);

  auto* approx_cmd = app.add_subcommand("approx", "log-linear estimate of pi for large k");
  approx_cmd->add_option("--w", w_text, "the m-mer");
  approx_cmd->add_option("--random", random_count, "number of random m-mers");
  approx_cmd->add_option("--k", k, "k at which to predict")->required();
  approx_cmd->add_option("--fit-range", fit_range, "inclusive k range LO:HI for the fit")->capture_default_str();
  approx_cmd->add_flag("--exact", exact, "also compute the exact log pi at k");
  approx_cmd->add_option("--out", out, "CSV path (default stdout)");
  KeyOptions approx_key;
  approx_key.attach(approx_cmd);

  auto* emp_cmd = app.add_subcommand("empirical", "observed bucket sizes in a FASTA file against pi");
  emp_cmd->add_option("--fasta", fasta, "input FASTA")->required();
  emp_cmd->add_option("--m", m, "minimizer size")->required();
  emp_cmd->add_option("--k", k, "k-mer size")->required();
  emp_cmd->add_option("--theory", theory, "CSV from `enumerate`");
  emp_cmd->add_flag("--compute-theory", compute_theory, "compute the theoretical distribution");
  emp_cmd->add_option("--out", out, "CSV path (default stdout)");
  emp_cmd->add_option("--top", top, "divergent buckets to list")->capture_default_str();
  KeyOptions emp_key;
  emp_key.attach(emp_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*pi_cmd) return run_pi(common, w_text, pi_key, k, dump);
    if (*enum_cmd) return run_enumerate(common, m, k, enum_key, out, sorted);
    if (*verify_cmd) return run_verify(common, m, k, verify_key, random_gammas, budget);
    if (*approx_cmd) return run_approx(common, w_text, random_count, approx_key, k, fit_range, exact, out);
    if (*emp_cmd) return run_empirical(common, fasta, m, k, emp_key, theory, compute_theory, out, top);
  } catch (const InvariantViolation& e) {
    std::cerr << "internal invariant failure: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::logic_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

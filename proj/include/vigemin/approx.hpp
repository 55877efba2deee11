#pragma once

#include "vigemin/count.hpp"
#include "vigemin/counting.hpp"
#include "vigemin/precompute.hpp"

#include <cmath>
#include <cstddef>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace vigemin {

struct FitPoint {
  std::size_t k;
  double log_pi;  // natural log of the exact count
};

// Least-squares line log(pi_k) ~ slope * k + intercept.
struct RegressionFit {
  double slope = 0;
  double intercept = 0;
  std::vector<FitPoint> points;
  double residual_sse = 0;
};

struct DegenerateMinimizer : std::domain_error {
  explicit DegenerateMinimizer(std::size_t k)
      : std::domain_error("degenerate minimizer: pi is 0 at k = " + std::to_string(k)), k(k) {}
  std::size_t k;
};

inline constexpr std::size_t kDefaultFitFirst = 15;
inline constexpr std::size_t kDefaultFitLast = 25;

inline double predict(const RegressionFit& fit, std::size_t k) {
  return fit.slope * static_cast<double>(k) + fit.intercept;
}

inline RegressionFit fit_line(std::vector<FitPoint> points) {
  std::set<std::size_t> distinct;
  for (const auto& p : points) distinct.insert(p.k);
  if (distinct.size() < 2) throw std::invalid_argument("regression needs at least 2 distinct k values");

  const auto n = static_cast<double>(points.size());
  double mean_k = 0, mean_y = 0;
  for (const auto& p : points) {
    mean_k += static_cast<double>(p.k);
    mean_y += p.log_pi;
  }
  mean_k /= n;
  mean_y /= n;
  double sxx = 0, sxy = 0;
  for (const auto& p : points) {
    const double dk = static_cast<double>(p.k) - mean_k;
    sxx += dk * dk;
    sxy += dk * (p.log_pi - mean_y);
  }

  RegressionFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_k;
  fit.points = std::move(points);
  for (const auto& p : fit.points) {
    const double e = p.log_pi - predict(fit, p.k);
    fit.residual_sse += e * e;
  }
  return fit;
}

// Exact pi at each k (one shared context), then the regression.
inline RegressionFit fit(const Word& w, const Word& gamma, std::span<const std::size_t> k_values) {
  const Context ctx(w, gamma);
  std::vector<FitPoint> points;
  points.reserve(k_values.size());
  for (std::size_t k : k_values) {
    if (k < w.size()) throw std::invalid_argument("fit point k = " + std::to_string(k) + " < m");
    const BigCount count = count_vigemin_kmers(ctx, k);
    if (count == 0) throw DegenerateMinimizer(k);
    points.push_back({k, log_count(count)});
  }
  return fit_line(std::move(points));
}

inline std::vector<std::size_t> k_range(std::size_t first, std::size_t last) {
  if (first > last) throw std::invalid_argument("empty k range");
  std::vector<std::size_t> ks;
  for (std::size_t k = first; k <= last; ++k) ks.push_back(k);
  return ks;
}

inline RegressionFit fit(const Word& w, const Word& gamma) {
  const auto ks = k_range(kDefaultFitFirst, kDefaultFitLast);
  return fit(w, gamma, ks);
}

}  // namespace vigemin

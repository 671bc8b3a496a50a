#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "grmsim/errors.hpp"

namespace grmsim {

struct RegressionResult {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_se = 0.0;
  std::size_t n = 0;
};

namespace detail {

inline void require_same_length(std::span<const double> x, std::span<const double> y,
                                const char* who) {
  if (x.size() != y.size()) {
    throw DegenerateInputError(std::string(who) + ": length mismatch (" +
                               std::to_string(x.size()) + " vs " +
                               std::to_string(y.size()) + ")");
  }
}

inline bool is_constant(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
}

}  // namespace detail

// Average (fractional) ranks, 1-based; tied values share the mean of the
// rank positions they span.
inline std::vector<double> average_ranks(std::span<const double> v) {
  const std::size_t n = v.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });

  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
    const double shared = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = shared;
    i = j + 1;
  }
  return ranks;
}

inline double pearson(std::span<const double> x, std::span<const double> y) {
  detail::require_same_length(x, y, "pearson");
  const std::size_t n = x.size();
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw DegenerateInputError("pearson: constant input vector");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

// Tie-corrected Spearman correlation: Pearson on average ranks.
inline double spearman(std::span<const double> x, std::span<const double> y) {
  detail::require_same_length(x, y, "spearman");
  if (x.size() < 3) {
    throw DegenerateInputError("spearman: need at least 3 observations");
  }
  if (detail::is_constant(x) || detail::is_constant(y)) {
    throw DegenerateInputError("spearman: constant input vector");
  }
  return pearson(average_ranks(x), average_ranks(y));
}

// Centers and scales to sample mean 0, sample sd 1 (n-1 denominator).
inline std::vector<double> standardize(std::span<const double> v) {
  if (v.size() < 2) {
    throw DegenerateInputError("standardize: need at least 2 observations");
  }
  const std::size_t n = v.size();
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(n);
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  if (ss == 0.0) {
    throw DegenerateInputError("standardize: zero variance");
  }
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = (v[i] - mean) / sd;
  return out;
}

// Classical simple least squares of y on x with the textbook slope
// standard error sqrt(RSS / (n-2) / Sxx).
inline RegressionResult ols_simple(std::span<const double> y,
                                   std::span<const double> x) {
  detail::require_same_length(x, y, "ols_simple");
  const std::size_t n = x.size();
  if (n < 3) {
    throw DegenerateInputError("ols_simple: need at least 3 observations");
  }
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    sxx += dx * dx;
    sxy += dx * (y[i] - my);
  }
  if (sxx == 0.0) {
    throw DegenerateInputError("ols_simple: predictor has zero variance");
  }

  RegressionResult r;
  r.n = n;
  r.slope = sxy / sxx;
  r.intercept = my - r.slope * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double resid = y[i] - r.intercept - r.slope * x[i];
    rss += resid * resid;
  }
  r.slope_se = std::sqrt(std::max(rss, 0.0) / static_cast<double>(n - 2) / sxx);
  return r;
}

// Consecutive differences, out[i] = values[i+1] - values[i].
inline std::vector<double> delta_series(std::span<const double> values) {
  if (values.size() < 2) {
    throw ValidationError("delta_series: need at least 2 values");
  }
  std::vector<double> out(values.size() - 1);
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    out[i] = values[i + 1] - values[i];
  }
  return out;
}

}  // namespace grmsim

#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "grmsim/errors.hpp"

namespace grmsim {

// Ordered category cutpoints on the latent-trait scale. K categories are
// separated by K-1 strictly increasing thresholds.
class Thresholds {
 public:
  explicit Thresholds(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) {
      throw ValidationError("Thresholds: need at least one cutpoint");
    }
    for (std::size_t i = 1; i < values_.size(); ++i) {
      if (!(values_[i - 1] < values_[i])) {
        throw ValidationError("Thresholds: cutpoints must be strictly increasing");
      }
    }
  }

  const std::vector<double>& values() const { return values_; }
  int num_categories() const { return static_cast<int>(values_.size()) + 1; }

 private:
  std::vector<double> values_;
};

// Evenly spaced cutpoints: the interior K-1 points of a (K+1)-point grid
// spanning [-2, 2]. K = 2 lands on the single threshold 0. Computed as
// m * (2/K) with integer m symmetric about zero, which makes the set exactly
// antisymmetric in floating point.
inline Thresholds make_thresholds(int num_categories) {
  if (num_categories < 2) {
    throw ValidationError("make_thresholds: need at least 2 categories, got " +
                          std::to_string(num_categories));
  }
  const double half_step = 2.0 / num_categories;
  std::vector<double> values(static_cast<std::size_t>(num_categories) - 1);
  for (int j = 1; j < num_categories; ++j) {
    values[static_cast<std::size_t>(j) - 1] = (2 * j - num_categories) * half_step;
  }
  return Thresholds(std::move(values));
}

// Bins an item-variable value: category k when beta_{k-1} < gamma <= beta_k,
// with open ends below the first and above the last cutpoint. Values exactly
// on a cutpoint bin downward.
inline int categorize(double gamma, const Thresholds& thresholds) {
  const auto& v = thresholds.values();
  const auto it = std::lower_bound(v.begin(), v.end(), gamma);
  return static_cast<int>(it - v.begin()) + 1;
}

}  // namespace grmsim

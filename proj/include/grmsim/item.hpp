#pragma once

#include <string>

#include "grmsim/errors.hpp"
#include "grmsim/normal.hpp"
#include "grmsim/thresholds.hpp"

namespace grmsim {

// One item's measurement spec: error sd around the true score plus its
// category cutpoints.
struct Item {
  double sigma;
  Thresholds thresholds;
};

inline void validate_item(const Item& item) {
  if (!(item.sigma > 0.0)) {
    throw ValidationError("Item: sigma must be > 0");
  }
}

// P(response = k | theta): mass of N(theta, sigma) between the surrounding
// cutpoints, as a difference of normal CDFs.
inline double category_prob(double theta, int k, const Item& item) {
  validate_item(item);
  const int num_cat = item.thresholds.num_categories();
  if (k < 1 || k > num_cat) {
    throw ValidationError("category_prob: category " + std::to_string(k) +
                          " out of 1.." + std::to_string(num_cat));
  }
  const auto& beta = item.thresholds.values();
  const double upper = k == num_cat ? 1.0 : phi((beta[k - 1] - theta) / item.sigma);
  const double lower = k == 1 ? 0.0 : phi((beta[k - 2] - theta) / item.sigma);
  return upper - lower;
}

// P(response > k | theta), the ogive item characteristic curve. k = 0 and
// k = K are the constant boundary curves 1 and 0.
inline double icc_above(double theta, int k, const Item& item) {
  validate_item(item);
  const int num_cat = item.thresholds.num_categories();
  if (k < 0 || k > num_cat) {
    throw ValidationError("icc_above: category " + std::to_string(k) +
                          " out of 0.." + std::to_string(num_cat));
  }
  if (k == 0) return 1.0;
  if (k == num_cat) return 0.0;
  return phi_upper((item.thresholds.values()[k - 1] - theta) / item.sigma);
}

}  // namespace grmsim

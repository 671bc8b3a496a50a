#pragma once

#include <cstddef>
#include <vector>

#include "grmsim/errors.hpp"
#include "grmsim/item.hpp"
#include "grmsim/rng.hpp"
#include "grmsim/thresholds.hpp"

namespace grmsim {

// True scores theta_i, one per respondent.
using LatentSample = std::vector<double>;

// N x J ordinal responses (row-major, categories 1..K) together with the
// latent sample that generated them. The predictor column is filled in by
// the engine after generation.
struct ResponseMatrix {
  std::vector<int> responses;
  std::size_t num_rows = 0;
  std::size_t num_items = 0;
  LatentSample theta;
  std::vector<double> predictor;

  int at(std::size_t row, std::size_t item) const {
    return responses[row * num_items + item];
  }
};

// Draws gamma_ij ~ N(theta_i, sigma_j) for each respondent and item and bins
// it against the item's cutpoints. Draw order is row-major, which pins the
// output for a given stream state.
inline ResponseMatrix sample_response_matrix(const LatentSample& theta,
                                             const std::vector<Item>& items,
                                             NormalStream& stream) {
  if (items.empty()) {
    throw ValidationError("sample_response_matrix: item list is empty");
  }
  const int num_cat = items.front().thresholds.num_categories();
  for (const Item& item : items) {
    validate_item(item);
    if (item.thresholds.num_categories() != num_cat) {
      throw ValidationError("sample_response_matrix: items must share one K");
    }
  }

  ResponseMatrix out;
  out.num_rows = theta.size();
  out.num_items = items.size();
  out.theta = theta;
  out.responses.resize(out.num_rows * out.num_items);
  for (std::size_t i = 0; i < out.num_rows; ++i) {
    for (std::size_t j = 0; j < out.num_items; ++j) {
      const double gamma = stream.next(theta[i], items[j].sigma);
      out.responses[i * out.num_items + j] = categorize(gamma, items[j].thresholds);
    }
  }
  return out;
}

}  // namespace grmsim

#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "grmsim/dependency.hpp"
#include "grmsim/engine.hpp"
#include "grmsim/errors.hpp"

namespace grmsim {

enum class RunMode { kIndependent, kDependency };

// A complete, self-describing run request. Unset list fields are filled with
// the mode's defaults by finalize_config; every run echoes the finalized
// form so results stay reproducible from the output directory alone.
struct RunConfig {
  RunMode mode = RunMode::kIndependent;
  std::vector<int> k_values;          // default: 2..100 independent, profile range dependency
  std::vector<double> sigma_values;   // independent mode; default 0.1..1.0 step 0.1
  std::optional<DependencyProfile> profile;  // dependency mode
  std::string profile_name;                  // "small"/"medium"/"large" or "custom"
  std::vector<int> items_values;      // default {1, 3}
  std::vector<int> sample_sizes;      // default {100, 500, 1000}
  int replications = 500;
  std::uint64_t master_seed = 123456789;
  PredictorSpec predictor;
  std::string output_dir = "grmsim-out";
  int workers = 0;  // 0 = hardware concurrency
};

namespace detail {

template <typename T>
inline void require_unique(const std::vector<T>& v, const std::string& field) {
  std::set<T> seen(v.begin(), v.end());
  if (seen.size() != v.size()) {
    throw ValidationError(field + ": values must be distinct");
  }
}

}  // namespace detail

// Fills defaults, then validates every field. Throws ValidationError with
// the offending field path.
inline void finalize_config(RunConfig& config) {
  if (config.mode == RunMode::kDependency) {
    if (!config.profile) {
      throw ValidationError("profile: required in dependency mode");
    }
    if (!config.sigma_values.empty()) {
      throw ValidationError(
          "sigma_values: not allowed in dependency mode (sigma follows the profile)");
    }
    if (config.profile->kind != DependencyProfile::Kind::kLinear) {
      throw ValidationError("profile: dependency mode requires a linear profile");
    }
    if (config.k_values.empty()) {
      for (int k = config.profile->k_min; k <= config.profile->k_max; ++k) {
        config.k_values.push_back(k);
      }
    }
  } else {
    if (config.profile) {
      throw ValidationError("profile: not allowed in independent mode");
    }
    if (config.k_values.empty()) {
      for (int k = 2; k <= 100; ++k) config.k_values.push_back(k);
    }
    if (config.sigma_values.empty()) {
      for (int i = 1; i <= 10; ++i) config.sigma_values.push_back(i / 10.0);
    }
  }
  if (config.items_values.empty()) config.items_values = {1, 3};
  if (config.sample_sizes.empty()) config.sample_sizes = {100, 500, 1000};

  for (std::size_t i = 0; i < config.k_values.size(); ++i) {
    if (config.k_values[i] < 2) {
      throw ValidationError("k_values[" + std::to_string(i) + "]: must be >= 2");
    }
  }
  detail::require_unique(config.k_values, "k_values");
  if (config.mode == RunMode::kDependency) {
    for (std::size_t i = 0; i < config.k_values.size(); ++i) {
      const int k = config.k_values[i];
      if (k < config.profile->k_min || k > config.profile->k_max) {
        throw OutOfDomainError("k_values[" + std::to_string(i) + "]: K=" +
                               std::to_string(k) + " outside profile range " +
                               std::to_string(config.profile->k_min) + ".." +
                               std::to_string(config.profile->k_max));
      }
    }
  } else {
    for (std::size_t i = 0; i < config.sigma_values.size(); ++i) {
      if (!(config.sigma_values[i] > 0.0)) {
        throw ValidationError("sigma_values[" + std::to_string(i) + "]: must be > 0");
      }
    }
    detail::require_unique(config.sigma_values, "sigma_values");
  }
  for (std::size_t i = 0; i < config.items_values.size(); ++i) {
    if (config.items_values[i] < 1) {
      throw ValidationError("items_values[" + std::to_string(i) + "]: must be >= 1");
    }
  }
  detail::require_unique(config.items_values, "items_values");
  for (std::size_t i = 0; i < config.sample_sizes.size(); ++i) {
    if (config.sample_sizes[i] < 10) {
      throw ValidationError("sample_sizes[" + std::to_string(i) + "]: must be >= 10");
    }
  }
  detail::require_unique(config.sample_sizes, "sample_sizes");
  if (config.replications < 1) {
    throw ValidationError("replications: must be >= 1");
  }
  if (!(config.predictor.noise_sd > 0.0)) {
    throw ValidationError("predictor_noise_sd: must be > 0");
  }
  if (config.workers < 0) {
    throw ValidationError("workers: must be >= 0");
  }
  if (config.output_dir.empty()) {
    throw ValidationError("output_dir: must not be empty");
  }
}

// Expands the factor grid into condition cells. Independent mode crosses
// K x sigma x items x N; dependency mode resolves one sigma per K from the
// profile, then crosses with items x N.
inline std::vector<ConditionCell> expand_grid(const RunConfig& config) {
  std::vector<ConditionCell> cells;
  const auto add_cell = [&](int k, double sigma, int items, int n) {
    ConditionCell cell;
    cell.num_categories = k;
    cell.sigma = sigma;
    cell.num_items = items;
    cell.sample_size = n;
    cell.replications = config.replications;
    cells.push_back(cell);
  };

  for (int k : config.k_values) {
    if (config.mode == RunMode::kDependency) {
      const double sigma = sigma_for(*config.profile, k);
      for (int items : config.items_values) {
        for (int n : config.sample_sizes) add_cell(k, sigma, items, n);
      }
    } else {
      for (double sigma : config.sigma_values) {
        for (int items : config.items_values) {
          for (int n : config.sample_sizes) add_cell(k, sigma, items, n);
        }
      }
    }
  }
  return cells;
}

}  // namespace grmsim

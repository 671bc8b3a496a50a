#pragma once

#include <string>

#include "grmsim/errors.hpp"

namespace grmsim {

// Rule mapping the number of response categories K to the measurement error
// sd. Either a constant sigma (error independent of K) or a monotonically
// increasing linear map over an inclusive K range.
struct DependencyProfile {
  enum class Kind { kIndependent, kLinear };

  Kind kind = Kind::kIndependent;
  double sigma_constant = 0.0;  // independent
  int k_min = 0;                // linear
  int k_max = 0;
  double sigma_start = 0.0;
  double sigma_end = 0.0;

  static DependencyProfile independent(double sigma) {
    if (!(sigma > 0.0)) {
      throw ValidationError("DependencyProfile: sigma_constant must be > 0");
    }
    DependencyProfile p;
    p.kind = Kind::kIndependent;
    p.sigma_constant = sigma;
    return p;
  }

  static DependencyProfile linear(int k_min, int k_max, double sigma_start,
                                  double sigma_end) {
    if (k_min < 2) {
      throw ValidationError("DependencyProfile: k_min must be >= 2");
    }
    if (k_max <= k_min) {
      throw ValidationError("DependencyProfile: k_max must exceed k_min");
    }
    if (!(sigma_start > 0.0)) {
      throw ValidationError("DependencyProfile: sigma_start must be > 0");
    }
    if (!(sigma_end > sigma_start)) {
      throw ValidationError(
          "DependencyProfile: sigma_end must exceed sigma_start "
          "(only increasing linear maps are supported)");
    }
    DependencyProfile p;
    p.kind = Kind::kLinear;
    p.k_min = k_min;
    p.k_max = k_max;
    p.sigma_start = sigma_start;
    p.sigma_end = sigma_end;
    return p;
  }
};

// Error sd for a given K under the profile.
inline double sigma_for(const DependencyProfile& profile, int num_categories) {
  if (profile.kind == DependencyProfile::Kind::kIndependent) {
    if (num_categories < 2) {
      throw ValidationError("sigma_for: K must be >= 2");
    }
    return profile.sigma_constant;
  }
  if (num_categories < profile.k_min || num_categories > profile.k_max) {
    throw OutOfDomainError("sigma_for: K=" + std::to_string(num_categories) +
                           " outside profile range " + std::to_string(profile.k_min) +
                           ".." + std::to_string(profile.k_max));
  }
  const double step =
      (profile.sigma_end - profile.sigma_start) / (profile.k_max - profile.k_min);
  return profile.sigma_start + (num_categories - profile.k_min) * step;
}

// The three studied dependency strengths, all over K in [2, 20]. The names
// are relative to a unit-sd latent trait, not standard effect-size labels.
inline DependencyProfile named_profile(const std::string& name) {
  if (name == "small") return DependencyProfile::linear(2, 20, 0.05, 0.5);
  if (name == "medium") return DependencyProfile::linear(2, 20, 0.1, 1.0);
  if (name == "large") return DependencyProfile::linear(2, 20, 0.2, 2.0);
  throw ValidationError("named_profile: unknown profile \"" + name +
                        "\" (expected small, medium, or large)");
}

}  // namespace grmsim

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "grmsim/errors.hpp"
#include "grmsim/run_config.hpp"

namespace grmsim {

inline bool operator==(const DependencyProfile& a, const DependencyProfile& b) {
  return a.kind == b.kind && a.sigma_constant == b.sigma_constant &&
         a.k_min == b.k_min && a.k_max == b.k_max &&
         a.sigma_start == b.sigma_start && a.sigma_end == b.sigma_end;
}

inline bool operator==(const PredictorSpec& a, const PredictorSpec& b) {
  return a.coefficient == b.coefficient && a.noise_sd == b.noise_sd;
}

inline bool operator==(const RunConfig& a, const RunConfig& b) {
  return a.mode == b.mode && a.k_values == b.k_values &&
         a.sigma_values == b.sigma_values && a.profile == b.profile &&
         a.profile_name == b.profile_name && a.items_values == b.items_values &&
         a.sample_sizes == b.sample_sizes && a.replications == b.replications &&
         a.master_seed == b.master_seed && a.predictor == b.predictor &&
         a.output_dir == b.output_dir && a.workers == b.workers;
}

namespace detail {

inline const std::set<std::string>& known_config_keys() {
  static const std::set<std::string> keys = {
      "mode",          "k_values",       "sigma_values",
      "profile",       "items_values",   "sample_sizes",
      "replications",  "master_seed",    "predictor_coefficient",
      "predictor_noise_sd", "output_dir", "workers"};
  return keys;
}

inline std::vector<int> parse_k_values(const nlohmann::json& node) {
  if (node.is_string()) {
    const std::string s = node.get<std::string>();
    const auto dots = s.find("..");
    if (dots == std::string::npos) {
      throw ValidationError("k_values: range string must look like \"2..100\"");
    }
    int lo = 0, hi = 0;
    try {
      lo = std::stoi(s.substr(0, dots));
      hi = std::stoi(s.substr(dots + 2));
    } catch (const std::exception&) {
      throw ValidationError("k_values: cannot parse range \"" + s + "\"");
    }
    if (hi < lo) {
      throw ValidationError("k_values: range \"" + s + "\" is empty");
    }
    std::vector<int> out;
    for (int k = lo; k <= hi; ++k) out.push_back(k);
    return out;
  }
  if (!node.is_array()) {
    throw ValidationError("k_values: expected an integer array or \"lo..hi\" string");
  }
  std::vector<int> out;
  for (const auto& v : node) {
    if (!v.is_number_integer()) {
      throw ValidationError("k_values: entries must be integers");
    }
    out.push_back(v.get<int>());
  }
  return out;
}

inline DependencyProfile parse_profile(const nlohmann::json& node, std::string& name) {
  if (node.is_string()) {
    name = node.get<std::string>();
    return named_profile(name);
  }
  if (!node.is_object()) {
    throw ValidationError("profile: expected a name or an object");
  }
  for (const auto& [key, value] : node.items()) {
    (void)value;
    if (key != "name" && key != "k_min" && key != "k_max" && key != "sigma_start" &&
        key != "sigma_end") {
      throw ValidationError("profile." + key + ": unknown key");
    }
  }
  if (node.contains("name") && node["name"].get<std::string>() != "custom") {
    name = node["name"].get<std::string>();
    const DependencyProfile named = named_profile(name);
    if (node.contains("k_min") || node.contains("k_max") ||
        node.contains("sigma_start") || node.contains("sigma_end")) {
      DependencyProfile given = named;
      if (node.contains("k_min")) given.k_min = node["k_min"].get<int>();
      if (node.contains("k_max")) given.k_max = node["k_max"].get<int>();
      if (node.contains("sigma_start")) given.sigma_start = node["sigma_start"].get<double>();
      if (node.contains("sigma_end")) given.sigma_end = node["sigma_end"].get<double>();
      if (!(given == named)) {
        throw ValidationError("profile: fields disagree with named profile \"" + name +
                              "\"");
      }
    }
    return named;
  }
  name = "custom";
  for (const char* field : {"k_min", "k_max", "sigma_start", "sigma_end"}) {
    if (!node.contains(field)) {
      throw ValidationError("profile." + std::string(field) +
                            ": required for a custom profile");
    }
  }
  return DependencyProfile::linear(node["k_min"].get<int>(), node["k_max"].get<int>(),
                                   node["sigma_start"].get<double>(),
                                   node["sigma_end"].get<double>());
}

}  // namespace detail

// Parses and finalizes a config from its JSON form. Unknown keys and
// mode/field mismatches are validation errors naming the field.
inline RunConfig parse_config(const nlohmann::json& doc) {
  if (!doc.is_object()) {
    throw ValidationError("config: top level must be an object");
  }
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (!detail::known_config_keys().count(key)) {
      throw ValidationError(key + ": unknown config key");
    }
  }

  RunConfig config;
  if (doc.contains("mode")) {
    const std::string mode = doc["mode"].get<std::string>();
    if (mode == "independent") {
      config.mode = RunMode::kIndependent;
    } else if (mode == "dependency") {
      config.mode = RunMode::kDependency;
    } else {
      throw ValidationError("mode: expected \"independent\" or \"dependency\"");
    }
  }
  if (doc.contains("k_values")) config.k_values = detail::parse_k_values(doc["k_values"]);
  if (doc.contains("sigma_values")) {
    if (!doc["sigma_values"].is_array()) {
      throw ValidationError("sigma_values: expected a number array");
    }
    for (const auto& v : doc["sigma_values"]) {
      if (!v.is_number()) {
        throw ValidationError("sigma_values: entries must be numbers");
      }
      config.sigma_values.push_back(v.get<double>());
    }
  }
  if (doc.contains("profile")) {
    config.profile = detail::parse_profile(doc["profile"], config.profile_name);
  }
  if (doc.contains("items_values")) {
    config.items_values = doc["items_values"].get<std::vector<int>>();
  }
  if (doc.contains("sample_sizes")) {
    config.sample_sizes = doc["sample_sizes"].get<std::vector<int>>();
  }
  if (doc.contains("replications")) config.replications = doc["replications"].get<int>();
  if (doc.contains("master_seed")) {
    if (!doc["master_seed"].is_number_unsigned()) {
      throw ValidationError("master_seed: expected an unsigned integer");
    }
    config.master_seed = doc["master_seed"].get<std::uint64_t>();
  }
  if (doc.contains("predictor_coefficient")) {
    config.predictor.coefficient = doc["predictor_coefficient"].get<double>();
  }
  if (doc.contains("predictor_noise_sd")) {
    config.predictor.noise_sd = doc["predictor_noise_sd"].get<double>();
  }
  if (doc.contains("output_dir")) config.output_dir = doc["output_dir"].get<std::string>();
  if (doc.contains("workers")) config.workers = doc["workers"].get<int>();

  finalize_config(config);
  return config;
}

inline RunConfig parse_config_text(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("config: invalid JSON: ") + e.what());
  }
  return parse_config(doc);
}

inline RunConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open config file: " + path.string());
  }
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return parse_config_text(text);
}

// Serializes a finalized config with every field materialized.
inline nlohmann::ordered_json config_to_json(const RunConfig& config) {
  nlohmann::ordered_json doc;
  doc["mode"] = config.mode == RunMode::kIndependent ? "independent" : "dependency";
  doc["k_values"] = config.k_values;
  if (config.mode == RunMode::kIndependent) {
    doc["sigma_values"] = config.sigma_values;
  } else {
    nlohmann::ordered_json prof;
    prof["name"] = config.profile_name.empty() ? "custom" : config.profile_name;
    prof["k_min"] = config.profile->k_min;
    prof["k_max"] = config.profile->k_max;
    prof["sigma_start"] = config.profile->sigma_start;
    prof["sigma_end"] = config.profile->sigma_end;
    doc["profile"] = prof;
  }
  doc["items_values"] = config.items_values;
  doc["sample_sizes"] = config.sample_sizes;
  doc["replications"] = config.replications;
  doc["master_seed"] = config.master_seed;
  doc["predictor_coefficient"] = config.predictor.coefficient;
  doc["predictor_noise_sd"] = config.predictor.noise_sd;
  doc["output_dir"] = config.output_dir;
  doc["workers"] = config.workers;
  return doc;
}

inline std::filesystem::path write_resolved_config(const RunConfig& config,
                                                   const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  const std::filesystem::path path = dir / "resolved_config.json";
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot write " + path.string());
  }
  out << config_to_json(config).dump(2) << "\n";
  if (!out) {
    throw IoError("failed writing " + path.string());
  }
  return path;
}

}  // namespace grmsim

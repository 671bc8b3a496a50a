#include <catch2/catch_amalgamated.hpp>

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "grmsim/config_json.hpp"

using namespace grmsim;

TEST_CASE("minimal dependency config picks up the profile defaults", "[config]") {
  const RunConfig c = parse_config_text(R"({"mode":"dependency","profile":"large"})");
  CHECK(c.mode == RunMode::kDependency);
  REQUIRE(c.k_values.size() == 19);
  CHECK(c.k_values.front() == 2);
  CHECK(c.k_values.back() == 20);
  CHECK(c.profile_name == "large");
  CHECK(c.profile->sigma_end == 2.0);
  CHECK(c.items_values == std::vector<int>{1, 3});
  CHECK(c.sample_sizes == std::vector<int>{100, 500, 1000});
  CHECK(c.replications == 500);
}

TEST_CASE("minimal independent config uses the full factor grid", "[config]") {
  const RunConfig c = parse_config_text(R"({"mode":"independent"})");
  REQUIRE(c.k_values.size() == 99);
  CHECK(c.k_values.front() == 2);
  CHECK(c.k_values.back() == 100);
  REQUIRE(c.sigma_values.size() == 10);
  CHECK(c.sigma_values.front() == Catch::Approx(0.1).margin(1e-15));
  CHECK(c.sigma_values.back() == Catch::Approx(1.0).margin(1e-15));
  CHECK(c.predictor.coefficient == 0.5);
  CHECK(c.predictor.noise_sd == 0.2);
}

TEST_CASE("k range strings expand inclusively", "[config]") {
  const RunConfig c = parse_config_text(
      R"({"mode":"independent","k_values":"2..10","sigma_values":[0.3]})");
  CHECK(c.k_values.size() == 9);
  CHECK_THROWS_AS(parse_config_text(R"({"k_values":"abc"})"), ValidationError);
  CHECK_THROWS_AS(parse_config_text(R"({"k_values":"9..2"})"), ValidationError);
  CHECK_THROWS_AS(parse_config_text(R"({"k_values":[2.5]})"), ValidationError);
}

TEST_CASE("config validation failures name the field", "[config]") {
  CHECK_THROWS_WITH(parse_config_text(R"({"banana": 1})"),
                    Catch::Matchers::ContainsSubstring("banana"));
  CHECK_THROWS_WITH(parse_config_text(R"({"sigma_values":[0.0]})"),
                    Catch::Matchers::ContainsSubstring("sigma_values[0]"));
  CHECK_THROWS_WITH(parse_config_text(R"({"sigma_values":[0.3,0.3]})"),
                    Catch::Matchers::ContainsSubstring("sigma_values"));
  CHECK_THROWS_WITH(parse_config_text(R"({"mode":"dependency"})"),
                    Catch::Matchers::ContainsSubstring("profile"));
  CHECK_THROWS_WITH(
      parse_config_text(R"({"mode":"dependency","profile":"small","sigma_values":[0.1]})"),
      Catch::Matchers::ContainsSubstring("sigma_values"));
  CHECK_THROWS_WITH(parse_config_text(R"({"mode":"independent","profile":"small"})"),
                    Catch::Matchers::ContainsSubstring("profile"));
  CHECK_THROWS_WITH(parse_config_text(R"({"mode":"nonsense"})"),
                    Catch::Matchers::ContainsSubstring("mode"));
  CHECK_THROWS_AS(parse_config_text(R"({"replications":0})"), ValidationError);
  CHECK_THROWS_AS(parse_config_text(R"({"sample_sizes":[5]})"), ValidationError);
  CHECK_THROWS_AS(parse_config_text(R"({"items_values":[0]})"), ValidationError);
  CHECK_THROWS_AS(parse_config_text(R"({"master_seed":-5})"), ValidationError);
  CHECK_THROWS_AS(parse_config_text(R"({"predictor_noise_sd":0})"), ValidationError);
  CHECK_THROWS_AS(parse_config_text("{nonsense"), ValidationError);
}

TEST_CASE("custom profiles parse and validate", "[config]") {
  const RunConfig c = parse_config_text(
      R"({"mode":"dependency",
          "profile":{"k_min":2,"k_max":30,"sigma_start":0.05,"sigma_end":0.9}})");
  CHECK(c.profile_name == "custom");
  CHECK(c.profile->k_max == 30);
  CHECK(c.k_values.size() == 29);

  CHECK_THROWS_WITH(
      parse_config_text(
          R"({"mode":"dependency",
              "profile":{"k_min":2,"k_max":30,"sigma_start":0.9,"sigma_end":0.05}})"),
      Catch::Matchers::ContainsSubstring("sigma_end"));
  CHECK_THROWS_WITH(
      parse_config_text(R"({"mode":"dependency","profile":{"k_min":2}})"),
      Catch::Matchers::ContainsSubstring("profile.k_max"));
  CHECK_THROWS_WITH(
      parse_config_text(R"({"mode":"dependency","profile":{"bogus":1}})"),
      Catch::Matchers::ContainsSubstring("profile.bogus"));
  CHECK_THROWS_AS(
      parse_config_text(
          R"({"mode":"dependency","profile":"small","k_values":[2,21]})"),
      OutOfDomainError);
}

TEST_CASE("resolved config round trips", "[config]") {
  const char* texts[] = {
      R"({"mode":"independent","k_values":[2,5,9],"sigma_values":[0.25,0.5],
          "items_values":[1],"sample_sizes":[200],"replications":12,
          "master_seed":987654321,"predictor_coefficient":0.4,
          "predictor_noise_sd":0.3,"output_dir":"results","workers":2})",
      R"({"mode":"dependency","profile":"medium"})",
      R"({"mode":"dependency",
          "profile":{"k_min":3,"k_max":12,"sigma_start":0.1,"sigma_end":0.7},
          "replications":7})",
  };
  for (const char* text : texts) {
    const RunConfig original = parse_config_text(text);
    const RunConfig reparsed = parse_config(config_to_json(original));
    CHECK(reparsed == original);
  }
}

TEST_CASE("write_resolved_config emits a loadable file", "[config]") {
  const auto dir = std::filesystem::temp_directory_path() /
                   ("grmsim_config_test_" + std::to_string(::getpid()));
  const RunConfig original = parse_config_text(R"({"mode":"dependency","profile":"small"})");
  const auto path = write_resolved_config(original, dir);
  const RunConfig loaded = load_config_file(path);
  CHECK(loaded == original);
  std::filesystem::remove_all(dir);
}

TEST_CASE("load_config_file reports missing files as I/O errors", "[config]") {
  CHECK_THROWS_AS(load_config_file("/nonexistent/grmsim.json"), IoError);
}

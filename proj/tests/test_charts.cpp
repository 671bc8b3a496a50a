#include <catch2/catch_amalgamated.hpp>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "grmsim/svg.hpp"

using namespace grmsim;

namespace {

std::size_t count_occurrences(const std::string& text, const std::string& needle) {
  std::size_t count = 0, pos = 0;
  while ((pos = text.find(needle, pos)) != std::string::npos) {
    ++count;
    pos += needle.size();
  }
  return count;
}

CurveSeries series_of(const std::string& group, int items, int n,
                      std::vector<int> k, std::vector<double> v,
                      double group_sigma = std::numeric_limits<double>::quiet_NaN()) {
  CurveSeries s;
  s.group = group;
  s.group_sigma = group_sigma;
  s.items = items;
  s.n = n;
  s.k = std::move(k);
  s.value = std::move(v);
  return s;
}

}  // namespace

TEST_CASE("chart renders one facet per items x n pair", "[charts]") {
  std::vector<CurveSeries> series;
  for (int items : {1, 3}) {
    for (int n : {100, 500, 1000}) {
      for (double sigma : {0.1, 0.5, 1.0}) {
        series.push_back(series_of(format_value(sigma), items, n, {2, 5, 10, 20},
                                   {0.6, 0.7, 0.72 - sigma * 0.1, 0.73 - sigma * 0.1},
                                   sigma));
      }
    }
  }
  const std::string svg = render_chart_svg("spearman", series);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(count_occurrences(svg, "class=\"facet\"") == 6);
  CHECK(count_occurrences(svg, "<polyline") == 18);
  CHECK(svg.find("items = 1, N = 100") != std::string::npos);
  CHECK(svg.find("items = 3, N = 1000") != std::string::npos);
  CHECK(svg.find("spearman vs number of response categories") != std::string::npos);

  // sigma gradient endpoints: purple for the lowest error, yellow for the highest
  CHECK(svg.find("#440154") != std::string::npos);
  CHECK(svg.find("#fde725") != std::string::npos);

  // identical input, identical bytes
  CHECK(render_chart_svg("spearman", series) == svg);
}

TEST_CASE("dependency profiles keep their fixed colors", "[charts]") {
  std::vector<CurveSeries> series{
      series_of("small", 1, 100, {2, 5, 10}, {0.9, 0.95, 0.93}),
      series_of("medium", 1, 100, {2, 5, 10}, {0.88, 0.92, 0.87}),
      series_of("large", 1, 100, {2, 5, 10}, {0.85, 0.88, 0.75}),
  };
  const std::string svg = render_chart_svg("spearman", series);
  CHECK(count_occurrences(svg, "class=\"facet\"") == 1);
  CHECK(count_occurrences(svg, "<polyline") == 3);
  CHECK(svg.find("#1f77b4") != std::string::npos);  // small: blue
  CHECK(svg.find("#2ca02c") != std::string::npos);  // medium: green
  CHECK(svg.find("#ff7f0e") != std::string::npos);  // large: orange
}

TEST_CASE("flat series still render", "[charts]") {
  const std::vector<CurveSeries> series{
      series_of("0.3", 1, 100, {2, 3, 4}, {0.5, 0.5, 0.5}, 0.3)};
  const std::string svg = render_chart_svg("slope_se", series);
  CHECK(svg.find("</svg>") != std::string::npos);
}

TEST_CASE("render_chart_file writes chart_<metric>.svg", "[charts]") {
  const auto dir = std::filesystem::temp_directory_path() /
                   ("grmsim_chart_" + std::to_string(::getpid()));
  const std::vector<CurveSeries> series{
      series_of("small", 1, 100, {2, 5}, {0.9, 0.95})};
  const auto path = render_chart_file("spearman", series, dir);
  CHECK(path.filename() == "chart_spearman.svg");
  CHECK(std::filesystem::file_size(path) > 200);
  std::filesystem::remove_all(dir);
}

TEST_CASE("empty chart input is rejected", "[charts]") {
  CHECK_THROWS_AS(render_chart_svg("spearman", {}), ValidationError);
}

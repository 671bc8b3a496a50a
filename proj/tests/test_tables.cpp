#include <catch2/catch_amalgamated.hpp>

#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "grmsim/csv.hpp"
#include "grmsim/curves.hpp"
#include "grmsim/engine.hpp"

using namespace grmsim;

namespace {

std::filesystem::path scratch_dir(const std::string& tag) {
  return std::filesystem::temp_directory_path() /
         ("grmsim_" + tag + "_" + std::to_string(::getpid()));
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

CellSummary fake_summary(int k, double sigma, int items, int n, double spearman,
                         double slope_se = 0.1) {
  CellSummary s;
  s.cell.num_categories = k;
  s.cell.sigma = sigma;
  s.cell.num_items = items;
  s.cell.sample_size = n;
  s.cell.replications = 5;
  s.replications_used = 5;
  s.mean_spearman = spearman;
  s.sd_spearman = 0.01;
  s.mean_slope = 0.8;
  s.sd_slope = 0.02;
  s.mean_slope_se = slope_se;
  s.sd_slope_se = 0.003;
  s.mean_bias = spearman - 0.9;
  s.sd_bias = 0.02;
  s.discards = 0;
  return s;
}

}  // namespace

TEST_CASE("format_value produces 9-significant-digit decimals", "[tables]") {
  CHECK(format_value(0.3) == "0.3");
  CHECK(format_value(2.0) == "2");
  CHECK(format_value(0.0) == "0");
  CHECK(format_value(-0.125) == "-0.125");
  CHECK(format_value(0.123456789123) == "0.123456789");
  CHECK(format_value(0.8944271909999159) == "0.894427191");
}

TEST_CASE("write_summaries emits the pinned schema in sorted order", "[tables]") {
  const auto dir = scratch_dir("csv");
  std::vector<CellSummary> summaries{
      fake_summary(5, 0.3, 1, 500, 0.93),
      fake_summary(2, 0.3, 1, 500, 0.80),
      fake_summary(5, 0.1, 3, 100, 0.97),
      fake_summary(2, 0.3, 1, 100, 0.81),
  };
  const auto path = write_summaries(summaries, dir);
  const std::string text = slurp(path);

  const auto first_line = text.substr(0, text.find('\n'));
  CHECK(first_line ==
        "k,sigma,items,n,replications,mean_spearman,sd_spearman,mean_slope,sd_slope,"
        "mean_slope_se,sd_slope_se,mean_bias,sd_bias,discards");

  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  REQUIRE(lines.size() == 5);
  CHECK(lines[1].rfind("2,0.3,1,100,", 0) == 0);
  CHECK(lines[2].rfind("2,0.3,1,500,", 0) == 0);
  CHECK(lines[3].rfind("5,0.1,3,100,", 0) == 0);
  CHECK(lines[4].rfind("5,0.3,1,500,", 0) == 0);

  // same input, byte-identical file
  const auto again = write_summaries(summaries, dir);
  CHECK(slurp(again) == text);

  std::filesystem::remove_all(dir);
}

TEST_CASE("cell_summaries.csv round trips to 9 significant digits", "[tables]") {
  const auto dir = scratch_dir("csv_rt");
  // values with awkward digits
  std::vector<CellSummary> summaries{
      fake_summary(7, 1.0 / 3.0, 1, 777, 0.87654321987, 0.0123456789),
      fake_summary(3, 0.7071067811865476, 3, 250, -0.5000000004, 123.456789),
  };
  summaries[0].discards = 3;
  const auto path = write_summaries(summaries, dir);
  const auto loaded = read_summaries(path);
  REQUIRE(loaded.size() == 2);

  const auto close9 = [](double a, double b) {
    return std::abs(a - b) <= 1e-8 * std::max({std::abs(a), std::abs(b), 1e-30});
  };
  // file order sorts (3,...) first
  CHECK(loaded[0].cell.num_categories == 3);
  CHECK(close9(loaded[0].cell.sigma, 0.7071067811865476));
  CHECK(close9(loaded[0].mean_spearman, -0.5000000004));
  CHECK(close9(loaded[0].mean_slope_se, 123.456789));
  CHECK(loaded[1].cell.num_categories == 7);
  CHECK(close9(loaded[1].cell.sigma, 1.0 / 3.0));
  CHECK(close9(loaded[1].mean_spearman, 0.87654321987));
  CHECK(loaded[1].discards == 3);
  CHECK(loaded[1].replications_used == 5);

  std::filesystem::remove_all(dir);
}

TEST_CASE("read_summaries rejects malformed files", "[tables]") {
  CHECK_THROWS_AS(read_summaries("/nonexistent.csv"), IoError);
  const auto dir = scratch_dir("csv_bad");
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "cell_summaries.csv");
    out << "k,sigma\n1,2\n";
  }
  CHECK_THROWS_AS(read_summaries(dir / "cell_summaries.csv"), IoError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("summarize_curves groups by sigma and orders by K", "[tables]") {
  std::vector<CellSummary> summaries;
  for (double sigma : {0.2, 0.5}) {
    for (int k : {10, 2, 5}) {  // deliberately unsorted
      summaries.push_back(fake_summary(k, sigma, 1, 100, 0.5 + 0.02 * k - sigma * 0.1));
    }
  }
  const CurveBundle bundle = summarize_curves(summaries, Metric::kSpearman);
  REQUIRE(bundle.series.size() == 2);
  CHECK(bundle.warnings.empty());
  for (const CurveSeries& s : bundle.series) {
    CHECK(s.k == std::vector<int>{2, 5, 10});
    CHECK(s.items == 1);
    CHECK(s.n == 100);
  }
  CHECK(bundle.series[0].group == "0.2");
  CHECK(bundle.series[1].group == "0.5");

  REQUIRE(bundle.argmax.size() == 2);
  CHECK(bundle.argmax[0].best_k == 10);
  CHECK(bundle.argmax[0].best_value ==
        Catch::Approx(0.5 + 0.2 - 0.02).margin(1e-12));
}

TEST_CASE("summarize_curves auto-detects dependency grids", "[tables]") {
  std::vector<CellSummary> summaries;
  for (int items : {1, 3}) {
    double sigma = 0.1;
    for (int k : {2, 3, 4, 5}) {
      summaries.push_back(fake_summary(k, sigma, items, 100, 0.9 - 0.01 * k));
      sigma += 0.1;  // one sigma per K, like a dependency run
    }
  }
  const CurveBundle bundle =
      summarize_curves(summaries, Metric::kSpearman, GroupBy::kAuto, "medium");
  REQUIRE(bundle.series.size() == 2);
  CHECK(bundle.series[0].group == "medium");
  CHECK(bundle.series[0].items == 1);
  CHECK(bundle.series[1].items == 3);
  CHECK(bundle.series[0].k.size() == 4);
}

TEST_CASE("single-K groups are excluded with a warning", "[tables]") {
  std::vector<CellSummary> summaries{
      fake_summary(2, 0.3, 1, 100, 0.8),
      fake_summary(5, 0.3, 1, 100, 0.9),
      fake_summary(5, 0.9, 1, 100, 0.7),  // only one K for sigma=0.9
  };
  const CurveBundle bundle =
      summarize_curves(summaries, Metric::kSpearman, GroupBy::kSigma);
  REQUIRE(bundle.series.size() == 1);
  REQUIRE(bundle.warnings.size() == 1);
  CHECK(bundle.warnings[0].find("0.9") != std::string::npos);
}

TEST_CASE("summarize_curves rejects duplicate K within a group", "[tables]") {
  std::vector<CellSummary> summaries{
      fake_summary(2, 0.3, 1, 100, 0.8),
      fake_summary(2, 0.9, 1, 100, 0.8),
  };
  CHECK_THROWS_AS(summarize_curves(summaries, Metric::kSpearman, GroupBy::kProfile),
                  ValidationError);
  CHECK_THROWS_AS(summarize_curves({}, Metric::kSpearman), ValidationError);
}

TEST_CASE("argmax respects the metric direction", "[tables]") {
  std::vector<CellSummary> summaries{
      fake_summary(2, 0.3, 1, 100, 0.8, 0.30),
      fake_summary(5, 0.3, 1, 100, 0.9, 0.10),
      fake_summary(9, 0.3, 1, 100, 0.85, 0.20),
  };
  const auto spearman_best =
      summarize_curves(summaries, Metric::kSpearman).argmax.at(0);
  CHECK(spearman_best.best_k == 5);
  const auto se_best = summarize_curves(summaries, Metric::kSlopeSe).argmax.at(0);
  CHECK(se_best.best_k == 5);  // minimized
  const auto bias_best = summarize_curves(summaries, Metric::kBias).argmax.at(0);
  CHECK(bias_best.best_k == 5);
}

TEST_CASE("argmax is invariant under increasing transforms", "[tables]") {
  std::vector<CellSummary> base{
      fake_summary(2, 0.3, 1, 100, 0.61),
      fake_summary(4, 0.3, 1, 100, 0.74),
      fake_summary(7, 0.3, 1, 100, 0.70),
      fake_summary(11, 0.3, 1, 100, 0.66),
  };
  auto transformed = base;
  for (auto& s : transformed) s.mean_spearman = std::exp(3.0 * s.mean_spearman + 1.0);
  const int k0 = summarize_curves(base, Metric::kSpearman).argmax.at(0).best_k;
  const int k1 = summarize_curves(transformed, Metric::kSpearman).argmax.at(0).best_k;
  CHECK(k0 == k1);
  CHECK(k0 == 4);
}

TEST_CASE("delta table telescopes the curve values", "[tables]") {
  std::vector<CellSummary> summaries{
      fake_summary(2, 0.3, 1, 100, 0.5),
      fake_summary(3, 0.3, 1, 100, 0.7),
      fake_summary(4, 0.3, 1, 100, 0.8),
  };
  const auto dir = scratch_dir("curve_tables");
  const auto bundle = summarize_curves(summaries, Metric::kSpearman);
  const auto paths = write_curve_tables(bundle, dir);
  REQUIRE(paths.size() == 3);

  const std::string deltas = slurp(paths[1]);
  CHECK(deltas.rfind("metric,group,items,n,k_from,k_to,delta\n", 0) == 0);
  CHECK(deltas.find("spearman,0.3,1,100,2,3,0.2\n") != std::string::npos);
  CHECK(deltas.find("spearman,0.3,1,100,3,4,0.1") != std::string::npos);

  const std::string argmax = slurp(paths[2]);
  CHECK(argmax.rfind("metric,group,items,n,best_k,best_value\n", 0) == 0);
  CHECK(argmax.find("spearman,0.3,1,100,4,0.8\n") != std::string::npos);

  // curve table round trip
  const auto [metric, series] = read_curve_table(paths[0]);
  CHECK(metric == "spearman");
  REQUIRE(series.size() == 1);
  CHECK(series[0].k == std::vector<int>{2, 3, 4});
  CHECK(series[0].group == "0.3");
  CHECK(series[0].value[1] == Catch::Approx(0.7).margin(1e-12));

  std::filesystem::remove_all(dir);
}

TEST_CASE("metric names round trip", "[tables]") {
  for (Metric m : {Metric::kSpearman, Metric::kSlope, Metric::kSlopeSe, Metric::kBias}) {
    CHECK(metric_from_name(metric_name(m)) == m);
  }
  CHECK_THROWS_AS(metric_from_name("nope"), ValidationError);
}

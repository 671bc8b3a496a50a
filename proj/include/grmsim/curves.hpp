#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "grmsim/csv.hpp"
#include "grmsim/engine.hpp"
#include "grmsim/errors.hpp"
#include "grmsim/stats.hpp"

namespace grmsim {

enum class Metric { kSpearman, kSlope, kSlopeSe, kBias };

inline std::string metric_name(Metric m) {
  switch (m) {
    case Metric::kSpearman: return "spearman";
    case Metric::kSlope: return "slope";
    case Metric::kSlopeSe: return "slope_se";
    case Metric::kBias: return "bias";
  }
  return "?";
}

inline Metric metric_from_name(const std::string& name) {
  if (name == "spearman") return Metric::kSpearman;
  if (name == "slope") return Metric::kSlope;
  if (name == "slope_se") return Metric::kSlopeSe;
  if (name == "bias") return Metric::kBias;
  throw ValidationError("metric: unknown metric \"" + name +
                        "\" (expected spearman, slope, slope_se, or bias)");
}

inline double metric_value(const CellSummary& s, Metric m) {
  switch (m) {
    case Metric::kSpearman: return s.mean_spearman;
    case Metric::kSlope: return s.mean_slope;
    case Metric::kSlopeSe: return s.mean_slope_se;
    case Metric::kBias: return s.mean_bias;
  }
  return 0.0;
}

// How cells are folded into curves: one line per sigma (independent-error
// grids) or one line per profile (dependency grids, where sigma varies
// along K). kAuto picks profile grouping when every (sigma, items, n)
// triple appears exactly once.
enum class GroupBy { kAuto, kSigma, kProfile };

// A metric-vs-K series for one (group, items, n) combination, K ascending.
struct CurveSeries {
  std::string group;
  double group_sigma = std::numeric_limits<double>::quiet_NaN();  // set for sigma groups
  int items = 0;
  int n = 0;
  std::vector<int> k;
  std::vector<double> value;
};

struct ArgmaxEntry {
  std::string group;
  int items = 0;
  int n = 0;
  int best_k = 0;
  double best_value = 0.0;
};

struct CurveBundle {
  Metric metric = Metric::kSpearman;
  std::vector<CurveSeries> series;
  std::vector<ArgmaxEntry> argmax;
  std::vector<std::string> warnings;  // one entry per excluded single-K group
};

namespace detail {

inline GroupBy detect_grouping(const std::vector<CellSummary>& summaries) {
  std::map<std::tuple<double, int, int>, int> per_sigma;
  for (const CellSummary& s : summaries) {
    ++per_sigma[{s.cell.sigma, s.cell.num_items, s.cell.sample_size}];
  }
  const bool all_single = std::all_of(per_sigma.begin(), per_sigma.end(),
                                      [](const auto& kv) { return kv.second == 1; });
  return all_single && !summaries.empty() ? GroupBy::kProfile : GroupBy::kSigma;
}

}  // namespace detail

// Folds cell summaries into per-group metric curves ordered by K, plus the
// best-K report (max of the metric, min for slope_se). Groups covering a
// single K carry no curve and are dropped with a warning record.
inline CurveBundle summarize_curves(const std::vector<CellSummary>& summaries,
                                    Metric metric, GroupBy group_by = GroupBy::kAuto,
                                    const std::string& profile_label = "profile") {
  if (summaries.empty()) {
    throw ValidationError("summarize_curves: no summaries");
  }
  if (group_by == GroupBy::kAuto) group_by = detail::detect_grouping(summaries);

  // key: (items, n, sigma-or-nan, label)
  using Key = std::tuple<int, int, double, std::string>;
  std::map<Key, std::map<int, double>> groups;
  for (const CellSummary& s : summaries) {
    Key key = group_by == GroupBy::kSigma
                  ? Key{s.cell.num_items, s.cell.sample_size, s.cell.sigma,
                        format_value(s.cell.sigma)}
                  : Key{s.cell.num_items, s.cell.sample_size, 0.0, profile_label};
    auto& curve = groups[key];
    if (!curve.emplace(s.cell.num_categories, metric_value(s, metric)).second) {
      throw ValidationError("summarize_curves: duplicate K=" +
                            std::to_string(s.cell.num_categories) + " within group " +
                            std::get<3>(key) + " items=" +
                            std::to_string(s.cell.num_items) + " n=" +
                            std::to_string(s.cell.sample_size));
    }
  }

  CurveBundle bundle;
  bundle.metric = metric;
  for (const auto& [key, curve] : groups) {
    const auto& [items, n, sigma, label] = key;
    if (curve.size() < 2) {
      bundle.warnings.push_back("group " + label + " items=" + std::to_string(items) +
                                " n=" + std::to_string(n) +
                                " covers a single K; excluded from curves");
      continue;
    }
    CurveSeries series;
    series.group = label;
    if (group_by == GroupBy::kSigma) series.group_sigma = sigma;
    series.items = items;
    series.n = n;
    for (const auto& [k, v] : curve) {
      series.k.push_back(k);
      series.value.push_back(v);
    }

    ArgmaxEntry best;
    best.group = label;
    best.items = items;
    best.n = n;
    const bool minimize = metric == Metric::kSlopeSe;
    std::size_t best_i = 0;
    for (std::size_t i = 1; i < series.value.size(); ++i) {
      if (minimize ? series.value[i] < series.value[best_i]
                   : series.value[i] > series.value[best_i]) {
        best_i = i;
      }
    }
    best.best_k = series.k[best_i];
    best.best_value = series.value[best_i];

    bundle.series.push_back(std::move(series));
    bundle.argmax.push_back(best);
  }
  return bundle;
}

inline constexpr const char* kCurveHeader = "metric,group,items,n,k,value";
inline constexpr const char* kDeltaHeader = "metric,group,items,n,k_from,k_to,delta";
inline constexpr const char* kArgmaxHeader = "metric,group,items,n,best_k,best_value";

// Writes curves_<metric>.csv, deltas_<metric>.csv and argmax_<metric>.csv;
// returns the three paths.
inline std::vector<std::filesystem::path> write_curve_tables(
    const CurveBundle& bundle, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  const std::string suffix = metric_name(bundle.metric);

  const auto open = [&](const std::string& name) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw IoError("cannot write " + (dir / name).string());
    return out;
  };

  std::vector<std::filesystem::path> paths;
  {
    auto out = open("curves_" + suffix + ".csv");
    out << kCurveHeader << '\n';
    for (const CurveSeries& s : bundle.series) {
      for (std::size_t i = 0; i < s.k.size(); ++i) {
        out << suffix << ',' << s.group << ',' << s.items << ',' << s.n << ','
            << s.k[i] << ',' << format_value(s.value[i]) << '\n';
      }
    }
    paths.push_back(dir / ("curves_" + suffix + ".csv"));
  }
  {
    auto out = open("deltas_" + suffix + ".csv");
    out << kDeltaHeader << '\n';
    for (const CurveSeries& s : bundle.series) {
      const std::vector<double> deltas = delta_series(s.value);
      for (std::size_t i = 0; i < deltas.size(); ++i) {
        out << suffix << ',' << s.group << ',' << s.items << ',' << s.n << ','
            << s.k[i] << ',' << s.k[i + 1] << ',' << format_value(deltas[i]) << '\n';
      }
    }
    paths.push_back(dir / ("deltas_" + suffix + ".csv"));
  }
  {
    auto out = open("argmax_" + suffix + ".csv");
    out << kArgmaxHeader << '\n';
    for (const ArgmaxEntry& a : bundle.argmax) {
      out << suffix << ',' << a.group << ',' << a.items << ',' << a.n << ','
          << a.best_k << ',' << format_value(a.best_value) << '\n';
    }
    paths.push_back(dir / ("argmax_" + suffix + ".csv"));
  }
  return paths;
}

// Reads a curves_<metric>.csv written by write_curve_tables. Series order
// and K order are taken from the file.
inline std::pair<std::string, std::vector<CurveSeries>> read_curve_table(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != kCurveHeader) {
    throw IoError(path.string() + ": unexpected header");
  }
  std::string metric;
  std::vector<CurveSeries> series;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = detail::split_csv_line(line);
    const std::string context = path.string() + ":" + std::to_string(line_no);
    if (fields.size() != 6) {
      throw IoError(context + ": expected 6 fields, got " +
                    std::to_string(fields.size()));
    }
    if (metric.empty()) {
      metric = fields[0];
    } else if (metric != fields[0]) {
      throw IoError(context + ": mixed metrics in one curve table");
    }
    const int items = static_cast<int>(detail::parse_int_field(fields[2], context));
    const int n = static_cast<int>(detail::parse_int_field(fields[3], context));
    CurveSeries* current = nullptr;
    if (!series.empty() && series.back().group == fields[1] &&
        series.back().items == items && series.back().n == n) {
      current = &series.back();
    } else {
      CurveSeries s;
      s.group = fields[1];
      s.items = items;
      s.n = n;
      series.push_back(std::move(s));
      current = &series.back();
    }
    current->k.push_back(static_cast<int>(detail::parse_int_field(fields[4], context)));
    current->value.push_back(detail::parse_double_field(fields[5], context));
  }
  return {metric, series};
}

}  // namespace grmsim

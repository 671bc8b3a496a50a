#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "grmsim/engine.hpp"
#include "grmsim/errors.hpp"

namespace grmsim {

inline constexpr const char* kSummaryHeader =
    "k,sigma,items,n,replications,mean_spearman,sd_spearman,mean_slope,sd_slope,"
    "mean_slope_se,sd_slope_se,mean_bias,sd_bias,discards";

// Locale-independent decimal with 9 significant digits (std::to_chars never
// consults the locale).
inline std::string format_value(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v,
                                 std::chars_format::general, 9);
  return std::string(buf, res.ptr);
}

inline std::string summary_row(const CellSummary& s) {
  std::string row;
  row += std::to_string(s.cell.num_categories);
  row += ',';
  row += format_value(s.cell.sigma);
  row += ',';
  row += std::to_string(s.cell.num_items);
  row += ',';
  row += std::to_string(s.cell.sample_size);
  row += ',';
  row += std::to_string(s.replications_used);
  for (double v : {s.mean_spearman, s.sd_spearman, s.mean_slope, s.sd_slope,
                   s.mean_slope_se, s.sd_slope_se, s.mean_bias, s.sd_bias}) {
    row += ',';
    row += format_value(v);
  }
  row += ',';
  row += std::to_string(s.discards);
  return row;
}

// Writes cell_summaries.csv: one row per cell, rows sorted by
// (k, sigma, items, n), so identical summaries always produce identical bytes.
inline std::filesystem::path write_summaries(std::vector<CellSummary> summaries,
                                             const std::filesystem::path& dir) {
  if (summaries.empty()) {
    throw ValidationError("write_summaries: no summaries to write");
  }
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);

  std::sort(summaries.begin(), summaries.end(),
            [](const CellSummary& a, const CellSummary& b) {
              const auto key = [](const CellSummary& s) {
                return std::make_tuple(s.cell.num_categories, s.cell.sigma,
                                       s.cell.num_items, s.cell.sample_size);
              };
              return key(a) < key(b);
            });

  const std::filesystem::path path = dir / "cell_summaries.csv";
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot write " + path.string());
  }
  out << kSummaryHeader << '\n';
  for (const CellSummary& s : summaries) out << summary_row(s) << '\n';
  if (!out) {
    throw IoError("failed writing " + path.string());
  }
  return path;
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

inline double parse_double_field(const std::string& s, const std::string& context) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw IoError(context + ": cannot parse number \"" + s + "\"");
  }
  return v;
}

inline long parse_int_field(const std::string& s, const std::string& context) {
  long v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw IoError(context + ": cannot parse integer \"" + s + "\"");
  }
  return v;
}

}  // namespace detail

// Reads a cell_summaries.csv back. cell_seed is not stored in the file and
// comes back as 0.
inline std::vector<CellSummary> read_summaries(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open " + path.string());
  }
  std::string line;
  if (!std::getline(in, line) || line != kSummaryHeader) {
    throw IoError(path.string() + ": unexpected header");
  }
  std::vector<CellSummary> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = detail::split_csv_line(line);
    const std::string context = path.string() + ":" + std::to_string(line_no);
    if (fields.size() != 14) {
      throw IoError(context + ": expected 14 fields, got " +
                    std::to_string(fields.size()));
    }
    CellSummary s;
    s.cell.num_categories = static_cast<int>(detail::parse_int_field(fields[0], context));
    s.cell.sigma = detail::parse_double_field(fields[1], context);
    s.cell.num_items = static_cast<int>(detail::parse_int_field(fields[2], context));
    s.cell.sample_size = static_cast<int>(detail::parse_int_field(fields[3], context));
    s.replications_used = static_cast<int>(detail::parse_int_field(fields[4], context));
    s.cell.replications = s.replications_used;
    s.mean_spearman = detail::parse_double_field(fields[5], context);
    s.sd_spearman = detail::parse_double_field(fields[6], context);
    s.mean_slope = detail::parse_double_field(fields[7], context);
    s.sd_slope = detail::parse_double_field(fields[8], context);
    s.mean_slope_se = detail::parse_double_field(fields[9], context);
    s.sd_slope_se = detail::parse_double_field(fields[10], context);
    s.mean_bias = detail::parse_double_field(fields[11], context);
    s.sd_bias = detail::parse_double_field(fields[12], context);
    s.discards = static_cast<int>(detail::parse_int_field(fields[13], context));
    out.push_back(s);
  }
  return out;
}

}  // namespace grmsim

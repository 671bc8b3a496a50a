#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "grmsim/curves.hpp"
#include "grmsim/errors.hpp"

namespace grmsim {
namespace svg_detail {

inline std::string fmt2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

inline std::string fmt_tick(double v) {
  char buf[32];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 6);
  return std::string(buf, res.ptr);
}

// Tick step of the form {1,2,5}*10^k giving roughly `target` divisions.
inline double nice_step(double span, int target) {
  const double raw = span / std::max(target, 1);
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double norm = raw / mag;
  double factor = 10.0;
  if (norm <= 1.0) factor = 1.0;
  else if (norm <= 2.0) factor = 2.0;
  else if (norm <= 5.0) factor = 5.0;
  return factor * mag;
}

inline std::vector<double> ticks(double lo, double hi, int target = 5) {
  const double step = nice_step(hi - lo, target);
  std::vector<double> out;
  double t = std::ceil(lo / step) * step;
  for (; t <= hi + step * 1e-9; t += step) {
    out.push_back(std::abs(t) < step * 1e-9 ? 0.0 : t);
  }
  return out;
}

struct Rgb {
  int r, g, b;
  std::string hex() const {
    char buf[8];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
    return buf;
  }
};

inline Rgb lerp(Rgb a, Rgb b, double t) {
  const auto mix = [t](int x, int y) {
    return static_cast<int>(std::lround(x + (y - x) * t));
  };
  return Rgb{mix(a.r, b.r), mix(a.g, b.g), mix(a.b, b.b)};
}

// Low error -> purple, high error -> yellow; named dependency strengths get
// fixed hues; anything else cycles a categorical palette.
inline std::map<std::string, std::string> assign_colors(
    const std::vector<CurveSeries>& series) {
  std::set<std::string> labels;
  std::map<std::string, double> sigma_of;
  bool all_sigma = true;
  for (const CurveSeries& s : series) {
    labels.insert(s.group);
    if (std::isnan(s.group_sigma)) {
      double v = 0.0;
      const auto res = std::from_chars(s.group.data(), s.group.data() + s.group.size(), v);
      if (res.ec == std::errc() && res.ptr == s.group.data() + s.group.size()) {
        sigma_of[s.group] = v;
      } else {
        all_sigma = false;
      }
    } else {
      sigma_of[s.group] = s.group_sigma;
    }
  }

  std::map<std::string, std::string> colors;
  const std::map<std::string, std::string> named = {
      {"small", "#1f77b4"}, {"medium", "#2ca02c"}, {"large", "#ff7f0e"}};
  const bool all_named = std::all_of(labels.begin(), labels.end(), [&](const auto& l) {
    return named.count(l) > 0;
  });
  if (all_named) {
    for (const auto& l : labels) colors[l] = named.at(l);
    return colors;
  }
  if (all_sigma && labels.size() > 1) {
    std::vector<std::pair<double, std::string>> ordered;
    for (const auto& [label, sigma] : sigma_of) ordered.emplace_back(sigma, label);
    std::sort(ordered.begin(), ordered.end());
    const Rgb purple{68, 1, 84}, yellow{253, 231, 37};
    for (std::size_t i = 0; i < ordered.size(); ++i) {
      const double t = static_cast<double>(i) / (ordered.size() - 1);
      colors[ordered[i].second] = lerp(purple, yellow, t).hex();
    }
    return colors;
  }
  const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                           "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  std::size_t i = 0;
  for (const auto& l : labels) colors[l] = palette[i++ % 10];
  return colors;
}

}  // namespace svg_detail

// Renders a faceted line chart (rows: item counts, columns: sample sizes,
// one line per group) as a self-contained SVG string. Output depends only
// on the input series, so identical tables give identical bytes.
inline std::string render_chart_svg(const std::string& metric,
                                    const std::vector<CurveSeries>& series) {
  using namespace svg_detail;
  if (series.empty()) {
    throw ValidationError("render_chart_svg: no series");
  }

  std::set<int> items_set, n_set;
  double x_lo = 1e300, x_hi = -1e300, y_lo = 1e300, y_hi = -1e300;
  for (const CurveSeries& s : series) {
    items_set.insert(s.items);
    n_set.insert(s.n);
    for (int k : s.k) {
      x_lo = std::min(x_lo, static_cast<double>(k));
      x_hi = std::max(x_hi, static_cast<double>(k));
    }
    for (double v : s.value) {
      y_lo = std::min(y_lo, v);
      y_hi = std::max(y_hi, v);
    }
  }
  if (y_hi - y_lo < 1e-12) {
    y_lo -= 0.5;
    y_hi += 0.5;
  } else {
    const double pad = 0.05 * (y_hi - y_lo);
    y_lo -= pad;
    y_hi += pad;
  }

  const std::vector<int> row_items(items_set.begin(), items_set.end());
  const std::vector<int> col_n(n_set.begin(), n_set.end());
  const auto colors = assign_colors(series);

  constexpr double facet_w = 300, facet_h = 220, gap = 18;
  constexpr double margin_left = 64, margin_top = 56, margin_bottom = 46;
  const double legend_w = 150;
  const double width = margin_left + col_n.size() * (facet_w + gap) + legend_w;
  const double height =
      margin_top + row_items.size() * (facet_h + gap) + margin_bottom;

  const auto facet_x = [&](std::size_t col) {
    return margin_left + col * (facet_w + gap);
  };
  const auto facet_y = [&](std::size_t row) {
    return margin_top + row * (facet_h + gap);
  };
  const auto sx = [&](double k, std::size_t col) {
    return facet_x(col) + (k - x_lo) / (x_hi - x_lo) * facet_w;
  };
  const auto sy = [&](double v, std::size_t row) {
    return facet_y(row) + facet_h - (v - y_lo) / (y_hi - y_lo) * facet_h;
  };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt2(width) +
         "\" height=\"" + fmt2(height) + "\" viewBox=\"0 0 " + fmt2(width) + " " +
         fmt2(height) + "\" font-family=\"Helvetica,Arial,sans-serif\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<text x=\"" + fmt2(width / 2) +
         "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" + metric +
         " vs number of response categories</text>\n";

  const auto x_ticks = ticks(x_lo, x_hi);
  const auto y_ticks = ticks(y_lo, y_hi);

  for (std::size_t row = 0; row < row_items.size(); ++row) {
    for (std::size_t col = 0; col < col_n.size(); ++col) {
      const double fx = facet_x(col), fy = facet_y(row);
      out += "<g class=\"facet\">\n";
      out += "<rect x=\"" + fmt2(fx) + "\" y=\"" + fmt2(fy) + "\" width=\"" +
             fmt2(facet_w) + "\" height=\"" + fmt2(facet_h) +
             "\" fill=\"none\" stroke=\"#888\" stroke-width=\"1\"/>\n";
      out += "<text x=\"" + fmt2(fx + facet_w / 2) + "\" y=\"" + fmt2(fy - 6) +
             "\" text-anchor=\"middle\" font-size=\"12\">items = " +
             std::to_string(row_items[row]) + ", N = " + std::to_string(col_n[col]) +
             "</text>\n";

      for (double t : y_ticks) {
        const double y = sy(t, row);
        out += "<line x1=\"" + fmt2(fx) + "\" y1=\"" + fmt2(y) + "\" x2=\"" +
               fmt2(fx + facet_w) + "\" y2=\"" + fmt2(y) +
               "\" stroke=\"#e4e4e4\" stroke-width=\"0.5\"/>\n";
        if (col == 0) {
          out += "<text x=\"" + fmt2(fx - 6) + "\" y=\"" + fmt2(y + 3.5) +
                 "\" text-anchor=\"end\" font-size=\"10\">" + fmt_tick(t) +
                 "</text>\n";
        }
      }
      for (double t : x_ticks) {
        const double x = sx(t, col);
        out += "<line x1=\"" + fmt2(x) + "\" y1=\"" + fmt2(fy + facet_h) +
               "\" x2=\"" + fmt2(x) + "\" y2=\"" + fmt2(fy + facet_h + 4) +
               "\" stroke=\"#888\" stroke-width=\"1\"/>\n";
        if (row + 1 == row_items.size()) {
          out += "<text x=\"" + fmt2(x) + "\" y=\"" + fmt2(fy + facet_h + 16) +
                 "\" text-anchor=\"middle\" font-size=\"10\">" + fmt_tick(t) +
                 "</text>\n";
        }
      }

      for (const CurveSeries& s : series) {
        if (s.items != row_items[row] || s.n != col_n[col]) continue;
        out += "<polyline fill=\"none\" stroke=\"" + colors.at(s.group) +
               "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.k.size(); ++i) {
          if (i) out += ' ';
          out += fmt2(sx(s.k[i], col)) + "," + fmt2(sy(s.value[i], row));
        }
        out += "\"/>\n";
      }
      out += "</g>\n";
    }
  }

  // axis titles
  out += "<text x=\"" + fmt2(margin_left + (width - margin_left - legend_w) / 2) +
         "\" y=\"" + fmt2(height - 12) +
         "\" text-anchor=\"middle\" font-size=\"12\">number of response categories"
         "</text>\n";
  out += "<text x=\"16\" y=\"" + fmt2(margin_top + (height - margin_top) / 2) +
         "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 16 " +
         fmt2(margin_top + (height - margin_top) / 2) + ")\">" + metric +
         "</text>\n";

  // legend
  const double lx = width - legend_w + 12;
  double ly = margin_top + 8;
  out += "<text x=\"" + fmt2(lx) + "\" y=\"" + fmt2(ly) +
         "\" font-size=\"11\" font-weight=\"bold\">group</text>\n";
  ly += 8;
  for (const auto& [label, color] : colors) {
    out += "<line x1=\"" + fmt2(lx) + "\" y1=\"" + fmt2(ly + 6) + "\" x2=\"" +
           fmt2(lx + 18) + "\" y2=\"" + fmt2(ly + 6) + "\" stroke=\"" + color +
           "\" stroke-width=\"2\"/>\n";
    out += "<text x=\"" + fmt2(lx + 24) + "\" y=\"" + fmt2(ly + 9.5) +
           "\" font-size=\"10\">" + label + "</text>\n";
    ly += 16;
  }

  out += "</svg>\n";
  return out;
}

// Writes chart_<metric>.svg into dir and returns its path.
inline std::filesystem::path render_chart_file(const std::string& metric,
                                               const std::vector<CurveSeries>& series,
                                               const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  const std::filesystem::path path = dir / ("chart_" + metric + ".svg");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << render_chart_svg(metric, series);
  if (!out) throw IoError("failed writing " + path.string());
  return path;
}

}  // namespace grmsim

// Command-line front end: validate configs, execute simulation grids, fold
// summaries into curve/delta/argmax tables, and render faceted SVG charts.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "grmsim/grmsim.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;
constexpr int kExitDegenerate = 4;

struct RunFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> replications;
  std::optional<int> workers;
  std::optional<std::string> out_dir;
  bool quick = false;
};

// Precedence: flags > file > defaults.
grmsim::RunConfig resolve_run_config(const RunFlags& flags) {
  grmsim::RunConfig config = grmsim::load_config_file(flags.config_path);
  if (flags.quick && !flags.replications) config.replications = 50;
  if (flags.replications) config.replications = *flags.replications;
  if (flags.seed) config.master_seed = *flags.seed;
  if (flags.workers) config.workers = *flags.workers;
  if (flags.out_dir) config.output_dir = *flags.out_dir;
  grmsim::finalize_config(config);
  return config;
}

int cmd_run(const RunFlags& flags) {
  const grmsim::RunConfig config = resolve_run_config(flags);
  const auto cells = grmsim::expand_grid(config);
  std::cerr << "running " << cells.size() << " cells x " << config.replications
            << " replications (seed " << config.master_seed << ")\n";
  const auto summaries =
      grmsim::run_grid(cells, config.predictor, config.master_seed, config.workers);
  grmsim::write_resolved_config(config, config.output_dir);
  const auto csv_path = grmsim::write_summaries(summaries, config.output_dir);
  std::cout << csv_path.string() << "\n";
  return 0;
}

int cmd_validate(const std::string& config_path) {
  grmsim::load_config_file(config_path);
  std::cout << "ok\n";
  return 0;
}

// Default group label for dependency-mode curves: the profile name from the
// resolved config sitting next to the summaries, when available.
std::string default_profile_label(const std::filesystem::path& summaries_path) {
  const auto sibling = summaries_path.parent_path() / "resolved_config.json";
  try {
    const grmsim::RunConfig config = grmsim::load_config_file(sibling);
    if (config.mode == grmsim::RunMode::kDependency) return config.profile_name;
  } catch (const std::exception&) {
  }
  return "profile";
}

int cmd_curves(const std::string& input, const std::string& metric_name,
               const std::string& group_by_name, std::string label,
               std::string out_dir) {
  const grmsim::Metric metric = grmsim::metric_from_name(metric_name);
  grmsim::GroupBy group_by = grmsim::GroupBy::kAuto;
  if (group_by_name == "sigma") group_by = grmsim::GroupBy::kSigma;
  else if (group_by_name == "profile") group_by = grmsim::GroupBy::kProfile;
  else if (group_by_name != "auto") {
    throw grmsim::ValidationError("--group-by: expected auto, sigma, or profile");
  }

  const std::filesystem::path input_path(input);
  if (label.empty()) label = default_profile_label(input_path);
  if (out_dir.empty()) out_dir = input_path.parent_path().string();

  const auto summaries = grmsim::read_summaries(input_path);
  const auto bundle = grmsim::summarize_curves(summaries, metric, group_by, label);
  for (const std::string& w : bundle.warnings) std::cerr << "warning: " << w << "\n";
  const auto paths = grmsim::write_curve_tables(bundle, out_dir);
  for (const auto& a : bundle.argmax) {
    std::cout << "group=" << a.group << " items=" << a.items << " n=" << a.n
              << " best_k=" << a.best_k << " value=" << grmsim::format_value(a.best_value)
              << "\n";
  }
  for (const auto& p : paths) std::cout << p.string() << "\n";
  return 0;
}

int cmd_chart(const std::vector<std::string>& inputs, std::string out_dir) {
  std::string metric;
  std::vector<grmsim::CurveSeries> series;
  for (const std::string& input : inputs) {
    auto [m, s] = grmsim::read_curve_table(input);
    if (metric.empty()) metric = m;
    if (!m.empty() && m != metric) {
      throw grmsim::ValidationError("chart: inputs mix metrics " + metric + " and " + m);
    }
    series.insert(series.end(), s.begin(), s.end());
  }
  if (series.empty()) {
    std::cerr << "notice: no curves in input; nothing to chart\n";
    return 0;
  }
  if (out_dir.empty()) {
    out_dir = std::filesystem::path(inputs.front()).parent_path().string();
  }
  const auto path = grmsim::render_chart_file(metric, series, out_dir);
  std::cout << path.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo study of ordinal response scales under the "
               "graded response model"};
  app.require_subcommand(1);

  RunFlags run_flags;
  auto* run = app.add_subcommand("run", "execute a simulation grid from a config file");
  run->add_option("--config", run_flags.config_path, "run config (JSON)")->required();
  std::uint64_t seed_opt = 0;
  auto* seed_flag = run->add_option("--seed", seed_opt, "override master seed");
  int reps_opt = 0;
  auto* reps_flag =
      run->add_option("--replications", reps_opt, "override replications per cell");
  int workers_opt = 0;
  auto* workers_flag = run->add_option("--workers", workers_opt,
                                       "worker threads (0 = hardware)");
  std::string out_opt;
  auto* out_flag = run->add_option("--out", out_opt, "output directory");
  run->add_flag("--quick", run_flags.quick, "quick mode: 50 replications per cell");

  std::string validate_config;
  auto* validate = app.add_subcommand("validate", "check a config file");
  validate->add_option("--config", validate_config, "run config (JSON)")->required();

  std::string curves_input, curves_metric = "spearman", curves_group = "auto";
  std::string curves_label, curves_out;
  auto* curves = app.add_subcommand(
      "curves", "fold cell summaries into curve, delta, and best-K tables");
  curves->add_option("--input", curves_input, "cell_summaries.csv path")->required();
  curves->add_option("--metric", curves_metric, "spearman | slope | slope_se | bias");
  curves->add_option("--group-by", curves_group, "auto | sigma | profile");
  curves->add_option("--label", curves_label, "group label for profile grouping");
  curves->add_option("--out", curves_out, "output directory (default: input's)");

  std::vector<std::string> chart_inputs;
  std::string chart_out;
  auto* chart = app.add_subcommand("chart", "render curve tables as a faceted SVG");
  chart->add_option("--input", chart_inputs, "curves_<metric>.csv; repeatable")
      ->required();
  chart->add_option("--out", chart_out, "output directory (default: first input's)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (*run) {
      if (*seed_flag) run_flags.seed = seed_opt;
      if (*reps_flag) run_flags.replications = reps_opt;
      if (*workers_flag) run_flags.workers = workers_opt;
      if (*out_flag) run_flags.out_dir = out_opt;
      return cmd_run(run_flags);
    }
    if (*validate) return cmd_validate(validate_config);
    if (*curves) {
      return cmd_curves(curves_input, curves_metric, curves_group, curves_label,
                        curves_out);
    }
    if (*chart) return cmd_chart(chart_inputs, chart_out);
  } catch (const grmsim::DegenerateInputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const grmsim::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const grmsim::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return 0;
}

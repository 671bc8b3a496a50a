#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <set>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "grmsim/errors.hpp"
#include "grmsim/response.hpp"
#include "grmsim/rng.hpp"
#include "grmsim/stats.hpp"
#include "grmsim/thresholds.hpp"

namespace grmsim {

// Predictor generated alongside each latent sample:
// x_i = coefficient * theta_i + N(0, noise_sd).
struct PredictorSpec {
  double coefficient = 0.5;
  double noise_sd = 0.2;
};

inline void validate_predictor_spec(const PredictorSpec& spec) {
  if (!(spec.noise_sd > 0.0)) {
    throw ValidationError("PredictorSpec: noise_sd must be > 0");
  }
}

// Slope an error-free continuous measure would attain after standardizing
// both sides: corr(theta, x) for theta ~ N(0,1). Reference point for bias.
inline double population_slope(const PredictorSpec& spec) {
  return spec.coefficient /
         std::sqrt(spec.coefficient * spec.coefficient + spec.noise_sd * spec.noise_sd);
}

// One grid point. cell_seed is derived by run_grid; cells built by hand for
// single-cell runs must set it (derive_cell_seed) before replication.
struct ConditionCell {
  int num_categories = 2;
  double sigma = 1.0;
  int num_items = 1;
  int sample_size = 100;
  int replications = 1;
  std::uint64_t cell_seed = 0;
};

inline void validate_cell(const ConditionCell& cell) {
  if (cell.num_categories < 2) {
    throw ValidationError("ConditionCell: num_categories must be >= 2");
  }
  if (!(cell.sigma > 0.0)) {
    throw ValidationError("ConditionCell: sigma must be > 0");
  }
  if (cell.num_items < 1) {
    throw ValidationError("ConditionCell: num_items must be >= 1");
  }
  if (cell.sample_size < 10) {
    throw ValidationError("ConditionCell: sample_size must be >= 10");
  }
  if (cell.replications < 1) {
    throw ValidationError("ConditionCell: replications must be >= 1");
  }
}

struct ReplicationResult {
  double spearman_true_obs = 0.0;
  double slope = 0.0;
  double slope_se = 0.0;
  double slope_bias = 0.0;
  int discarded_regenerations = 0;
};

struct CellSummary {
  ConditionCell cell;
  int replications_used = 0;
  int discards = 0;
  double mean_spearman = 0.0, sd_spearman = 0.0;
  double mean_slope = 0.0, sd_slope = 0.0;
  double mean_slope_se = 0.0, sd_slope_se = 0.0;
  double mean_bias = 0.0, sd_bias = 0.0;
};

namespace detail {

// A replication that produced a constant observed vector (possible at small
// K with extreme sigma) carries no rank information; it is discarded and
// redrawn from the next substream. Bounds the retry loop so a pathological
// cell fails loudly instead of spinning.
constexpr int kMaxRegenerations = 100;

struct Accumulator {
  double sum = 0.0, sumsq = 0.0;
  int n = 0;
  void add(double x) {
    sum += x;
    sumsq += x * x;
    ++n;
  }
  double mean() const { return sum / n; }
  double sd() const {
    if (n < 2) return 0.0;
    const double var = (sumsq - sum * sum / n) / (n - 1);
    return std::sqrt(var > 0.0 ? var : 0.0);
  }
};

}  // namespace detail

// Runs one seeded replication of a cell: latent draws, response generation,
// predictor, and both outcome statistics. A pure function of
// (cell_seed, rep_index), so replications can run in any order on any worker.
inline ReplicationResult run_replication(const ConditionCell& cell,
                                         const PredictorSpec& predictor_spec,
                                         std::uint64_t rep_index) {
  validate_cell(cell);
  validate_predictor_spec(predictor_spec);

  const Thresholds thresholds = make_thresholds(cell.num_categories);
  const std::vector<Item> items(static_cast<std::size_t>(cell.num_items),
                                Item{cell.sigma, thresholds});
  const std::size_t n = static_cast<std::size_t>(cell.sample_size);
  const double rho_ref = population_slope(predictor_spec);

  for (int attempt = 0; attempt < detail::kMaxRegenerations; ++attempt) {
    NormalStream stream(cell.cell_seed, rep_index, static_cast<std::uint64_t>(attempt));

    LatentSample theta(n);
    for (double& t : theta) t = stream.next();

    ResponseMatrix matrix = sample_response_matrix(theta, items, stream);

    std::vector<double> observed(n);
    for (std::size_t i = 0; i < n; ++i) {
      double row_sum = 0.0;
      for (std::size_t j = 0; j < matrix.num_items; ++j) row_sum += matrix.at(i, j);
      observed[i] = row_sum / static_cast<double>(matrix.num_items);
    }

    matrix.predictor.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      matrix.predictor[i] =
          predictor_spec.coefficient * theta[i] + stream.next(0.0, predictor_spec.noise_sd);
    }

    const auto [min_it, max_it] = std::minmax_element(observed.begin(), observed.end());
    if (*min_it == *max_it) continue;  // degenerate draw, try next substream

    ReplicationResult result;
    result.discarded_regenerations = attempt;
    result.spearman_true_obs = spearman(theta, observed);
    const RegressionResult fit =
        ols_simple(standardize(observed), standardize(matrix.predictor));
    result.slope = fit.slope;
    result.slope_se = fit.slope_se;
    result.slope_bias = fit.slope - rho_ref;
    return result;
  }
  throw DegenerateInputError(
      "run_replication: cell produced only constant responses after " +
      std::to_string(detail::kMaxRegenerations) + " attempts (K=" +
      std::to_string(cell.num_categories) + ", sigma=" + std::to_string(cell.sigma) +
      ", N=" + std::to_string(cell.sample_size) + ")");
}

// All replications of one cell, aggregated.
inline CellSummary summarize_cell(const ConditionCell& cell,
                                  const PredictorSpec& predictor_spec) {
  detail::Accumulator spearman_acc, slope_acc, se_acc, bias_acc;
  int discards = 0;
  for (int rep = 0; rep < cell.replications; ++rep) {
    const ReplicationResult r =
        run_replication(cell, predictor_spec, static_cast<std::uint64_t>(rep));
    spearman_acc.add(r.spearman_true_obs);
    slope_acc.add(r.slope);
    se_acc.add(r.slope_se);
    bias_acc.add(r.slope_bias);
    discards += r.discarded_regenerations;
  }

  CellSummary s;
  s.cell = cell;
  s.replications_used = cell.replications;
  s.discards = discards;
  s.mean_spearman = spearman_acc.mean();
  s.sd_spearman = spearman_acc.sd();
  s.mean_slope = slope_acc.mean();
  s.sd_slope = slope_acc.sd();
  s.mean_slope_se = se_acc.mean();
  s.sd_slope_se = se_acc.sd();
  s.mean_bias = bias_acc.mean();
  s.sd_bias = bias_acc.sd();
  return s;
}

// Runs every cell, deriving per-cell seeds from the master seed and cell
// parameters. Cells are independent work units; the result is a pure
// function of (cells, predictor_spec, master_seed) regardless of worker
// count or scheduling. Summaries come back in input order.
inline std::vector<CellSummary> run_grid(std::vector<ConditionCell> cells,
                                         const PredictorSpec& predictor_spec,
                                         std::uint64_t master_seed, int workers = 0) {
  if (cells.empty()) {
    throw ValidationError("run_grid: empty cell list");
  }
  validate_predictor_spec(predictor_spec);

  std::set<std::tuple<int, std::uint64_t, int, int>> seen;
  for (ConditionCell& cell : cells) {
    validate_cell(cell);
    const auto key = std::make_tuple(cell.num_categories,
                                     std::bit_cast<std::uint64_t>(cell.sigma),
                                     cell.num_items, cell.sample_size);
    if (!seen.insert(key).second) {
      throw ValidationError("run_grid: duplicate cell (K=" +
                            std::to_string(cell.num_categories) + ", sigma=" +
                            std::to_string(cell.sigma) + ", items=" +
                            std::to_string(cell.num_items) + ", n=" +
                            std::to_string(cell.sample_size) + ")");
    }
    cell.cell_seed = derive_cell_seed(master_seed, cell.num_categories, cell.sigma,
                                      cell.num_items, cell.sample_size);
  }

  if (workers <= 0) {
    workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers <= 0) workers = 1;
  }
  workers = std::min<int>(workers, static_cast<int>(cells.size()));

  std::vector<CellSummary> summaries(cells.size());
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      try {
        summaries[i] = summarize_cell(cells[i], predictor_spec);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);
  return summaries;
}

}  // namespace grmsim

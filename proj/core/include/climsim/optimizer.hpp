#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "climsim/calibration.hpp"
#include "climsim/levers.hpp"
#include "climsim/scenario.hpp"

namespace climsim::opt {

struct Objective {
  double temperature_weight = 1.0;
  double budget_penalty_weight = 0.0;
  double price_volatility_weight = 0.0;

  void validate() const;  // ConfigError: negative weight or all zero
};

struct Metrics {
  double delta_T_2100 = 0.0;
  double cumulative_budget = 0.0;  // $
  double price_amplitude = 0.0;    // $/kWh
  double objective_value = 0.0;
};

/// w_T * dT + w_B * max(0, -cumulative) / norm_B + w_P * amplitude / norm_P.
double objective_value(const Objective& o, double delta_T, double cumulative_budget, double price_amplitude);

/// One engine run with the lever vector substituted into the base scenario.
Metrics evaluate(const ScenarioSpec& base, const LeverVector& levers, const Objective& objective,
                 const Calibration& cal);
Metrics evaluate(const ScenarioSpec& base, const LeverVector& levers, const Objective& objective);

struct Bound {
  std::string lever_id;
  double lo = 0.0;
  double hi = 0.0;
};

/// Taxes, subsidies and the carbon price at their registry ranges.
std::vector<Bound> default_bounds();

struct OptimizeOptions {
  std::vector<Bound> bounds = default_bounds();
  std::uint64_t seed = 42;
  long max_evals = 2000;
  int restarts = 2;             // random starts after the initial point
  int coarse_points = 11;       // per line search, endpoints included
  double tolerance = 1e-9;      // golden-section width relative to the bound range
  int max_sweeps = 50;
  unsigned threads = 1;         // parallel evaluation of each coarse scan
  std::function<void(long evals, const Metrics& best)> progress;
  const std::atomic<bool>* cancel = nullptr;
};

struct EvalRecord {
  long index = 0;
  std::vector<double> values;  // in bound order
  Metrics metrics;
  double best_so_far = 0.0;
};

struct OptimizeResult {
  std::vector<std::string> lever_ids;  // bound order
  std::vector<double> best_values;
  LeverVector best;
  Metrics best_metrics;
  std::vector<EvalRecord> log;
};

/// Lever values in bound order -> metrics. Lets tests inject analytic functions.
using EvalFn = std::function<Metrics(const std::vector<double>&)>;

/// Cyclic coordinate descent: each coordinate is searched by a coarse scan
/// followed by golden-section refinement around the best scan point, then the
/// sweep repeats until no coordinate improves. Restarts from seeded random
/// points. ConfigError for infeasible bounds.
OptimizeResult optimize(const EvalFn& eval, const std::vector<double>& start, const OptimizeOptions& options);

/// Engine optimization starting from the base scenario's lever values.
OptimizeResult optimize(const ScenarioSpec& base, const Objective& objective, const OptimizeOptions& options,
                        const Calibration& cal);
OptimizeResult optimize(const ScenarioSpec& base, const Objective& objective, const OptimizeOptions& options);

/// eval_index, lever values, metrics, best_so_far.
std::string eval_log_csv(const OptimizeResult& result);

/// Optimizer request document:
/// {"objective": {...weights}, "bounds": {id: [lo, hi]}, "seed", "max_evals",
///  "restarts", "base": scenario}. Every key optional.
struct OptimizeRequest {
  Objective objective{1.0, 10.0, 0.0};
  OptimizeOptions options;
  ScenarioSpec base;
};
OptimizeRequest parse_optimize_request(const std::string& json_text);

std::string metrics_to_json(const Metrics& m);

}  // namespace climsim::opt

#include "climsim/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <nlohmann/json.hpp>
#include <random>
#include <thread>

#include "climsim/engine.hpp"
#include "climsim/error.hpp"
#include "climsim/run_io.hpp"
#include "climsim/text.hpp"

namespace climsim::opt {

void Objective::validate() const {
  const double w[] = {temperature_weight, budget_penalty_weight, price_volatility_weight};
  bool any = false;
  for (double x : w) {
    if (!std::isfinite(x) || x < 0.0) throw ConfigError("objective weights must be finite and non-negative");
    any = any || x > 0.0;
  }
  if (!any) throw ConfigError("objective needs at least one positive weight");
}

double objective_value(const Objective& o, double delta_T, double cumulative_budget, double price_amplitude) {
  const auto& norm = LeverRegistry::instance().normalization();
  return o.temperature_weight * delta_T +
         o.budget_penalty_weight * std::max(0.0, -cumulative_budget) / norm.budget_usd +
         o.price_volatility_weight * price_amplitude / norm.price_usd_per_kwh;
}

Metrics evaluate(const ScenarioSpec& base, const LeverVector& levers, const Objective& objective,
                 const Calibration& cal) {
  ScenarioSpec spec = base;
  spec.levers = levers;
  const auto run = run_simulation(spec, cal);
  Metrics m;
  m.delta_T_2100 = run.series("delta_T_C").values.back();
  m.cumulative_budget = run.series("budget_cumulative").values.back();
  m.price_amplitude = price_amplitude(run);
  m.objective_value = objective_value(objective, m.delta_T_2100, m.cumulative_budget, m.price_amplitude);
  return m;
}

Metrics evaluate(const ScenarioSpec& base, const LeverVector& levers, const Objective& objective) {
  return evaluate(base, levers, objective, default_calibration());
}

std::vector<Bound> default_bounds() {
  const auto& reg = LeverRegistry::instance();
  std::vector<Bound> b;
  for (const char* id : {"carbon_price", "coal_tax", "oil_tax", "gas_tax", "bio_subsidy", "renewable_subsidy",
                         "nuclear_subsidy", "nzc_subsidy"}) {
    const auto& d = reg.find(id);
    b.push_back({d.id, d.min, d.max});
  }
  return b;
}

namespace {

struct Exhausted {};

class Search {
 public:
  Search(const EvalFn& eval, const OptimizeOptions& o) : eval_(eval), o_(o) {}

  double f(const std::vector<double>& x) {
    std::vector<std::vector<double>> one{x};
    return batch(one).front();
  }

  // Evaluates points in order; uncached ones may run concurrently but are
  // logged in input order.
  std::vector<double> batch(const std::vector<std::vector<double>>& xs) {
    std::vector<double> out(xs.size());
    std::vector<std::size_t> todo;
    for (std::size_t k = 0; k < xs.size(); ++k) {
      auto it = cache_.find(xs[k]);
      if (it != cache_.end()) {
        out[k] = it->second.objective_value;
      } else if (std::find_if(todo.begin(), todo.end(), [&](std::size_t j) { return xs[j] == xs[k]; }) ==
                 todo.end()) {
        todo.push_back(k);
      }
    }
    const long remaining = o_.max_evals - static_cast<long>(log_.size());
    const bool truncated = static_cast<long>(todo.size()) > remaining;
    if (truncated) todo.resize(static_cast<std::size_t>(std::max(0L, remaining)));

    std::vector<Metrics> results(todo.size());
    const unsigned threads = std::max(1u, std::min<unsigned>(o_.threads, static_cast<unsigned>(todo.size())));
    if (threads <= 1) {
      for (std::size_t j = 0; j < todo.size(); ++j) results[j] = eval_(xs[todo[j]]);
    } else {
      std::vector<std::thread> pool;
      std::vector<std::exception_ptr> errors(threads);
      for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
          try {
            for (std::size_t j = w; j < todo.size(); j += threads) results[j] = eval_(xs[todo[j]]);
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
      for (auto& t : pool) t.join();
      for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
      }
    }
    for (std::size_t j = 0; j < todo.size(); ++j) record(xs[todo[j]], results[j]);
    if (truncated) throw Exhausted{};
    for (std::size_t k = 0; k < xs.size(); ++k) out[k] = cache_.at(xs[k]).objective_value;
    if (o_.cancel != nullptr && o_.cancel->load()) throw Exhausted{};
    return out;
  }

  const std::vector<EvalRecord>& log() const { return log_; }
  const std::vector<double>& best_x() const { return best_x_; }
  const Metrics& best_metrics() const { return best_m_; }

 private:
  void record(const std::vector<double>& x, const Metrics& m) {
    cache_.emplace(x, m);
    if (log_.empty() || m.objective_value < best_m_.objective_value) {
      best_m_ = m;
      best_x_ = x;
    }
    log_.push_back({static_cast<long>(log_.size()), x, m, best_m_.objective_value});
    if (o_.progress) o_.progress(static_cast<long>(log_.size()), best_m_);
  }

  const EvalFn& eval_;
  const OptimizeOptions& o_;
  std::map<std::vector<double>, Metrics> cache_;
  std::vector<EvalRecord> log_;
  std::vector<double> best_x_;
  Metrics best_m_;
};

double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Returns the best coordinate value and objective along axis i.
std::pair<double, double> line_search(Search& s, std::vector<double> x, std::size_t i, const Bound& b,
                                      const OptimizeOptions& o) {
  const int m = std::max(2, o.coarse_points);
  const double range = b.hi - b.lo;
  std::vector<double> grid(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) grid[static_cast<std::size_t>(k)] = b.lo + range * k / (m - 1);
  grid.back() = b.hi;
  std::vector<std::vector<double>> pts;
  for (double g : grid) {
    x[i] = g;
    pts.push_back(x);
  }
  const auto fs = s.batch(pts);
  std::size_t j = static_cast<std::size_t>(std::min_element(fs.begin(), fs.end()) - fs.begin());
  double best_t = grid[j];
  double best_f = fs[j];

  double a = grid[j == 0 ? 0 : j - 1];
  double c = grid[std::min(j + 1, grid.size() - 1)];
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  auto probe = [&](double t) {
    x[i] = t;
    const double v = s.f(x);
    if (v < best_f) {
      best_f = v;
      best_t = t;
    }
    return v;
  };
  double x1 = c - g * (c - a);
  double x2 = a + g * (c - a);
  double f1 = probe(x1);
  double f2 = probe(x2);
  while ((c - a) > o.tolerance * range) {
    if (f1 <= f2) {
      c = x2;
      x2 = x1;
      f2 = f1;
      x1 = c - g * (c - a);
      f1 = probe(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (c - a);
      f2 = probe(x2);
    }
  }
  return {best_t, best_f};
}

void validate_bounds(const std::vector<Bound>& bounds, long max_evals) {
  if (bounds.empty()) throw ConfigError("optimizer needs at least one lever bound");
  if (max_evals < 1) throw ConfigError("max_evals must be at least 1");
  for (const auto& b : bounds) {
    if (!std::isfinite(b.lo) || !std::isfinite(b.hi) || b.lo > b.hi) {
      throw ConfigError("infeasible bounds for " + b.lever_id);
    }
  }
}

}  // namespace

OptimizeResult optimize(const EvalFn& eval, const std::vector<double>& start, const OptimizeOptions& options) {
  validate_bounds(options.bounds, options.max_evals);
  const auto& bounds = options.bounds;
  if (start.size() != bounds.size()) throw ConfigError("start point does not match the bounds");

  Search search(eval, options);
  std::mt19937_64 rng(options.seed);
  std::vector<std::vector<double>> starts;
  {
    auto x = start;
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], bounds[i].lo, bounds[i].hi);
    starts.push_back(x);
  }
  for (int r = 0; r < options.restarts; ++r) {
    std::vector<double> x(bounds.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = bounds[i].lo + unit_uniform(rng) * (bounds[i].hi - bounds[i].lo);
    starts.push_back(x);
  }

  try {
    for (auto x : starts) {
      double fx = search.f(x);
      for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
        bool improved = false;
        for (std::size_t i = 0; i < x.size(); ++i) {
          if (bounds[i].lo == bounds[i].hi) continue;
          const auto [t, ft] = line_search(search, x, i, bounds[i], options);
          if (ft < fx) {
            improved = improved || (fx - ft) > 1e-14 * std::max(1.0, std::abs(fx));
            x[i] = t;
            fx = ft;
          }
        }
        if (!improved) break;
      }
    }
  } catch (const Exhausted&) {
  }

  OptimizeResult result;
  for (const auto& b : bounds) result.lever_ids.push_back(b.lever_id);
  result.best_values = search.best_x();
  result.best_metrics = search.best_metrics();
  result.log = search.log();
  return result;
}

OptimizeResult optimize(const ScenarioSpec& base, const Objective& objective, const OptimizeOptions& options,
                        const Calibration& cal) {
  objective.validate();
  validate_bounds(options.bounds, options.max_evals);
  const auto& reg = LeverRegistry::instance();
  std::vector<std::size_t> idx;
  std::vector<double> start;
  for (const auto& b : options.bounds) {
    const auto* d = reg.try_find(b.lever_id);
    if (d == nullptr) throw ConfigError("unknown lever in bounds: " + b.lever_id);
    if (b.lo < d->min || b.hi > d->max) throw ConfigError("bounds for " + b.lever_id + " exceed the registry range");
    idx.push_back(reg.index_of(b.lever_id));
    start.push_back(base.levers[idx.back()]);
  }
  EvalFn eval = [&](const std::vector<double>& v) {
    LeverVector levers = base.levers;
    for (std::size_t k = 0; k < v.size(); ++k) levers.set_index(idx[k], v[k]);
    try {
      return evaluate(base, levers, objective, cal);
    } catch (const Error& e) {
      std::string where;
      for (std::size_t k = 0; k < v.size(); ++k) where += " " + options.bounds[k].lever_id + "=" + format_number(v[k]);
      throw Error(std::string(e.what()) + " for levers" + where);
    }
  };
  auto result = optimize(eval, start, options);
  result.best = base.levers;
  for (std::size_t k = 0; k < idx.size() && k < result.best_values.size(); ++k) {
    result.best.set_index(idx[k], result.best_values[k]);
  }
  return result;
}

OptimizeResult optimize(const ScenarioSpec& base, const Objective& objective, const OptimizeOptions& options) {
  return optimize(base, objective, options, default_calibration());
}

std::string eval_log_csv(const OptimizeResult& result) {
  std::string out = "eval_index";
  for (const auto& id : result.lever_ids) out += "," + id;
  out += ",delta_T_2100,cumulative_budget,price_amplitude,objective_value,best_so_far\n";
  for (const auto& r : result.log) {
    out += std::to_string(r.index);
    for (double v : r.values) out += "," + format_number(v);
    out += "," + format_number(r.metrics.delta_T_2100) + "," + format_number(r.metrics.cumulative_budget) + "," +
           format_number(r.metrics.price_amplitude) + "," + format_number(r.metrics.objective_value) + "," +
           format_number(r.best_so_far) + "\n";
  }
  return out;
}

OptimizeRequest parse_optimize_request(const std::string& json_text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError("", std::string("malformed optimize request: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("", "optimize request must be an object");
  OptimizeRequest req;
  auto number = [](const json& j, const std::string& field) {
    if (!j.is_number()) throw ValidationError(field, "'" + field + "' must be a number");
    return j.get<double>();
  };
  auto whole = [&](const json& j, const std::string& field) {
    const double x = number(j, field);
    if (x != std::floor(x)) throw ValidationError(field, "'" + field + "' must be a whole number");
    return x;
  };
  for (const auto& [key, value] : doc.items()) {
    if (key == "objective") {
      if (!value.is_object()) throw ValidationError(key, "'objective' must be an object");
      for (const auto& [wk, wv] : value.items()) {
        const std::string field = "objective." + wk;
        if (wk == "temperature_weight") req.objective.temperature_weight = number(wv, field);
        else if (wk == "budget_penalty_weight") req.objective.budget_penalty_weight = number(wv, field);
        else if (wk == "price_volatility_weight") req.objective.price_volatility_weight = number(wv, field);
        else throw ValidationError(field, "unknown key '" + field + "'");
      }
    } else if (key == "bounds") {
      if (!value.is_object()) throw ValidationError(key, "'bounds' must be an object");
      req.options.bounds.clear();
      const auto& reg = LeverRegistry::instance();
      for (const auto& [id, range] : value.items()) {
        const auto* d = reg.try_find(id);
        if (d == nullptr) throw ValidationError(id, "unknown lever '" + id + "' in bounds");
        if (!range.is_array() || range.size() != 2) throw ValidationError(id, "bounds must be [lo, hi]");
        Bound b{id, number(range[0], id), number(range[1], id)};
        if (b.lo > b.hi || b.lo < d->min || b.hi > d->max) {
          throw ValidationError(id, "bounds for '" + id + "' must lie within [" + format_number(d->min) + ", " +
                                        format_number(d->max) + "] with lo <= hi");
        }
        req.options.bounds.push_back(b);
      }
      if (req.options.bounds.empty()) throw ValidationError(key, "'bounds' must name at least one lever");
    } else if (key == "seed") {
      const double s = whole(value, key);
      if (s < 0) throw ValidationError(key, "'seed' must be non-negative");
      req.options.seed = static_cast<std::uint64_t>(s);
    } else if (key == "max_evals") {
      const double n = whole(value, key);
      if (n < 1 || n > 1e7) throw ValidationError(key, "'max_evals' must be in [1, 1e7]");
      req.options.max_evals = static_cast<long>(n);
    } else if (key == "restarts") {
      const double n = whole(value, key);
      if (n < 0 || n > 1000) throw ValidationError(key, "'restarts' must be in [0, 1000]");
      req.options.restarts = static_cast<int>(n);
    } else if (key == "base") {
      req.base = parse_scenario(value.dump());
    } else if (key == "preset") {
      if (!value.is_string()) throw ValidationError(key, "'preset' must be a string");
      try {
        req.base = load_preset(value.get<std::string>());
      } catch (const LookupError& e) {
        throw ValidationError(key, e.what());
      }
    } else {
      throw ValidationError(key, "unknown key '" + key + "'");
    }
  }
  try {
    req.objective.validate();
  } catch (const ConfigError& e) {
    throw ValidationError("objective", e.what());
  }
  return req;
}

std::string metrics_to_json(const Metrics& m) {
  nlohmann::ordered_json j = {{"delta_T_2100", m.delta_T_2100},
                              {"cumulative_budget", m.cumulative_budget},
                              {"price_amplitude", m.price_amplitude},
                              {"objective_value", m.objective_value}};
  return j.dump();
}

}  // namespace climsim::opt

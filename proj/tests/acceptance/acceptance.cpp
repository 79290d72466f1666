// Acceptance suite: one PASS/FAIL line per primary criterion, non-zero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <regex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "climsim/calibration.hpp"
#include "climsim/climate.hpp"
#include "climsim/energy_market.hpp"
#include "climsim/engine.hpp"
#include "climsim/optimizer.hpp"
#include "climsim/reference.hpp"
#include "climsim/run_io.hpp"
#include "climsim/scenario.hpp"

using namespace climsim;

namespace {

using Clock = std::chrono::steady_clock;

std::filesystem::path source_dir() { return CLIMSIM_SOURCE_DIR; }
std::filesystem::path data_dir() { return source_dir() / "data"; }

const Calibration& cal() {
  static const Calibration c = load_calibration(data_dir());
  return c;
}

std::map<std::string, RunResult>& cache() {
  static std::map<std::string, RunResult> runs;
  return runs;
}

const RunResult& preset(const std::string& id) {
  auto it = cache().find(id);
  if (it == cache().end()) it = cache().emplace(id, run_simulation(load_preset(id, data_dir()), cal())).first;
  return it->second;
}

double end_T(const RunResult& r) { return r.series("delta_T_C").values.back(); }

std::string fmt(double x, int precision = 4) {
  std::ostringstream s;
  s << std::setprecision(precision) << x;
  return s.str();
}

class Criterion {
 public:
  explicit Criterion(int number, std::string title) : number_(number), title_(std::move(title)) {}

  void within(const std::string& what, double value, double target, double tol) {
    add(what + " = " + fmt(value) + " (target " + fmt(target) + " +/- " + fmt(tol) + ")",
        std::abs(value - target) <= tol);
  }
  void holds(const std::string& what, bool ok) { add(what, ok); }

  bool report() const {
    const bool ok = std::all_of(checks_.begin(), checks_.end(), [](const auto& c) { return c.second; });
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << number_ << ": " << title_ << "\n";
    for (const auto& [what, pass] : checks_) std::cout << "    [" << (pass ? "ok" : "MISS") << "] " << what << "\n";
    return ok;
  }

 private:
  void add(std::string what, bool ok) { checks_.emplace_back(std::move(what), ok); }
  int number_;
  std::string title_;
  std::vector<std::pair<std::string, bool>> checks_;
};

ScenarioSpec with(const std::string& lever, double value) {
  ScenarioSpec s;
  s.levers.set(lever, value);
  return s;
}

bool strictly_increasing(const std::vector<double>& v) {
  for (std::size_t k = 1; k < v.size(); ++k) {
    if (!(v[k] > v[k - 1])) return false;
  }
  return true;
}

double relative_change(const RunResult& run, const RunResult& base, const std::string& source) {
  const std::string id = "energy_EJ_" + source;
  return 100.0 * (run.at(id, 2100) / base.at(id, 2100) - 1.0);
}

Criterion baseline() {
  Criterion c(1, "baseline warming, rising CO2, run time");
  const auto& base = preset("baseline");
  c.within("baseline dT2100 [C]", end_T(base), 3.3, 0.2);
  c.holds("co2_ppm strictly increasing", strictly_increasing(base.series("co2_ppm").values));
  std::vector<double> ms;
  for (int i = 0; i < 7; ++i) {
    const auto t0 = Clock::now();
    const auto r = run_simulation(ScenarioSpec{}, cal());
    ms.push_back(std::chrono::duration<double, std::milli>(Clock::now() - t0).count());
  }
  std::sort(ms.begin(), ms.end());
  c.holds("median full run " + fmt(ms[3], 3) + " ms < 200 ms", ms[3] < 200.0);
  return c;
}

Criterion sensitivity() {
  Criterion c(2, "climate sensitivity sweep");
  c.within("S=4.5 dT2100 [C]", end_T(preset("sensitivity_4_5")), 4.6, 0.3);
  std::vector<double> t;
  for (double s : {1.5, 3.0, 4.5}) t.push_back(end_T(run_simulation(with("climate_sensitivity", s), cal())));
  c.holds("dT2100 monotone over S in {1.5, 3, 4.5}: " + fmt(t[0]) + " < " + fmt(t[1]) + " < " + fmt(t[2]),
          t[0] < t[1] && t[1] < t[2]);
  return c;
}

Criterion growth() {
  Criterion c(3, "population and growth scenarios");
  const double a = end_T(preset("growth_8_8b_2_5pct"));
  const double b = end_T(preset("growth_10_4b_2_5pct"));
  const double d = end_T(preset("growth_12_4b_1_5pct"));
  c.within("8.8B, 2.5% dT2100 [C]", a, 3.5, 0.2);
  c.within("10.4B, 2.5% dT2100 [C]", b, 3.7, 0.2);
  c.within("12.4B, 1.5% dT2100 [C]", d, 3.4, 0.2);
  c.holds("ordering 12.4B/1.5% < 8.8B/2.5% < 10.4B/2.5%", d < a && a < b);
  return c;
}

Criterion reductions() {
  Criterion c(4, "regional reductions and peak pledge");
  const double T0 = end_T(preset("baseline"));
  c.within("US -10%/yr from 2050 dT2100 [C]", end_T(preset("us_reduction_10pct")), 3.2, 0.1);
  c.within("US + China dT2100 [C]", end_T(preset("us_china_reduction")), 2.9, 0.15);
  c.within("global 2050 peak delta [C]", end_T(preset("global_peak_2050")) - T0, -0.1, 0.05);
  return c;
}

Criterion sea_level() {
  Criterion c(5, "sea level and flood exposure");
  const auto& base = preset("baseline");
  const auto& m18 = preset("melt_0_18");
  c.within("flood risk at 0.18 m melt [M people]", m18.at("flood_risk_people", 2100), 399, 5);
  c.within("flood risk delta [M people]", m18.at("flood_risk_people", 2100) - base.at("flood_risk_people", 2100),
           25, 2);
  c.within("below-high-tide delta [M people]",
           m18.at("below_high_tide_people", 2100) - base.at("below_high_tide_people", 2100), 24, 2);
  bool identical = m18 == preset("melt_0_18_greenland");
  for (double split : {0.0, 0.3}) {
    auto a = with("ice_melt_2100", 0.18);
    a.levers.set("melt_split_greenland", split);
    auto b = a;
    b.levers.set("melt_split_greenland", 1.0 - split);
    identical = identical && run_simulation(a, cal()) == run_simulation(b, cal());
  }
  c.holds("Greenland/Antarctica split permutations bit-identical", identical);
  return c;
}

Criterion n2o() {
  Criterion c(6, "India N2O table and China+India reduction");
  std::ifstream in(source_dir() / "paper.md");
  const std::regex row(R"(^(\d{4})\t([0-9.]+)\t([0-9.]+)\s*$)");
  const auto ref = load_reference("india_n2o", data_dir());
  std::string line;
  std::smatch m;
  int rows = 0;
  int exact = 0;
  while (std::getline(in, line)) {
    if (!std::regex_match(line, m, row)) continue;
    ++rows;
    try {
      const double y = std::stod(m[1]);
      if (ref.value(y, "baseline_mt") == std::stod(m[2]) && ref.value(y, "scenario_mt") == std::stod(m[3])) ++exact;
    } catch (const std::exception&) {
    }
  }
  c.holds("table rows matched exactly: " + std::to_string(exact) + "/" + std::to_string(rows) + " (101 expected)",
          rows == 101 && exact == 101 && ref.years.size() == 101);
  const auto& base = preset("baseline");
  const auto& ci = preset("china_india_reduction_10pct");
  c.within("India N2O gap at 2100 [Mt]", base.at("n2o_mt_india", 2100) - ci.at("n2o_mt_india", 2100), 2.7, 0.5);
  c.within("China+India offset [C]", end_T(base) - end_T(ci), 0.4, 0.15);
  return c;
}

Criterion land_use() {
  Criterion c(7, "afforestation and deforestation prevention");
  const auto& aff = preset("afforestation_china_us_eu");
  c.within("gross afforestation removal 2100 [GtCO2/yr]", aff.at("afforestation_gross_GtCO2", 2100), 2.0, 0.3);
  c.within("net afforestation removal 2100 [GtCO2/yr]", aff.at("land_removal_GtCO2", 2100), 1.0, 0.3);
  c.within("cumulative avoided deforestation [GtCO2]",
           cumulative_avoided(preset("deforestation_prevention_developing"), preset("baseline"),
                              "deforestation_GtCO2", 2100),
           112, 15);
  return c;
}

Criterion energy_market() {
  Criterion c(8, "energy-market elasticities");
  const auto& base = preset("baseline");
  c.within("bio $10/BOE bioenergy change [%]", relative_change(preset("bio_subsidy_10"), base, "bioenergy"), 11, 3);
  c.within("bio $30/BOE bioenergy change [%]", relative_change(preset("bio_subsidy_30"), base, "bioenergy"), 37, 5);
  c.within("renewables $0.02/kWh change [%]",
           relative_change(preset("renewable_subsidy_0_02"), base, "renewables"), 30, 5);
  c.within("renewables $0.03/kWh change [%]",
           relative_change(preset("renewable_subsidy_0_03"), base, "renewables"), 50, 8);
  const double e0 = base.at("energy_total_EJ", 2100);
  const auto& cp40 = preset("carbon_price_40");
  const double e40 = cp40.at("energy_total_EJ", 2100);
  c.holds("$40: 2100 energy within 5% of baseline (" + fmt(100.0 * (e40 / e0 - 1.0), 3) + "%)",
          std::abs(e40 / e0 - 1.0) <= 0.05);
  c.holds("$40: renewables share exceeds coal share in 2100",
          cp40.at("share_renewables", 2100) > cp40.at("share_coal", 2100));
  c.holds("$250: 2100 energy strictly below baseline", preset("carbon_price_250").at("energy_total_EJ", 2100) < e0);
  const double early = cumulative_avoided(preset("coal_reduction_2030"), base, "co2_fossil_GtCO2", 2100);
  const double late = cumulative_avoided(preset("coal_reduction_2050"), base, "co2_fossil_GtCO2", 2100);
  c.holds("coal cut from 2030 avoids more CO2 than from 2050 (" + fmt(early) + " > " + fmt(late) + " GtCO2)",
          early > late);
  return c;
}

Criterion timing() {
  Criterion c(9, "late policies change little");
  const auto& base = preset("baseline");
  c.holds("oil tax from 2060 |delta dT2100| = " + fmt(std::abs(end_T(preset("oil_tax_85_from_2060")) - end_T(base))) +
              " <= 0.1",
          std::abs(end_T(preset("oil_tax_85_from_2060")) - end_T(base)) <= 0.1);
  const auto& e = preset("nzc_breakthrough_2060").series("energy_total_EJ").values;
  const auto& b = base.series("energy_total_EJ").values;
  double worst = 0.0;
  for (std::size_t k = 0; k < e.size(); ++k) worst = std::max(worst, std::abs(e[k] / b[k] - 1.0));
  c.holds("2060 breakthrough energy within 5% every year (max " + fmt(100.0 * worst, 3) + "%)", worst <= 0.05);
  return c;
}

Criterion volatility() {
  Criterion c(10, "electricity price volatility");
  const double a = price_amplitude(preset("carbon_price_250_immediate"));
  const double b = price_amplitude(preset("carbon_price_250_ramp_30"));
  c.holds("immediate amplitude " + fmt(a) + " > 30-yr ramp amplitude " + fmt(b) + " $/kWh", a > b);
  return c;
}

Criterion government_budget() {
  Criterion c(11, "government budget presets");
  const auto& heavy = preset("heavy_government");
  const auto x = budget_crossover_year(heavy);
  c.holds("heavy-government crossover year " + (x ? std::to_string(*x) : std::string("none")) + " in 2050 +/- 3",
          x && std::abs(*x - 2050) <= 3);
  c.within("heavy-government dT2100 [C]", end_T(heavy), 2.3, 0.2);
  const auto& opt = preset("optimized_government");
  c.within("optimized dT2100 [C]", end_T(opt), 2.5, 0.2);
  const double budget = opt.series("budget_cumulative").values.back();
  c.holds("optimized cumulative budget " + fmt(budget * 1e-12) + " T$ >= 0", budget >= 0.0);
  return c;
}

Criterion arctic() {
  Criterion c(12, "ice-free Arctic probability");
  const auto& base = preset("baseline");
  const auto& tax = preset("carbon_price_250");
  const double ratio = tax.at("arctic_ice_free_probability", 2100) / base.at("arctic_ice_free_probability", 2100);
  c.holds("$250 p2100 ratio " + fmt(ratio) + " <= 0.6", ratio <= 0.6);
  c.within("$250 p2050 drop [fraction]",
           base.at("arctic_ice_free_probability", 2050) - tax.at("arctic_ice_free_probability", 2050), 0.07, 0.03);
  return c;
}

Criterion properties() {
  Criterion c(13, "numerical and optimizer properties");

  // Carbon conservation over random perturbed states.
  {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    CarbonCycleParams p = cal().carbon;
    for (int k = 0; k < 2000; ++k) {
      auto s = climate::equilibrium_carbon_state(p);
      s.atmosphere *= 1.0 + u(rng);
      s.mixed_layer *= 1.0 + 0.05 * u(rng);
      for (double& d : s.deep) d *= 1.0 + 0.01 * u(rng);
      s.biosphere *= 0.95 + 0.1 * u(rng);
      const double e = -2.0 + 22.0 * u(rng);
      const double dt = 0.25;
      const auto n = climate::carbon_cycle_step(s, p, e, dt);
      worst = std::max(worst, std::abs(n.total() - s.total() - e * dt) / s.total());
    }
    c.holds("carbon conservation relative error " + fmt(worst, 3) + " <= 1e-9", worst <= 1e-9);
  }

  // Grid refinement over every preset.
  {
    double worst = 0.0;
    std::string worst_id;
    for (const auto& info : list_presets(data_dir())) {
      auto spec = load_preset(info.id, data_dir());
      const double coarse = end_T(run_simulation(spec, cal()));
      spec.grid.dt /= 2.0;
      const double fine = end_T(run_simulation(spec, cal()));
      if (std::abs(coarse - fine) > worst) {
        worst = std::abs(coarse - fine);
        worst_id = info.id;
      }
    }
    c.holds("max |dT2100(dt) - dT2100(dt/2)| = " + fmt(worst, 3) + " C (" + worst_id + ") < 0.02", worst < 0.02);
  }

  // Determinism.
  {
    bool same = true;
    for (const char* id : {"baseline", "heavy_government", "afforestation_china_us_eu"}) {
      const auto spec = load_preset(id, data_dir());
      same = same && run_simulation(spec, cal()) == run_simulation(spec, cal());
    }
    c.holds("bit-identical reruns", same);
  }

  // Softmax invariants, on a domain where no share rounds to exactly 0 or 1.
  {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    bool ok = true;
    for (int k = 0; k < 2000 && ok; ++k) {
      const std::size_t n = 2 + rng() % 6;
      std::vector<double> costs(n);
      for (double& x : costs) x = 20.0 * u(rng);
      const double beta = 0.01 + 0.49 * u(rng);
      const auto s = energy::softmax_shares(costs, beta);
      ok = ok && std::abs(std::accumulate(s.begin(), s.end(), 0.0) - 1.0) < 1e-12;
      auto shifted = costs;
      for (double& x : shifted) x += 17.0;
      const auto s2 = energy::softmax_shares(shifted, beta);
      for (std::size_t i = 0; i < n; ++i) ok = ok && std::abs(s2[i] - s[i]) < 1e-12;
      auto raised = costs;
      raised[0] += 1.0;
      ok = ok && energy::softmax_shares(raised, beta)[0] < s[0];
    }
    c.holds("softmax sums to 1, shift-invariant, monotone", ok);
  }

  // Coordinate descent against a brute-force grid on three levers.
  {
    const ScenarioSpec base;
    const opt::Objective obj{1.0, 1.0, 0.0};
    opt::OptimizeOptions o;
    o.bounds = {{"carbon_price", 0.0, 250.0}, {"renewable_subsidy", 0.0, 0.1}, {"coal_tax", 0.0, 200.0}};
    const auto r = opt::optimize(base, obj, o, cal());
    double grid_best = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 4; ++i) {
      for (int j = 0; j <= 4; ++j) {
        for (int k = 0; k <= 4; ++k) {
          LeverVector v = base.levers;
          v.set("carbon_price", 62.5 * i);
          v.set("renewable_subsidy", 0.025 * j);
          v.set("coal_tax", 50.0 * k);
          grid_best = std::min(grid_best, opt::evaluate(base, v, obj, cal()).objective_value);
        }
      }
    }
    c.holds("optimizer objective " + fmt(r.best_metrics.objective_value, 6) + " <= 5^3 grid best " +
                fmt(grid_best, 6),
            r.best_metrics.objective_value <= grid_best + 1e-9);
  }

  // Default optimizer job.
  {
    auto req = opt::parse_optimize_request("{}");
    req.options.threads = std::max(1u, std::thread::hardware_concurrency());
    const auto t0 = Clock::now();
    const auto r = opt::optimize(req.base, req.objective, req.options, cal());
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    const auto& m = r.best_metrics;
    c.holds("default job dT2100 " + fmt(m.delta_T_2100) + " <= 2.6", m.delta_T_2100 <= 2.6);
    c.holds("default job cumulative budget " + fmt(m.cumulative_budget * 1e-12) + " T$ >= 0",
            m.cumulative_budget >= 0.0);
    c.holds("default job evals " + std::to_string(r.log.size()) + " <= 10000", r.log.size() <= 10000);
    c.holds("default job runtime " + fmt(secs, 3) + " s <= 300 s", secs <= 300.0);
  }
  return c;
}

}  // namespace

int main() {
  try {
    std::cout << "calibration checksum " << cal().checksum << "\n";
    const Criterion all[] = {baseline(), sensitivity(), growth(),     reductions(),        sea_level(),
                             n2o(),      land_use(),        energy_market(), timing(),         volatility(),
                             government_budget(),       arctic(),     properties()};
    int failed = 0;
    for (const auto& c : all) failed += c.report() ? 0 : 1;
    std::cout << (failed == 0 ? "all primary criteria passed" : std::to_string(failed) + " criteria failed") << "\n";
    return failed == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "acceptance aborted: " << e.what() << "\n";
    return 2;
  }
}

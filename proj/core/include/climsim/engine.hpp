#pragma once

#include <map>
#include <string>
#include <vector>

#include "climsim/budget.hpp"
#include "climsim/calibration.hpp"
#include "climsim/climate.hpp"
#include "climsim/emissions.hpp"
#include "climsim/energy_market.hpp"
#include "climsim/land.hpp"
#include "climsim/scenario.hpp"

namespace climsim {

/// Lever values resolved into the typed parameters of each subsystem.
struct Settings {
  double dt = 0.25;
  climate::ClimateParams climate;
  climate::MeltScenario melt;
  emissions::DriverAssumptions drivers;
  energy::FuelPolicy fuel;
  energy::BreakthroughSpec breakthrough;
  energy::DemandParams demand;
  energy::CoalReduction coal;
  PerRegion<emissions::EmissionPolicy> emission_policy;
  land::ForestPolicy forest;
  double ag_methane_cut_pct = 0.0;
  double methane_policy_start = 2025.0;
  double methane_policy_years = 10.0;
};

Settings resolve_settings(const ScenarioSpec& spec, const Calibration& cal);

/// Per-region flows of the most recent step.
struct EmissionsCache {
  PerRegion<double> fossil_co2_gt{};   // after regional policy
  PerRegion<double> baseline_co2_gt{}; // before regional policy
  PerRegion<double> n2o_mt{};
  PerRegion<double> ch4_mt{};
  PerRegion<double> land_co2_gt{};     // deforestation minus net afforestation removal
};

struct WorldState {
  double time = 1990.0;
  long step = 0;
  climate::CarbonCycleState carbon;
  climate::ClimateState climate;
  climate::SeaLevelState sea;
  energy::EnergyMarketState energy;
  land::LandUseState land;
  budget::BudgetState budget;
  double n2o_burden_mt = 0.0;  // anthropogenic excess
  double ch4_burden_mt = 0.0;
  PerRegion<emissions::PolicyAnchors> anchors;
  EmissionsCache emissions_cache;
};

/// Every flow evaluated from one start-of-step state, in subsystem order:
/// emissions, energy market, land, carbon cycle, forcing and temperature,
/// sea level, budget.
struct Diagnostics {
  double time = 0.0;
  // emissions drivers
  PerRegion<double> population_billion{};
  PerRegion<double> gdp_trillion{};
  PerRegion<double> raw_demand_ej{};
  PerRegion<emissions::PolicyAnchors> anchors;
  EmissionsCache regional;
  double fossil_co2_gt = 0.0;
  double n2o_total_mt = 0.0;
  double ch4_total_mt = 0.0;
  // energy
  PerSource<double> effective_costs{};
  PerSource<double> base_costs{};
  PerSource<double> desired_shares{};
  PerSource<double> quantities_ej{};
  double demand_ej = 0.0;
  double energy_co2_gt = 0.0;
  double electricity_price = 0.0;
  double building_multiplier = 1.0;
  // land
  land::LandFlows land;
  double deforestation_gt = 0.0;
  double gross_removal_gt = 0.0;
  double net_removal_gt = 0.0;
  // carbon and climate
  double net_emissions_gtc = 0.0;
  double co2_ppm = 0.0;
  double nonco2_forcing = 0.0;
  double forcing = 0.0;
  double dT_dt = 0.0;
  double arctic_probability = 0.0;
  // sea level
  double thermal_rise_mm_per_yr = 0.0;
  land::Exposure exposure;
  // budget
  budget::BudgetState budget;
};

/// Calibrated 1990 stocks. ConfigError when the calibration lacks them and
/// ValidationError when the grid does not start at the calibration year.
WorldState build_initial_state(const ScenarioSpec& spec, const Calibration& cal);
WorldState build_initial_state(const ScenarioSpec& spec);

Diagnostics diagnose(const WorldState& s, const Settings& settings, const Calibration& cal);

/// Applies one explicit Euler step using flows evaluated at the start of the step.
WorldState advance(const WorldState& s, const Diagnostics& d, const Settings& settings, const Calibration& cal,
                   double dt);

/// diagnose + advance. NumericFailure names the subsystem producing a
/// non-finite value.
WorldState step_once(const WorldState& s, const ScenarioSpec& spec, const Calibration& cal);
WorldState step_once(const WorldState& s, const ScenarioSpec& spec);

struct Series {
  std::string id;
  std::string units;
  std::vector<double> values;  // one per calendar year of the grid
};

/// Annual outputs of one run.
class RunResult {
 public:
  RunResult() = default;
  RunResult(int start_year, int end_year);

  int start_year() const noexcept { return start_year_; }
  int end_year() const noexcept { return end_year_; }
  std::vector<int> years() const;

  Series& add(std::string id, std::string units);
  bool has(const std::string& id) const { return index_.count(id) != 0; }
  const Series& series(const std::string& id) const;  // LookupError
  const std::vector<Series>& all() const noexcept { return series_; }

  /// Exact stored value; LookupError for an unknown output or off-grid year.
  double at(const std::string& id, double year) const;

  /// Subset in canonical order, independent of the requested order.
  RunResult project(const std::vector<std::string>& ids) const;

  friend bool operator==(const RunResult& a, const RunResult& b);

 private:
  int start_year_ = 1990;
  int end_year_ = 2100;
  std::vector<Series> series_;
  std::map<std::string, std::size_t> index_;
};

double sample_output(const RunResult& result, const std::string& output_id, double year);

struct OutputInfo {
  std::string id;
  std::string units;
};
/// Every output id produced by run_simulation, in canonical order.
const std::vector<OutputInfo>& output_catalog();

RunResult run_simulation(const ScenarioSpec& spec, const Calibration& cal);
RunResult run_simulation(const ScenarioSpec& spec);

}  // namespace climsim

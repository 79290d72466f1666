#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "climsim/piecewise.hpp"
#include "climsim/types.hpp"

namespace climsim {

inline constexpr int kCalibrationSchemaVersion = 1;

/// Carbon-cycle structure: atmosphere, buffered mixed layer, eddy-diffusion
/// deep stack and a single biosphere box. Deep layers hold the mixed-layer
/// concentration per metre at pre-industrial equilibrium.
struct CarbonCycleParams {
  double mixed_layer_depth_m = 100.0;
  std::array<double, 4> deep_layer_thickness_m = {300.0, 600.0, 1200.0, 1600.0};
  double mixed_layer_preindustrial_gtc = 1000.0;
  double biosphere_preindustrial_gtc = 2200.0;
  double buffer_factor = 9.7;
  double atm_mixed_exchange_yr = 3.0;
  double eddy_diffusivity_m2_per_yr = 4400.0;
  double biosphere_uptake_per_yr = 0.02;  // GtC/yr per GtC of atmospheric excess
  double biosphere_turnover_yr = 30.0;

  double atmosphere_preindustrial_gtc() const { return units::kPreindustrialPpm * units::kGtCPerPpm; }
  double deep_preindustrial_gtc(std::size_t layer) const {
    return mixed_layer_preindustrial_gtc / mixed_layer_depth_m * deep_layer_thickness_m[layer];
  }
};

struct SeaLevelParams {
  double a_mm_per_yr_per_C = 3.4;
  double b_mm_per_C = 0.0;
  double T0_C = -0.5;
};

struct ArcticParams {
  double steepness_per_C = 3.0;
  double midpoint_C = 2.6;
};

struct NonCO2Params {
  PiecewiseLinear other_forcing = PiecewiseLinear::constant(0.0);  // W/m2, aerosols + halocarbons
  double n2o_lifetime_yr = 116.0;
  double ch4_lifetime_yr = 12.0;
  double n2o_forcing_per_mt = 0.0;  // W/m2 per Mt of excess burden
  double ch4_forcing_per_mt = 0.0;
  double n2o_elasticity = 0.25;
  double n2o_floor = 0.5;
  double ch4_elasticity = 0.3;
  double ch4_floor = 0.5;
  double ch4_agricultural_fraction = 0.4;
  PerRegion<PiecewiseLinear> n2o_baseline_mt;  // India replaced by the bundled reference table
  PerRegion<PiecewiseLinear> ch4_baseline_mt;
};

/// One row of the regional snapshot (data/regions.csv).
struct RegionData {
  double pop_1990_billion = 0.0;
  double pop_2020_billion = 0.0;
  double pop_2100_reference_billion = 0.0;
  double pop_increment_weight = 0.0;
  double gdppc_1990_k = 0.0;  // thousand 2017 PPP $ per person
  double gdppc_2020_k = 0.0;
  double gdppc_growth_offset_pct = 0.0;  // relative to the global lever, decays after 2020
  double energy_intensity_1990 = 0.0;  // MJ per $ (EJ per T$)
  double energy_intensity_2020 = 0.0;
  double energy_intensity_decline_pct = 0.0;  // after 2020
  PiecewiseLinear carbon_intensity_rel = PiecewiseLinear::constant(1.0);
  std::array<double, kLandTypeCount> land_mha{};
  double max_afforestable_mha = 0.0;
};

struct DriverParams {
  PerRegion<RegionData> regions;
  double reference_population_2100_billion = 10.4;
  double reference_growth_pct = 1.5;
  double projection_start_year = 2020.0;
  double population_shape_yr = 35.0;
  double growth_offset_decay_yr = 40.0;
  double growth_efficiency_coupling = 0.5;  // share of extra per-capita growth offset by intensity decline
  double intensity_decline_adjust_pct = 0.0;
};

struct EnergyParams {
  PerSource<PiecewiseLinear> base_cost;  // $/GJ, no policy
  PerSource<double> emission_factor{};   // tCO2/GJ
  PerSource<double> initial_shares{};
  double beta = 0.064;  // 1/($/GJ)
  double capital_adjustment_yr = 8.0;
  double demand_price_elasticity = 0.2;
  double shortage_premium = 1.0;
  double electricity_markup = 4.0;  // delivered $/kWh per ($/GJ * GJ/kWh)
  double efficiency_affected_share = 0.4;
  double building_lifetime_yr = 40.0;
  double covid_demand_drop = 0.045;
};

struct ExposurePoint {
  double sea_level_m = 0.0;
  double at_risk_million = 0.0;
  double below_high_tide_million = 0.0;
};

struct LandParams {
  PerRegion<PiecewiseLinear> deforestation_baseline_gtco2;
  double forest_carbon_density_tco2_per_ha = 500.0;
  double peak_uptake_tco2_per_ha_yr = 10.0;
  double uptake_peak_age_yr = 20.0;
  double steady_uptake_fraction = 0.3;
  double uptake_decline_yr = 30.0;
  double planting_period_yr = 30.0;
  double leakage_fraction = 0.5;
  std::vector<ExposurePoint> exposure;
};

/// Stocks at the start of the grid (1990), produced by the historical spin-up.
struct InitialStocks {
  double year = 1990.0;
  double atmosphere_gtc = 0.0;
  double mixed_layer_gtc = 0.0;
  std::array<double, 4> deep_gtc{};
  double biosphere_gtc = 0.0;
  double delta_T_C = 0.0;
  double n2o_burden_mt = 0.0;
  double ch4_burden_mt = 0.0;
};

struct Calibration {
  std::string version;
  double f2x = 3.7;
  double heat_capacity = 8.0;  // W yr m^-2 C^-1
  CarbonCycleParams carbon;
  SeaLevelParams sea;
  ArcticParams arctic;
  NonCO2Params nonco2;
  DriverParams drivers;
  EnergyParams energy;
  LandParams land;
  InitialStocks initial;
  std::string checksum;  // digest of the calibration text as loaded
};

/// Ordered key/value view of the calibration text format:
/// `key = value` lines, `#` comments, keys unique.
class KeyValueDocument {
 public:
  static KeyValueDocument parse(const std::string& text);
  const std::string& get(const std::string& key) const;
  double number(const std::string& key) const;
  bool contains(const std::string& key) const { return values_.count(key) != 0; }
  void set(const std::string& key, std::string value);
  void set(const std::string& key, double value);
  const std::vector<std::string>& keys() const noexcept { return order_; }
  std::string to_string(const std::string& header = {}) const;

 private:
  std::map<std::string, std::string> values_;
  std::vector<std::string> order_;
};

/// Directory holding calibration.txt, regions.csv, reference/ and presets/.
/// Resolution order: $CLIMSIM_DATA_DIR, then the build-time default.
std::filesystem::path default_data_dir();

Calibration load_calibration(const std::filesystem::path& data_dir);

/// Process-wide calibration loaded once from default_data_dir(); immutable.
const Calibration& default_calibration();

/// Serialises every fitted/structural parameter (regional snapshot excluded).
std::string calibration_to_text(const Calibration& cal);

void apply_calibration_text(Calibration& cal, const std::string& text);

/// Regional snapshot and bundled reference tables (everything the
/// calibration text does not carry).
void load_snapshot(Calibration& cal, const std::filesystem::path& data_dir);

/// Parses data/regions.csv into the driver and land tables.
void load_regions_csv(Calibration& cal, const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace climsim

#pragma once

#include <optional>
#include <vector>

#include "climsim/calibration.hpp"

namespace climsim::energy {

/// Linear phase-in: 0 before start, full_value after start + duration.
/// A zero duration is a step at start.
double policy_ramp(double full_value, double year, double ramp_start, double ramp_duration);

struct FuelPolicy {
  double coal_tax = 0.0;           // $/TCE
  double oil_tax = 0.0;            // $/BOE
  double gas_tax = 0.0;            // $/MCF
  double bio_subsidy = 0.0;        // $/BOE
  double renewable_subsidy = 0.0;  // $/kWh
  double nuclear_subsidy = 0.0;    // $/kWh
  double nzc_subsidy = 0.0;        // $/kWh
  double carbon_price = 0.0;       // $/tCO2
  double ramp_start = 2025.0;
  double ramp_duration = 0.0;
};

struct BreakthroughSpec {
  bool enabled = false;
  double start_year = 2040.0;
  double years_to_mass_market = 7.0;
  double initial_price_multiple_of_coal = 2.0;
};

struct DemandParams {
  double new_building_efficiency_gain_pct = 0.0;
  double retrofit_rate_pct = 0.0;
  double max_retrofit_potential = 0.5;
  double covid_shock_years = 3.0;
  double policy_start = 2025.0;
};

struct CoalReduction {
  double eventual_pct = 0.0;
  double start_year = 2030.0;
  double ramp_years = 20.0;
};

/// Per-GJ excise on each source at year (ramped), $/GJ; zero for untaxed sources.
PerSource<double> tax_per_gj(const FuelPolicy& policy, double year);
/// Per-GJ subsidy on each source at year (ramped), $/GJ.
PerSource<double> subsidy_per_gj(const FuelPolicy& policy, double year);
double carbon_price_at(const FuelPolicy& policy, double year);

bool source_active(EnergySource s, double year, const BreakthroughSpec& bt);

/// Declines linearly from multiple x coal to coal parity over the mass-market window.
double nzc_base_cost(const EnergyParams& p, double year, const BreakthroughSpec& bt);

/// No-policy cost, $/GJ; nullopt for an inactive source.
std::optional<double> base_cost(const EnergyParams& p, EnergySource s, double year, const BreakthroughSpec& bt);

/// Base + tax - subsidy + carbon price x emission factor; nullopt when inactive.
std::optional<double> effective_cost(const EnergyParams& p, EnergySource s, double year, const FuelPolicy& policy,
                                     const BreakthroughSpec& bt);

/// Max-shifted softmax of -beta * cost.
std::vector<double> softmax_shares(const std::vector<double>& costs, double beta);

/// Softmax over the active sources; inactive sources get share 0.
PerSource<double> market_shares(const PerSource<std::optional<double>>& costs, double beta);

/// Scales coal by (1 - cut) and reassigns the removed share to the other
/// sources in proportion to their shares.
PerSource<double> apply_coal_cut(const PerSource<double>& shares, double cut_fraction);
double coal_cut_fraction(const CoalReduction& c, double year);

/// Energy intensity of the building stock relative to pre-policy buildings.
struct BuildingStock {
  double intensity = 1.0;
  double retrofitted_fraction = 0.0;
};

/// New buildings enter at (1 - gain)^(years since start); the stock turns over
/// with the building lifetime and retrofits convert existing stock to the new
/// standard until the retrofitted fraction reaches the potential.
BuildingStock building_step(const BuildingStock& b, const DemandParams& d, double lifetime_yr, double year,
                            double dt);
double new_building_intensity(const DemandParams& d, double year);
double building_multiplier(const BuildingStock& b, double affected_share);

double covid_multiplier(double year, double shock_years, double drop);

/// exp(-elasticity * wedge / base_average) with wedge the average policy markup.
double price_response(double wedge_per_gj, double base_average_per_gj, double elasticity);

/// Demand after efficiency, shock and price effects, EJ/yr.
double final_energy_demand(double raw_demand_ej, double building_mult, double covid_mult, double price_mult);

struct EnergyMarketState {
  double demand_EJ = 0.0;
  PerSource<double> shares{};          // realized, lag the desired shares
  PerSource<double> desired_shares{};
  PerSource<double> effective_costs{}; // $/GJ, 0 for inactive sources
  double electricity_price = 0.0;      // $/kWh
  BuildingStock buildings;
};

/// Relaxes realized shares toward desired over the capital adjustment time.
PerSource<double> adjust_shares(const PerSource<double>& realized, const PerSource<double>& desired,
                                double adjustment_yr, double dt);

/// Share-weighted marginal cost with a shortage premium on supply that lags
/// desired capacity, converted to a delivered $/kWh.
double electricity_price(const EnergyMarketState& state, const EnergyParams& p);

/// Sum of share x demand x emission factor, GtCO2/yr.
double energy_co2(const PerSource<double>& shares, double demand_ej, const PerSource<double>& emission_factor);

}  // namespace climsim::energy

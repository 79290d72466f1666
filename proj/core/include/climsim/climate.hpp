#pragma once

#include <array>

#include "climsim/calibration.hpp"

namespace climsim::climate {

/// Carbon pools in GtC.
struct CarbonCycleState {
  double atmosphere = 0.0;
  double mixed_layer = 0.0;
  std::array<double, 4> deep{};
  double biosphere = 0.0;

  double total() const;
  double co2_ppm() const { return atmosphere / units::kGtCPerPpm; }
};

/// Inter-pool exchange, GtC/yr, positive downward (out of the atmosphere).
struct CarbonFluxes {
  double atmosphere_to_mixed = 0.0;
  std::array<double, 4> diffusion{};  // [0]: mixed -> deep1, [k]: deep k -> deep k+1
  double atmosphere_to_biosphere = 0.0;
};

struct ClimateParams {
  double climate_sensitivity = 3.0;  // C per CO2 doubling
  double f2x = 3.7;                  // W/m2 per doubling
  double heat_capacity = 8.0;        // W yr m^-2 C^-1

  double feedback() const { return f2x / climate_sensitivity; }
};

struct ClimateState {
  double delta_T = 0.0;  // C above pre-industrial
  double forcing = 0.0;  // W/m2, total
  double nonco2_forcing = 0.0;
};

/// Sea level above the 1990 datum.
struct SeaLevelState {
  double level_m = 0.0;
};

/// Exogenous Greenland + Antarctica contribution. The split is carried for
/// reporting; only the total enters the dynamics.
struct MeltScenario {
  double ice_melt_2100_m = 0.11;
  double melt_split_greenland = 0.5;
};

CarbonCycleState equilibrium_carbon_state(const CarbonCycleParams& p);

CarbonFluxes carbon_fluxes(const CarbonCycleState& c, const CarbonCycleParams& p);

/// Explicit Euler step. External emissions enter the atmosphere; exchange
/// fluxes move carbon between pools so the total changes by exactly
/// net_emissions_gtc * dt up to rounding. Throws NumericFailure on a
/// negative or non-finite pool.
CarbonCycleState carbon_cycle_step(const CarbonCycleState& c, const CarbonCycleParams& p,
                                   double net_emissions_gtc_per_yr, double dt);

/// f2x * log2(ppm / 280) + nonco2. DomainError for ppm <= 0.
double radiative_forcing(double co2_ppm, double nonco2_forcing, double f2x = 3.7);

double temperature_tendency(double delta_T, double forcing, const ClimateParams& p);

ClimateState temperature_step(const ClimateState& s, double forcing, const ClimateParams& p, double dt);

/// Cumulative exogenous melt (m) since 2000: quadratic so that its rate is a
/// linear ramp whose integral over 2000-2100 is ice_melt_2100_m.
double cumulative_melt(const MeltScenario& melt, double year);

/// dH/dt = a (T - T0) + b dT/dt + melt rate. Melt is added as the exact
/// integral over the step so the 2000-2100 total is reproduced exactly.
SeaLevelState sea_level_step(const SeaLevelState& s, const SeaLevelParams& p, const MeltScenario& melt,
                             double delta_T, double d_deltaT_dt, double year, double dt);

/// Logistic probability of an ice-free September Arctic.
double ice_free_probability(double delta_T, const ArcticParams& p);

}  // namespace climsim::climate

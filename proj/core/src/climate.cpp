#include "climsim/climate.hpp"

#include <cmath>

#include "climsim/error.hpp"

namespace climsim::climate {

double CarbonCycleState::total() const {
  double sum = atmosphere + mixed_layer + biosphere;
  for (double d : deep) sum += d;
  return sum;
}

CarbonCycleState equilibrium_carbon_state(const CarbonCycleParams& p) {
  CarbonCycleState c;
  c.atmosphere = p.atmosphere_preindustrial_gtc();
  c.mixed_layer = p.mixed_layer_preindustrial_gtc;
  for (std::size_t k = 0; k < c.deep.size(); ++k) c.deep[k] = p.deep_preindustrial_gtc(k);
  c.biosphere = p.biosphere_preindustrial_gtc;
  return c;
}

CarbonFluxes carbon_fluxes(const CarbonCycleState& c, const CarbonCycleParams& p) {
  CarbonFluxes f;
  const double atm0 = p.atmosphere_preindustrial_gtc();
  // Atmospheric CO2 in equilibrium with the mixed layer rises with the
  // buffer (Revelle) factor power of mixed-layer carbon.
  const double atm_equilibrium = atm0 * std::pow(c.mixed_layer / p.mixed_layer_preindustrial_gtc, p.buffer_factor);
  f.atmosphere_to_mixed = (c.atmosphere - atm_equilibrium) / p.atm_mixed_exchange_yr;

  std::array<double, 5> carbon = {c.mixed_layer, c.deep[0], c.deep[1], c.deep[2], c.deep[3]};
  std::array<double, 5> thickness = {p.mixed_layer_depth_m, p.deep_layer_thickness_m[0],
                                     p.deep_layer_thickness_m[1], p.deep_layer_thickness_m[2],
                                     p.deep_layer_thickness_m[3]};
  for (std::size_t k = 0; k < 4; ++k) {
    const double gradient = carbon[k] / thickness[k] - carbon[k + 1] / thickness[k + 1];
    const double distance = 0.5 * (thickness[k] + thickness[k + 1]);
    f.diffusion[k] = p.eddy_diffusivity_m2_per_yr * gradient / distance;
  }

  f.atmosphere_to_biosphere = p.biosphere_uptake_per_yr * (c.atmosphere - atm0) -
                              (c.biosphere - p.biosphere_preindustrial_gtc) / p.biosphere_turnover_yr;
  return f;
}

CarbonCycleState carbon_cycle_step(const CarbonCycleState& c, const CarbonCycleParams& p,
                                   double net_emissions_gtc_per_yr, double dt) {
  if (!(dt > 0.0)) throw DomainError("carbon_cycle_step: dt must be positive");
  const auto f = carbon_fluxes(c, p);
  CarbonCycleState next = c;
  next.atmosphere += dt * (net_emissions_gtc_per_yr - f.atmosphere_to_mixed - f.atmosphere_to_biosphere);
  next.mixed_layer += dt * (f.atmosphere_to_mixed - f.diffusion[0]);
  for (std::size_t k = 0; k < 4; ++k) {
    const double below = (k + 1 < 4) ? f.diffusion[k + 1] : 0.0;
    next.deep[k] += dt * (f.diffusion[k] - below);
  }
  next.biosphere += dt * f.atmosphere_to_biosphere;

  auto check = [](double v, const char* pool) {
    if (!std::isfinite(v) || v < 0.0) {
      throw NumericFailure("carbon", std::string("carbon pool '") + pool + "' became negative or non-finite");
    }
  };
  check(next.atmosphere, "atmosphere");
  check(next.mixed_layer, "mixed_layer");
  for (double d : next.deep) check(d, "deep");
  check(next.biosphere, "biosphere");
  return next;
}

double radiative_forcing(double co2_ppm, double nonco2_forcing, double f2x) {
  if (!(co2_ppm > 0.0)) throw DomainError("radiative_forcing: CO2 concentration must be positive");
  return f2x * std::log2(co2_ppm / units::kPreindustrialPpm) + nonco2_forcing;
}

double temperature_tendency(double delta_T, double forcing, const ClimateParams& p) {
  return (forcing - p.feedback() * delta_T) / p.heat_capacity;
}

ClimateState temperature_step(const ClimateState& s, double forcing, const ClimateParams& p, double dt) {
  if (!(dt > 0.0)) throw DomainError("temperature_step: dt must be positive");
  ClimateState next = s;
  next.delta_T = s.delta_T + dt * temperature_tendency(s.delta_T, forcing, p);
  next.forcing = forcing;
  if (!std::isfinite(next.delta_T)) throw NumericFailure("climate", "temperature became non-finite");
  return next;
}

double cumulative_melt(const MeltScenario& melt, double year) {
  if (year <= 2000.0) return 0.0;
  const double x = (year - 2000.0) / 100.0;
  return melt.ice_melt_2100_m * x * x;
}

SeaLevelState sea_level_step(const SeaLevelState& s, const SeaLevelParams& p, const MeltScenario& melt,
                             double delta_T, double d_deltaT_dt, double year, double dt) {
  if (!(dt > 0.0)) throw DomainError("sea_level_step: dt must be positive");
  const double thermal_mm_per_yr = p.a_mm_per_yr_per_C * (delta_T - p.T0_C) + p.b_mm_per_C * d_deltaT_dt;
  SeaLevelState next;
  next.level_m = s.level_m + dt * thermal_mm_per_yr * 1e-3 +
                 (cumulative_melt(melt, year + dt) - cumulative_melt(melt, year));
  if (!std::isfinite(next.level_m)) throw NumericFailure("sea_level", "sea level became non-finite");
  return next;
}

double ice_free_probability(double delta_T, const ArcticParams& p) {
  return 1.0 / (1.0 + std::exp(-p.steepness_per_C * (delta_T - p.midpoint_C)));
}

}  // namespace climsim::climate

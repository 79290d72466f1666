#pragma once

#include <vector>

#include "climsim/calibration.hpp"

namespace climsim::land {

struct ForestPolicy {
  PerRegion<double> afforestation_pct{};          // of the maximum afforestable area
  PerRegion<double> deforestation_prevention_pct{};
  double start_year = 2025.0;
};

struct Cohort {
  double planted_year = 0.0;
  double area_mha = 0.0;
};

struct LandUseState {
  PerRegion<std::array<double, kLandTypeCount>> areas{};  // Mha
  PerRegion<double> planted_mha{};                         // cumulative afforested area
  PerRegion<std::vector<Cohort>> cohorts;                 // one vintage per planting step
};

LandUseState initial_land_state(const DriverParams& drivers);

/// Annual uptake of one hectare planted at age 0: linear ramp to the peak at
/// the peak age, then exponential decline to a steady fraction. tCO2/ha/yr.
double uptake_per_ha(const LandParams& p, double age_yr);

/// Planting rate for a region at year, Mha/yr, clamped so the pledge and the
/// remaining afforestable area are never exceeded within the step.
double planting_rate_mha(const LandParams& p, const RegionData& region, const ForestPolicy& policy, Region r,
                         double planted_mha, double year, double dt);

/// Gross removal from all vintages, GtCO2/yr (positive = removal).
double afforestation_flux(const LandParams& p, const LandUseState& s, Region r, double year);

/// Baseline release scaled by (1 - prevention) from the policy start, GtCO2/yr.
double deforestation_emissions(const LandParams& p, const ForestPolicy& policy, Region r, double year);

/// Net removal after leakage, GtCO2/yr.
double net_removal(const LandParams& p, double gross);

struct LandFlows {
  PerRegion<double> planting_mha_per_yr{};
  PerRegion<double> gross_removal{};
  PerRegion<double> deforestation{};
  PerRegion<double> cleared_mha_per_yr{};
};

LandFlows land_flows(const LandParams& p, const DriverParams& drivers, const ForestPolicy& policy,
                     const LandUseState& s, double year, double dt);

/// Plants a new vintage and moves area between types. Regional totals are
/// conserved: every hectare added to forest is taken from other land, then
/// agriculture, and cleared forest becomes agriculture.
LandUseState land_step(const LandUseState& s, const LandFlows& f, double year, double dt);

struct Exposure {
  double at_risk_million = 0.0;
  double below_high_tide_million = 0.0;
};

/// Piecewise-linear interpolation on the calibrated anchors with linear
/// extrapolation beyond them, floored at zero.
Exposure flood_exposure(const std::vector<ExposurePoint>& curve, double sea_level_m);

}  // namespace climsim::land

#pragma once

#include <optional>

#include "climsim/calibration.hpp"

namespace climsim::emissions {

/// Scenario-level driver assumptions.
struct DriverAssumptions {
  double population_2100_billion = 10.4;
  double gdp_growth_pct = 1.5;
};

/// Kaya composition in GtCO2/yr from people, $/person/yr, MJ/$ and kgCO2/GJ.
double kaya_co2_gt(double population, double gdp_per_capita_usd, double energy_intensity_mj_per_usd,
                   double carbon_intensity_kg_per_gj);

/// Regional population in billions. Historical geometric path to the projection
/// start; afterwards the reference path plus this region's weighted share of
/// the difference between the chosen and reference world totals in 2100.
double population_billion(const DriverParams& p, Region r, double year, const DriverAssumptions& a);

/// GDP per capita, thousand $ per person.
double gdp_per_capita_k(const DriverParams& p, Region r, double year, const DriverAssumptions& a);

/// Primary energy per unit GDP, MJ/$ (equivalently EJ per trillion $).
double energy_intensity(const DriverParams& p, Region r, double year, const DriverAssumptions& a);

/// Regional primary energy demand before efficiency and price effects, EJ/yr.
double raw_energy_demand_ej(const DriverParams& p, Region r, double year, const DriverAssumptions& a);

/// Splits total fossil CO2 across regions in proportion to demand times the
/// regional relative carbon intensity. The result sums to total_gt exactly up
/// to rounding.
PerRegion<double> allocate_co2(const PerRegion<double>& demand_ej, const PerRegion<double>& carbon_rel,
                               double total_gt);

struct EmissionPolicy {
  std::optional<double> peak_year;
  double annual_reduction_pct = 0.0;
  double start_year = 2050.0;

  bool reduces() const { return annual_reduction_pct > 0.0; }
};

/// Values captured the first time the trajectory reaches a policy year.
struct PolicyAnchors {
  std::optional<double> peak_value;
  std::optional<double> start_value;
};

/// Captures the peak and start anchors when year first reaches them.
PolicyAnchors record_anchors(const PolicyAnchors& anchors, const EmissionPolicy& policy, double year,
                             double baseline);

/// Baseline before the start year; min(baseline, anchor * (1 - r)^(year - start))
/// afterwards, which compounds the prior year's value by (1 - r) at annual
/// resolution. A peak pledge caps at the peak-year value.
double policy_adjusted_co2(double baseline, const EmissionPolicy& policy, const PolicyAnchors& anchors,
                           double year);

/// Fractional non-CO2 response to a CO2 reduction fraction rho:
/// max(floor, 1 - elasticity * rho).
double nonco2_coupling(double rho, double elasticity, double floor);

/// Regional baseline N2O, Mt/yr. DataError when no series is loaded.
double n2o_baseline_mt(const NonCO2Params& p, Region r, double year);
double ch4_baseline_mt(const NonCO2Params& p, Region r, double year);

double n2o_emissions_mt(const NonCO2Params& p, Region r, double year, double reduction_fraction);

/// Agricultural methane follows the lever; the remainder couples to CO2.
double ch4_emissions_mt(const NonCO2Params& p, Region r, double year, double reduction_fraction,
                        double agricultural_cut_fraction);

}  // namespace climsim::emissions

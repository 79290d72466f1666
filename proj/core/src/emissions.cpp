#include "climsim/emissions.hpp"

#include <algorithm>
#include <cmath>

#include "climsim/error.hpp"

namespace climsim::emissions {

namespace {

constexpr double kHistoryStart = 1990.0;

double geometric(double v0, double v1, double t0, double t1, double year) {
  if (v0 <= 0.0 || v1 <= 0.0) return v0 + (v1 - v0) * (year - t0) / (t1 - t0);
  return v0 * std::pow(v1 / v0, (year - t0) / (t1 - t0));
}

// 0 at the projection start, 1 in 2100.
double projection_shape(const DriverParams& p, double year) {
  const double horizon = 2100.0 - p.projection_start_year;
  const double tau = p.population_shape_yr;
  return (1.0 - std::exp(-(year - p.projection_start_year) / tau)) / (1.0 - std::exp(-horizon / tau));
}

}  // namespace

double kaya_co2_gt(double population, double gdp_per_capita_usd, double energy_intensity_mj_per_usd,
                   double carbon_intensity_kg_per_gj) {
  // MJ/$ -> GJ/$ and kg/GJ -> t/GJ, then t -> Gt.
  return population * gdp_per_capita_usd * (energy_intensity_mj_per_usd * 1e-3) *
         (carbon_intensity_kg_per_gj * 1e-3) * 1e-9;
}

double population_billion(const DriverParams& p, Region r, double year, const DriverAssumptions& a) {
  const auto& d = p.regions[index(r)];
  if (year <= p.projection_start_year) {
    return geometric(d.pop_1990_billion, d.pop_2020_billion, kHistoryStart, p.projection_start_year, year);
  }
  const double shape = projection_shape(p, year);
  const double reference = d.pop_2020_billion + (d.pop_2100_reference_billion - d.pop_2020_billion) * shape;
  double reference_total = 0.0;
  for (const auto& rd : p.regions) reference_total += rd.pop_2100_reference_billion;
  return reference + d.pop_increment_weight * (a.population_2100_billion - reference_total) * shape;
}

double gdp_per_capita_k(const DriverParams& p, Region r, double year, const DriverAssumptions& a) {
  const auto& d = p.regions[index(r)];
  if (year <= p.projection_start_year) {
    return geometric(d.gdppc_1990_k, d.gdppc_2020_k, kHistoryStart, p.projection_start_year, year);
  }
  const double span = year - p.projection_start_year;
  const double tau = p.growth_offset_decay_yr;
  const double log_growth = a.gdp_growth_pct * span + d.gdppc_growth_offset_pct * tau * (1.0 - std::exp(-span / tau));
  return d.gdppc_2020_k * std::exp(log_growth / 100.0);
}

double energy_intensity(const DriverParams& p, Region r, double year, const DriverAssumptions& a) {
  const auto& d = p.regions[index(r)];
  if (year <= p.projection_start_year) {
    return geometric(d.energy_intensity_1990, d.energy_intensity_2020, kHistoryStart, p.projection_start_year,
                     year);
  }
  const double span = year - p.projection_start_year;
  const double decline = d.energy_intensity_decline_pct + p.intensity_decline_adjust_pct +
                         p.growth_efficiency_coupling * (a.gdp_growth_pct - p.reference_growth_pct);
  return d.energy_intensity_2020 * std::exp(-decline * span / 100.0);
}

double raw_energy_demand_ej(const DriverParams& p, Region r, double year, const DriverAssumptions& a) {
  // billion people * k$/person = T$; T$ * MJ/$ = EJ.
  return population_billion(p, r, year, a) * gdp_per_capita_k(p, r, year, a) * energy_intensity(p, r, year, a);
}

PerRegion<double> allocate_co2(const PerRegion<double>& demand_ej, const PerRegion<double>& carbon_rel,
                               double total_gt) {
  PerRegion<double> out{};
  double weight_sum = 0.0;
  for (std::size_t i = 0; i < kRegionCount; ++i) weight_sum += demand_ej[i] * carbon_rel[i];
  if (!(weight_sum > 0.0)) return out;
  for (std::size_t i = 0; i < kRegionCount; ++i) out[i] = total_gt * demand_ej[i] * carbon_rel[i] / weight_sum;
  return out;
}

PolicyAnchors record_anchors(const PolicyAnchors& anchors, const EmissionPolicy& policy, double year,
                             double baseline) {
  PolicyAnchors next = anchors;
  if (policy.peak_year && !next.peak_value && year >= *policy.peak_year) next.peak_value = baseline;
  if (policy.reduces() && !next.start_value && year >= policy.start_year) {
    next.start_value = next.peak_value ? std::min(baseline, *next.peak_value) : baseline;
  }
  return next;
}

double policy_adjusted_co2(double baseline, const EmissionPolicy& policy, const PolicyAnchors& anchors,
                           double year) {
  double e = baseline;
  if (policy.peak_year && anchors.peak_value && year >= *policy.peak_year) e = std::min(e, *anchors.peak_value);
  if (policy.reduces() && anchors.start_value && year >= policy.start_year) {
    const double keep = 1.0 - policy.annual_reduction_pct / 100.0;
    const double span = year - policy.start_year;
    const double path = span == 0.0 ? *anchors.start_value : *anchors.start_value * std::pow(keep, span);
    e = std::min(e, path);
  }
  return e;
}

double nonco2_coupling(double rho, double elasticity, double floor) {
  return std::max(floor, 1.0 - elasticity * rho);
}

namespace {
double baseline_of(const PerRegion<PiecewiseLinear>& series, Region r, double year, const char* gas) {
  const auto& s = series[index(r)];
  if (s.empty()) throw DataError(std::string("no ") + gas + " baseline for region " + std::string(region_id(r)));
  return std::max(0.0, s(year));
}
}  // namespace

double n2o_baseline_mt(const NonCO2Params& p, Region r, double year) {
  return baseline_of(p.n2o_baseline_mt, r, year, "N2O");
}

double ch4_baseline_mt(const NonCO2Params& p, Region r, double year) {
  return baseline_of(p.ch4_baseline_mt, r, year, "CH4");
}

double n2o_emissions_mt(const NonCO2Params& p, Region r, double year, double reduction_fraction) {
  return n2o_baseline_mt(p, r, year) * nonco2_coupling(reduction_fraction, p.n2o_elasticity, p.n2o_floor);
}

double ch4_emissions_mt(const NonCO2Params& p, Region r, double year, double reduction_fraction,
                        double agricultural_cut_fraction) {
  const double a = p.ch4_agricultural_fraction;
  const double energy_part = (1.0 - a) * nonco2_coupling(reduction_fraction, p.ch4_elasticity, p.ch4_floor);
  const double ag_part = a * (1.0 - agricultural_cut_fraction);
  return ch4_baseline_mt(p, r, year) * (energy_part + ag_part);
}

}  // namespace climsim::emissions

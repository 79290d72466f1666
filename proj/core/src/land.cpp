#include "climsim/land.hpp"

#include <algorithm>
#include <cmath>

#include "climsim/error.hpp"

namespace climsim::land {

LandUseState initial_land_state(const DriverParams& drivers) {
  LandUseState s;
  for (std::size_t r = 0; r < kRegionCount; ++r) s.areas[r] = drivers.regions[r].land_mha;
  return s;
}

double uptake_per_ha(const LandParams& p, double age_yr) {
  if (age_yr <= 0.0) return 0.0;
  if (age_yr <= p.uptake_peak_age_yr) return p.peak_uptake_tco2_per_ha_yr * age_yr / p.uptake_peak_age_yr;
  const double decay = std::exp(-(age_yr - p.uptake_peak_age_yr) / p.uptake_decline_yr);
  return p.peak_uptake_tco2_per_ha_yr * (p.steady_uptake_fraction + (1.0 - p.steady_uptake_fraction) * decay);
}

double planting_rate_mha(const LandParams& p, const RegionData& region, const ForestPolicy& policy, Region r,
                         double planted_mha, double year, double dt) {
  const double pct = policy.afforestation_pct[index(r)];
  if (pct <= 0.0 || year < policy.start_year || year >= policy.start_year + p.planting_period_yr) return 0.0;
  const double pledge = region.max_afforestable_mha * pct / 100.0;
  const double rate = pledge / p.planting_period_yr;
  return std::max(0.0, std::min(rate, (pledge - planted_mha) / dt));
}

double afforestation_flux(const LandParams& p, const LandUseState& s, Region r, double year) {
  double mt = 0.0;
  for (const auto& c : s.cohorts[index(r)]) mt += c.area_mha * uptake_per_ha(p, year - c.planted_year);
  return mt * 1e-3;  // Mha * tCO2/ha = MtCO2
}

double deforestation_emissions(const LandParams& p, const ForestPolicy& policy, Region r, double year) {
  const auto& series = p.deforestation_baseline_gtco2[index(r)];
  const double baseline = series.empty() ? 0.0 : std::max(0.0, series(year));
  if (year < policy.start_year) return baseline;
  return baseline * (1.0 - policy.deforestation_prevention_pct[index(r)] / 100.0);
}

double net_removal(const LandParams& p, double gross) { return gross * (1.0 - p.leakage_fraction); }

LandFlows land_flows(const LandParams& p, const DriverParams& drivers, const ForestPolicy& policy,
                     const LandUseState& s, double year, double dt) {
  LandFlows f;
  for (Region r : kRegions) {
    const auto i = index(r);
    const auto& areas = s.areas[i];
    const double convertible = areas[index(LandType::Other)] + areas[index(LandType::Agriculture)];
    double rate = planting_rate_mha(p, drivers.regions[i], policy, r, s.planted_mha[i], year, dt);
    f.planting_mha_per_yr[i] = std::min(rate, convertible / dt);
    f.gross_removal[i] = afforestation_flux(p, s, r, year);
    f.deforestation[i] = deforestation_emissions(p, policy, r, year);
    const double cleared = f.deforestation[i] * 1e9 / p.forest_carbon_density_tco2_per_ha * 1e-6;
    f.cleared_mha_per_yr[i] = std::min(cleared, areas[index(LandType::Forest)] / dt);
  }
  return f;
}

LandUseState land_step(const LandUseState& s, const LandFlows& f, double year, double dt) {
  LandUseState next = s;
  for (std::size_t i = 0; i < kRegionCount; ++i) {
    auto& a = next.areas[i];
    auto& forest = a[index(LandType::Forest)];
    auto& agri = a[index(LandType::Agriculture)];
    auto& other = a[index(LandType::Other)];

    // Clearing: forest -> agriculture.
    const double cleared = std::min(forest, f.cleared_mha_per_yr[i] * dt);
    forest -= cleared;
    agri += cleared;

    // Planting: other, then agriculture -> forest.
    double planted = f.planting_mha_per_yr[i] * dt;
    const double from_other = std::min(planted, other);
    const double from_agri = std::min(planted - from_other, agri);
    planted = from_other + from_agri;
    other -= from_other;
    agri -= from_agri;
    forest += planted;
    if (planted > 0.0) {
      next.cohorts[i].push_back({year, planted});
      next.planted_mha[i] += planted;
    }
    for (double v : a) {
      if (!(v >= 0.0) || !std::isfinite(v)) throw NumericFailure("land", "land area became negative", year);
    }
  }
  return next;
}

Exposure flood_exposure(const std::vector<ExposurePoint>& curve, double sea_level_m) {
  if (curve.empty()) return {};
  if (curve.size() == 1) return {curve[0].at_risk_million, curve[0].below_high_tide_million};
  auto segment = [&](std::size_t k) {
    const auto& a = curve[k];
    const auto& b = curve[k + 1];
    const double w = (sea_level_m - a.sea_level_m) / (b.sea_level_m - a.sea_level_m);
    return Exposure{std::max(0.0, a.at_risk_million + w * (b.at_risk_million - a.at_risk_million)),
                    std::max(0.0, a.below_high_tide_million +
                                      w * (b.below_high_tide_million - a.below_high_tide_million))};
  };
  std::size_t k = 0;
  while (k + 2 < curve.size() && sea_level_m > curve[k + 1].sea_level_m) ++k;
  return segment(k);
}

}  // namespace climsim::land

#include "climsim/levers.hpp"

#include <cmath>
#include <nlohmann/json.hpp>

#include "climsim/error.hpp"
#include "climsim/text.hpp"
#include "climsim/types.hpp"

namespace climsim {

namespace lever_ids {
std::string reduction_pct(std::string_view r) { return "emission_reduction_pct_" + std::string(r); }
std::string reduction_start(std::string_view r) { return "emission_reduction_start_" + std::string(r); }
std::string peak_pledge(std::string_view r) { return "peak_pledge_" + std::string(r); }
std::string peak_year(std::string_view r) { return "peak_year_" + std::string(r); }
std::string afforestation_pct(std::string_view r) { return "afforestation_pct_" + std::string(r); }
std::string deforestation_prevention_pct(std::string_view r) {
  return "deforestation_prevention_pct_" + std::string(r);
}
}  // namespace lever_ids

namespace {

LeverDef assumption(std::string id, std::string units, double lo, double hi, double def, double step,
                    std::string category, std::string description) {
  return {std::move(id), std::move(units), lo, hi, def, step, false, LeverGroup::Assumption,
          std::move(category), std::move(description)};
}

LeverDef policy(std::string id, std::string units, double lo, double hi, double def, double step, bool ramp,
                std::string category, std::string description) {
  return {std::move(id), std::move(units), lo, hi, def, step, ramp, LeverGroup::Policy,
          std::move(category), std::move(description)};
}

}  // namespace

LeverRegistry::LeverRegistry() {
  auto& v = levers_;
  v.push_back(assumption("climate_sensitivity", "C", 1.0, 6.0, 3.0, 0.1, "climate",
                         "Equilibrium warming per doubling of atmospheric CO2"));
  v.push_back(assumption("ice_melt_2100", "m", 0.0, 1.0, 0.11, 0.01, "climate",
                         "Greenland plus Antarctica contribution to sea level by 2100"));
  v.push_back(assumption("melt_split_greenland", "fraction", 0.0, 1.0, 0.5, 0.05, "climate",
                         "Share of the ice melt attributed to Greenland"));
  v.push_back(assumption("population_2100_billion", "billion people", 6.0, 16.0, 10.4, 0.1, "drivers",
                         "World population reached in 2100"));
  v.push_back(assumption("gdp_growth", "%/yr", -5.0, 10.0, 1.5, 0.1, "drivers",
                         "Long-run growth of GDP per capita after 2020"));
  v.push_back(assumption("max_retrofit_potential", "fraction", 0.0, 1.0, 0.5, 0.05, "buildings",
                         "Largest share of the existing building stock that can be retrofitted"));
  v.push_back(assumption("covid_shock_years", "yr", 0.0, 10.0, 3.0, 1.0, "drivers",
                         "Years of suppressed energy demand starting 2020"));

  v.push_back(policy("carbon_price", "$/tCO2", 0.0, 250.0, 0.0, 1.0, true, "energy",
                     "Price on fossil CO2 emissions"));
  v.push_back(policy("coal_tax", "$/TCE", 0.0, 200.0, 0.0, 1.0, true, "energy", "Excise on coal"));
  v.push_back(policy("oil_tax", "$/BOE", 0.0, 150.0, 0.0, 1.0, true, "energy", "Excise on oil"));
  v.push_back(policy("gas_tax", "$/MCF", 0.0, 20.0, 0.0, 0.1, true, "energy", "Excise on natural gas"));
  v.push_back(policy("bio_subsidy", "$/BOE", 0.0, 50.0, 0.0, 1.0, true, "energy", "Subsidy on bioenergy"));
  v.push_back(policy("renewable_subsidy", "$/kWh", 0.0, 0.1, 0.0, 0.001, true, "energy",
                     "Subsidy on renewable electricity"));
  v.push_back(policy("nuclear_subsidy", "$/kWh", 0.0, 0.1, 0.0, 0.001, true, "energy",
                     "Subsidy on nuclear electricity"));
  v.push_back(policy("nzc_subsidy", "$/kWh", 0.0, 0.1, 0.0, 0.001, true, "energy",
                     "Subsidy on new zero-carbon energy"));
  v.push_back(policy("fuel_policy_start", "year", 2020.0, 2100.0, 2025.0, 1.0, false, "energy",
                     "First year taxes, subsidies and the carbon price apply"));
  v.push_back(policy("fuel_policy_ramp_years", "yr", 0.0, 80.0, 0.0, 1.0, false, "energy",
                     "Years over which taxes, subsidies and the carbon price phase in linearly"));
  v.push_back(policy("coal_reduction_pct", "%", 0.0, 100.0, 0.0, 1.0, true, "energy",
                     "Eventual cut in the coal share of supply"));
  v.push_back(policy("coal_reduction_start", "year", 2020.0, 2100.0, 2030.0, 1.0, false, "energy",
                     "First year of the coal cut"));
  v.push_back(policy("coal_reduction_ramp_years", "yr", 0.0, 80.0, 20.0, 1.0, false, "energy",
                     "Years over which the coal cut phases in"));
  v.push_back(policy("nzc_breakthrough", "flag", 0.0, 1.0, 0.0, 1.0, false, "energy",
                     "Enable the new zero-carbon technology"));
  v.push_back(policy("nzc_start_year", "year", 2020.0, 2100.0, 2040.0, 1.0, false, "energy",
                     "Year the new zero-carbon technology becomes available"));
  v.push_back(policy("nzc_years_to_mass_market", "yr", 1.0, 50.0, 7.0, 1.0, false, "energy",
                     "Years for the new zero-carbon cost to fall to coal parity"));
  v.push_back(policy("nzc_price_multiple", "x coal", 1.0, 5.0, 2.0, 0.1, false, "energy",
                     "Initial new zero-carbon cost as a multiple of coal"));
  v.push_back(policy("building_efficiency_gain", "%/yr", 0.0, 10.0, 0.0, 0.1, false, "buildings",
                     "Annual efficiency improvement of new buildings"));
  v.push_back(policy("retrofit_rate", "%/yr", 0.0, 20.0, 0.0, 0.5, false, "buildings",
                     "Share of existing buildings retrofitted each year"));
  v.push_back(policy("building_policy_start", "year", 2020.0, 2100.0, 2025.0, 1.0, false, "buildings",
                     "First year of the building standards"));

  for (Region r : kRegions) {
    const auto id = region_id(r);
    v.push_back(policy(lever_ids::reduction_pct(id), "%/yr", 0.0, 100.0, 0.0, 1.0, false, "emissions",
                       "Annual cut in fossil CO2 after the start year"));
    v.push_back(policy(lever_ids::reduction_start(id), "year", 2020.0, 2100.0, 2050.0, 1.0, false, "emissions",
                       "First year of the annual reduction"));
    v.push_back(policy(lever_ids::peak_pledge(id), "flag", 0.0, 1.0, 0.0, 1.0, false, "emissions",
                       "Cap fossil CO2 at its peak-year level"));
    v.push_back(policy(lever_ids::peak_year(id), "year", 2020.0, 2100.0, 2050.0, 1.0, false, "emissions",
                       "Peak emissions year"));
  }
  for (Region r : kRegions) {
    const auto id = region_id(r);
    v.push_back(policy(lever_ids::afforestation_pct(id), "%", 0.0, 100.0, 0.0, 1.0, false, "land",
                       "Share of the maximum afforestable area pledged for planting"));
    v.push_back(policy(lever_ids::deforestation_prevention_pct(id), "%", 0.0, 100.0, 0.0, 1.0, false, "land",
                       "Share of baseline deforestation prevented"));
  }
  v.push_back(policy("forest_policy_start", "year", 2020.0, 2100.0, 2025.0, 1.0, false, "land",
                     "First year of afforestation and deforestation prevention"));
  v.push_back(policy("ag_methane_reduction_pct", "%", 0.0, 100.0, 0.0, 1.0, false, "methane",
                     "Eventual cut in agricultural methane"));
  v.push_back(policy("methane_policy_start", "year", 2020.0, 2100.0, 2025.0, 1.0, false, "methane",
                     "First year of the agricultural methane cut"));
  v.push_back(policy("methane_policy_years", "yr", 0.0, 80.0, 10.0, 1.0, false, "methane",
                     "Years over which the methane cut phases in"));

  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& d = v[i];
    if (!by_id_.emplace(d.id, i).second) throw ConfigError("duplicate lever id " + d.id);
    if (!(d.min <= d.default_value && d.default_value <= d.max)) {
      throw ConfigError("lever " + d.id + ": default outside bounds");
    }
  }
}

const LeverRegistry& LeverRegistry::instance() {
  static const LeverRegistry registry;
  return registry;
}

const LeverDef* LeverRegistry::try_find(const std::string& id) const {
  auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : &levers_[it->second];
}

const LeverDef& LeverRegistry::find(const std::string& id) const {
  return levers_[index_of(id)];
}

std::size_t LeverRegistry::index_of(const std::string& id) const {
  auto it = by_id_.find(id);
  if (it == by_id_.end()) throw LookupError("unknown lever: " + id);
  return it->second;
}

LeverVector::LeverVector() {
  const auto& all = LeverRegistry::instance().all();
  values_.reserve(all.size());
  for (const auto& d : all) values_.push_back(d.default_value);
}

double LeverVector::get(const std::string& id) const {
  return values_[LeverRegistry::instance().index_of(id)];
}

void LeverVector::set(const std::string& id, double value) {
  const auto& reg = LeverRegistry::instance();
  const auto* def = reg.try_find(id);
  if (def == nullptr) throw ValidationError(id, "unknown lever '" + id + "'");
  if (!std::isfinite(value) || value < def->min || value > def->max) {
    throw ValidationError(id, "lever '" + id + "' = " + format_number(value) + " outside [" +
                                  format_number(def->min) + ", " + format_number(def->max) + "]");
  }
  values_[reg.index_of(id)] = value;
}

std::map<std::string, double> LeverVector::non_default() const {
  std::map<std::string, double> out;
  const auto& all = LeverRegistry::instance().all();
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (values_[i] != all[i].default_value) out[all[i].id] = values_[i];
  }
  return out;
}

std::string registry_to_json(const LeverRegistry& registry, int indent) {
  nlohmann::ordered_json levers = nlohmann::ordered_json::array();
  for (const auto& d : registry.all()) {
    levers.push_back({{"id", d.id},
                      {"units", d.units},
                      {"min", d.min},
                      {"max", d.max},
                      {"default", d.default_value},
                      {"step", d.step},
                      {"ramp_capable", d.ramp_capable},
                      {"group", d.group == LeverGroup::Assumption ? "assumptions" : "levers"},
                      {"category", d.category},
                      {"description", d.description}});
  }
  nlohmann::ordered_json doc;
  doc["levers"] = std::move(levers);
  doc["normalization"] = {{"budget_usd", registry.normalization().budget_usd},
                          {"price_usd_per_kwh", registry.normalization().price_usd_per_kwh}};
  return doc.dump(indent);
}

}  // namespace climsim

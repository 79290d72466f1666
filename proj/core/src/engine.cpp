#include "climsim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "climsim/error.hpp"
#include "climsim/text.hpp"

namespace climsim {

Settings resolve_settings(const ScenarioSpec& spec, const Calibration& cal) {
  const auto& l = spec.levers;
  Settings s;
  s.dt = spec.grid.dt;
  s.climate.climate_sensitivity = l.get("climate_sensitivity");
  s.climate.f2x = cal.f2x;
  s.climate.heat_capacity = cal.heat_capacity;
  s.melt.ice_melt_2100_m = l.get("ice_melt_2100");
  s.melt.melt_split_greenland = l.get("melt_split_greenland");
  s.drivers.population_2100_billion = l.get("population_2100_billion");
  s.drivers.gdp_growth_pct = l.get("gdp_growth");

  s.fuel.carbon_price = l.get("carbon_price");
  s.fuel.coal_tax = l.get("coal_tax");
  s.fuel.oil_tax = l.get("oil_tax");
  s.fuel.gas_tax = l.get("gas_tax");
  s.fuel.bio_subsidy = l.get("bio_subsidy");
  s.fuel.renewable_subsidy = l.get("renewable_subsidy");
  s.fuel.nuclear_subsidy = l.get("nuclear_subsidy");
  s.fuel.nzc_subsidy = l.get("nzc_subsidy");
  s.fuel.ramp_start = l.get("fuel_policy_start");
  s.fuel.ramp_duration = l.get("fuel_policy_ramp_years");

  s.breakthrough.enabled = l.get("nzc_breakthrough") == 1.0;
  s.breakthrough.start_year = l.get("nzc_start_year");
  s.breakthrough.years_to_mass_market = l.get("nzc_years_to_mass_market");
  s.breakthrough.initial_price_multiple_of_coal = l.get("nzc_price_multiple");

  s.demand.new_building_efficiency_gain_pct = l.get("building_efficiency_gain");
  s.demand.retrofit_rate_pct = l.get("retrofit_rate");
  s.demand.max_retrofit_potential = l.get("max_retrofit_potential");
  s.demand.covid_shock_years = l.get("covid_shock_years");
  s.demand.policy_start = l.get("building_policy_start");

  s.coal.eventual_pct = l.get("coal_reduction_pct");
  s.coal.start_year = l.get("coal_reduction_start");
  s.coal.ramp_years = l.get("coal_reduction_ramp_years");

  for (Region r : kRegions) {
    const auto id = region_id(r);
    auto& p = s.emission_policy[index(r)];
    p.annual_reduction_pct = l.get(lever_ids::reduction_pct(id));
    p.start_year = l.get(lever_ids::reduction_start(id));
    if (l.get(lever_ids::peak_pledge(id)) == 1.0) p.peak_year = l.get(lever_ids::peak_year(id));
    s.forest.afforestation_pct[index(r)] = l.get(lever_ids::afforestation_pct(id));
    s.forest.deforestation_prevention_pct[index(r)] = l.get(lever_ids::deforestation_prevention_pct(id));
  }
  s.forest.start_year = l.get("forest_policy_start");
  s.ag_methane_cut_pct = l.get("ag_methane_reduction_pct");
  s.methane_policy_start = l.get("methane_policy_start");
  s.methane_policy_years = l.get("methane_policy_years");
  return s;
}

WorldState build_initial_state(const ScenarioSpec& spec, const Calibration& cal) {
  spec.grid.validate();
  const auto& init = cal.initial;
  if (!(init.atmosphere_gtc > 0.0)) throw ConfigError("calibration lacks initial carbon stocks");
  if (spec.grid.start_year != static_cast<int>(init.year)) {
    throw ValidationError("grid.start_year", "grid must start at the calibration year " + format_number(init.year));
  }
  WorldState s;
  s.time = spec.grid.start_year;
  s.step = 0;
  s.carbon.atmosphere = init.atmosphere_gtc;
  s.carbon.mixed_layer = init.mixed_layer_gtc;
  s.carbon.deep = init.deep_gtc;
  s.carbon.biosphere = init.biosphere_gtc;
  s.climate.delta_T = init.delta_T_C;
  s.sea.level_m = 0.0;
  s.n2o_burden_mt = init.n2o_burden_mt;
  s.ch4_burden_mt = init.ch4_burden_mt;
  s.energy.shares = cal.energy.initial_shares;
  s.energy.desired_shares = cal.energy.initial_shares;
  s.land = land::initial_land_state(cal.drivers);
  return s;
}

WorldState build_initial_state(const ScenarioSpec& spec) { return build_initial_state(spec, default_calibration()); }

namespace {

void require_finite(double v, const char* subsystem, const char* what, double year) {
  if (!std::isfinite(v)) {
    throw NumericFailure(subsystem, std::string(subsystem) + ": non-finite " + what, year);
  }
}

}  // namespace

Diagnostics diagnose(const WorldState& s, const Settings& st, const Calibration& cal) {
  Diagnostics d;
  const double t = s.time;
  d.time = t;
  const auto& drivers = cal.drivers;
  const auto& ep = cal.energy;

  // Emissions drivers.
  double raw_demand = 0.0;
  PerRegion<double> carbon_rel{};
  for (Region r : kRegions) {
    const auto i = index(r);
    d.population_billion[i] = emissions::population_billion(drivers, r, t, st.drivers);
    d.gdp_trillion[i] = d.population_billion[i] * emissions::gdp_per_capita_k(drivers, r, t, st.drivers);
    d.raw_demand_ej[i] = d.gdp_trillion[i] * emissions::energy_intensity(drivers, r, t, st.drivers);
    carbon_rel[i] = drivers.regions[i].carbon_intensity_rel(t);
    raw_demand += d.raw_demand_ej[i];
  }

  // Energy market.
  PerSource<std::optional<double>> costs{};
  double wedge = 0.0;
  double base_average = 0.0;
  for (EnergySource src : kSources) {
    const auto i = index(src);
    costs[i] = energy::effective_cost(ep, src, t, st.fuel, st.breakthrough);
    const auto base = energy::base_cost(ep, src, t, st.breakthrough);
    d.effective_costs[i] = costs[i].value_or(0.0);
    d.base_costs[i] = base.value_or(0.0);
    wedge += s.energy.shares[i] * (d.effective_costs[i] - d.base_costs[i]);
    base_average += s.energy.shares[i] * d.base_costs[i];
  }
  d.desired_shares = energy::apply_coal_cut(energy::market_shares(costs, ep.beta), energy::coal_cut_fraction(st.coal, t));
  d.building_multiplier = energy::building_multiplier(s.energy.buildings, ep.efficiency_affected_share);
  const double demand_mult = d.building_multiplier *
                             energy::covid_multiplier(t, st.demand.covid_shock_years, ep.covid_demand_drop) *
                             energy::price_response(wedge, base_average, ep.demand_price_elasticity);
  d.demand_ej = raw_demand * demand_mult;
  for (std::size_t i = 0; i < kSourceCount; ++i) d.quantities_ej[i] = s.energy.shares[i] * d.demand_ej;
  d.energy_co2_gt = energy::energy_co2(s.energy.shares, d.demand_ej, ep.emission_factor);
  {
    energy::EnergyMarketState view = s.energy;
    view.desired_shares = d.desired_shares;
    view.effective_costs = d.effective_costs;
    d.electricity_price = energy::electricity_price(view, ep);
  }
  require_finite(d.demand_ej, "energy", "demand", t);
  require_finite(d.electricity_price, "energy", "electricity price", t);

  // Regional CO2 and policy.
  PerRegion<double> demand_r{};
  for (std::size_t i = 0; i < kRegionCount; ++i) demand_r[i] = d.raw_demand_ej[i] * demand_mult;
  d.regional.baseline_co2_gt = emissions::allocate_co2(demand_r, carbon_rel, d.energy_co2_gt);
  const double methane_cut =
      energy::policy_ramp(st.ag_methane_cut_pct / 100.0, t, st.methane_policy_start, st.methane_policy_years);
  for (Region r : kRegions) {
    const auto i = index(r);
    const double base = d.regional.baseline_co2_gt[i];
    d.anchors[i] = emissions::record_anchors(s.anchors[i], st.emission_policy[i], t, base);
    const double adjusted = emissions::policy_adjusted_co2(base, st.emission_policy[i], d.anchors[i], t);
    d.regional.fossil_co2_gt[i] = adjusted;
    const double rho = base > 0.0 ? std::clamp(1.0 - adjusted / base, 0.0, 1.0) : 0.0;
    d.regional.n2o_mt[i] = emissions::n2o_emissions_mt(cal.nonco2, r, t, rho);
    d.regional.ch4_mt[i] = emissions::ch4_emissions_mt(cal.nonco2, r, t, rho, methane_cut);
    d.fossil_co2_gt += adjusted;
    d.n2o_total_mt += d.regional.n2o_mt[i];
    d.ch4_total_mt += d.regional.ch4_mt[i];
  }
  require_finite(d.fossil_co2_gt, "emissions", "fossil CO2", t);

  // Land.
  d.land = land::land_flows(cal.land, drivers, st.forest, s.land, t, st.dt);
  for (std::size_t i = 0; i < kRegionCount; ++i) {
    const double net = land::net_removal(cal.land, d.land.gross_removal[i]);
    d.regional.land_co2_gt[i] = d.land.deforestation[i] - net;
    d.deforestation_gt += d.land.deforestation[i];
    d.gross_removal_gt += d.land.gross_removal[i];
    d.net_removal_gt += net;
  }
  require_finite(d.net_removal_gt + d.deforestation_gt, "land", "land flux", t);

  // Carbon cycle.
  d.net_emissions_gtc = (d.fossil_co2_gt + d.deforestation_gt - d.net_removal_gt) / units::kCO2PerC;
  d.co2_ppm = s.carbon.co2_ppm();
  require_finite(d.co2_ppm, "carbon", "concentration", t);

  // Forcing and temperature.
  d.nonco2_forcing = cal.nonco2.other_forcing(t) + cal.nonco2.n2o_forcing_per_mt * s.n2o_burden_mt +
                     cal.nonco2.ch4_forcing_per_mt * s.ch4_burden_mt;
  d.forcing = climate::radiative_forcing(d.co2_ppm, d.nonco2_forcing, st.climate.f2x);
  d.dT_dt = climate::temperature_tendency(s.climate.delta_T, d.forcing, st.climate);
  d.arctic_probability = climate::ice_free_probability(s.climate.delta_T, cal.arctic);
  require_finite(d.dT_dt, "climate", "temperature tendency", t);

  // Sea level.
  d.thermal_rise_mm_per_yr = cal.sea.a_mm_per_yr_per_C * (s.climate.delta_T - cal.sea.T0_C) + cal.sea.b_mm_per_C * d.dT_dt;
  d.exposure = land::flood_exposure(cal.land.exposure, s.sea.level_m);
  require_finite(d.thermal_rise_mm_per_yr, "sea_level", "rise rate", t);

  // Budget.
  const double revenue = budget::annual_revenue(st.fuel, d.quantities_ej, d.fossil_co2_gt, t);
  const double cost = budget::annual_subsidy_cost(st.fuel, d.quantities_ej, t);
  d.budget = budget::budget_flows(s.budget, revenue, cost);
  require_finite(d.budget.net, "budget", "net flow", t);
  return d;
}

WorldState advance(const WorldState& s, const Diagnostics& d, const Settings& st, const Calibration& cal,
                   double dt) {
  WorldState n = s;
  const double t = s.time;
  n.carbon = climate::carbon_cycle_step(s.carbon, cal.carbon, d.net_emissions_gtc, dt);
  n.climate = climate::temperature_step(s.climate, d.forcing, st.climate, dt);
  n.climate.nonco2_forcing = d.nonco2_forcing;
  n.sea = climate::sea_level_step(s.sea, cal.sea, st.melt, s.climate.delta_T, d.dT_dt, t, dt);
  n.n2o_burden_mt = s.n2o_burden_mt + dt * (d.n2o_total_mt - s.n2o_burden_mt / cal.nonco2.n2o_lifetime_yr);
  n.ch4_burden_mt = s.ch4_burden_mt + dt * (d.ch4_total_mt - s.ch4_burden_mt / cal.nonco2.ch4_lifetime_yr);

  n.energy.shares = energy::adjust_shares(s.energy.shares, d.desired_shares, cal.energy.capital_adjustment_yr, dt);
  n.energy.desired_shares = d.desired_shares;
  n.energy.effective_costs = d.effective_costs;
  n.energy.demand_EJ = d.demand_ej;
  n.energy.electricity_price = d.electricity_price;
  n.energy.buildings = energy::building_step(s.energy.buildings, st.demand, cal.energy.building_lifetime_yr, t, dt);

  n.land = land::land_step(s.land, d.land, t, dt);

  n.budget = budget::budget_step(d.budget, dt);
  n.anchors = d.anchors;
  n.emissions_cache = d.regional;
  n.step = s.step + 1;
  n.time = t + dt;  // replaced by the grid-exact time in step_once
  for (double v : n.energy.shares) {
    if (!std::isfinite(v) || v < -1e-12) throw NumericFailure("energy", "energy share became invalid", t);
  }
  if (!(n.n2o_burden_mt >= 0.0) || !(n.ch4_burden_mt >= 0.0)) {
    throw NumericFailure("emissions", "gas burden became negative", t);
  }
  return n;
}

WorldState step_once(const WorldState& s, const ScenarioSpec& spec, const Calibration& cal) {
  if (!(s.time < spec.grid.end_year)) throw DomainError("step_once: state is already at the end of the grid");
  const auto settings = resolve_settings(spec, cal);
  const auto d = diagnose(s, settings, cal);
  auto n = advance(s, d, settings, cal, spec.grid.dt);
  n.time = spec.grid.time_at(n.step);
  return n;
}

WorldState step_once(const WorldState& s, const ScenarioSpec& spec) {
  return step_once(s, spec, default_calibration());
}

// RunResult

RunResult::RunResult(int start_year, int end_year) : start_year_(start_year), end_year_(end_year) {}

std::vector<int> RunResult::years() const {
  std::vector<int> y;
  for (int k = start_year_; k <= end_year_; ++k) y.push_back(k);
  return y;
}

Series& RunResult::add(std::string id, std::string units) {
  if (index_.count(id)) throw ConfigError("duplicate output id " + id);
  index_[id] = series_.size();
  series_.push_back({std::move(id), std::move(units), {}});
  return series_.back();
}

const Series& RunResult::series(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw LookupError("unknown output: " + id);
  return series_[it->second];
}

double RunResult::at(const std::string& id, double year) const {
  const auto& s = series(id);
  const double k = year - start_year_;
  if (!(year >= start_year_ && year <= end_year_) || k != std::floor(k)) {
    throw LookupError("year " + format_number(year) + " is not on the annual grid");
  }
  return s.values.at(static_cast<std::size_t>(k));
}

RunResult RunResult::project(const std::vector<std::string>& ids) const {
  for (const auto& id : ids) series(id);
  RunResult out(start_year_, end_year_);
  for (const auto& s : series_) {
    if (std::find(ids.begin(), ids.end(), s.id) != ids.end()) out.add(s.id, s.units).values = s.values;
  }
  return out;
}

bool operator==(const RunResult& a, const RunResult& b) {
  if (a.start_year_ != b.start_year_ || a.end_year_ != b.end_year_ || a.series_.size() != b.series_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.series_.size(); ++i) {
    const auto& x = a.series_[i];
    const auto& y = b.series_[i];
    if (x.id != y.id || x.units != y.units || x.values != y.values) return false;
  }
  return true;
}

double sample_output(const RunResult& result, const std::string& output_id, double year) {
  return result.at(output_id, year);
}

namespace {

using Extractor = std::function<double(const WorldState&, const Diagnostics&)>;

struct OutputDef {
  std::string id;
  std::string units;
  Extractor get;
};

std::vector<OutputDef> build_output_defs() {
  std::vector<OutputDef> o;
  auto add = [&](std::string id, std::string units, Extractor f) {
    o.push_back({std::move(id), std::move(units), std::move(f)});
  };
  add("delta_T_C", "C", [](const WorldState& s, const Diagnostics&) { return s.climate.delta_T; });
  add("co2_ppm", "ppm", [](const WorldState&, const Diagnostics& d) { return d.co2_ppm; });
  add("forcing_W_m2", "W/m2", [](const WorldState&, const Diagnostics& d) { return d.forcing; });
  add("nonco2_forcing_W_m2", "W/m2", [](const WorldState&, const Diagnostics& d) { return d.nonco2_forcing; });
  add("sea_level_m", "m", [](const WorldState& s, const Diagnostics&) { return s.sea.level_m; });
  add("flood_risk_people", "million people",
      [](const WorldState&, const Diagnostics& d) { return d.exposure.at_risk_million; });
  add("below_high_tide_people", "million people",
      [](const WorldState&, const Diagnostics& d) { return d.exposure.below_high_tide_million; });
  add("arctic_ice_free_probability", "probability",
      [](const WorldState&, const Diagnostics& d) { return d.arctic_probability; });
  add("carbon_atmosphere_GtC", "GtC", [](const WorldState& s, const Diagnostics&) { return s.carbon.atmosphere; });
  add("carbon_mixed_layer_GtC", "GtC", [](const WorldState& s, const Diagnostics&) { return s.carbon.mixed_layer; });
  add("carbon_deep_ocean_GtC", "GtC", [](const WorldState& s, const Diagnostics&) {
    double sum = 0.0;
    for (double v : s.carbon.deep) sum += v;
    return sum;
  });
  add("carbon_biosphere_GtC", "GtC", [](const WorldState& s, const Diagnostics&) { return s.carbon.biosphere; });
  add("n2o_burden_Mt", "Mt N2O", [](const WorldState& s, const Diagnostics&) { return s.n2o_burden_mt; });
  add("ch4_burden_Mt", "Mt CH4", [](const WorldState& s, const Diagnostics&) { return s.ch4_burden_mt; });
  add("population_billion", "billion people", [](const WorldState&, const Diagnostics& d) {
    double sum = 0.0;
    for (double v : d.population_billion) sum += v;
    return sum;
  });
  add("gdp_trillion_usd", "trillion $/yr", [](const WorldState&, const Diagnostics& d) {
    double sum = 0.0;
    for (double v : d.gdp_trillion) sum += v;
    return sum;
  });
  add("energy_total_EJ", "EJ/yr", [](const WorldState&, const Diagnostics& d) { return d.demand_ej; });
  for (EnergySource src : kSources) {
    const auto i = index(src);
    add("energy_EJ_" + std::string(source_id(src)), "EJ/yr",
        [i](const WorldState&, const Diagnostics& d) { return d.quantities_ej[i]; });
  }
  for (EnergySource src : kSources) {
    const auto i = index(src);
    add("share_" + std::string(source_id(src)), "fraction",
        [i](const WorldState& s, const Diagnostics&) { return s.energy.shares[i]; });
  }
  for (EnergySource src : kSources) {
    const auto i = index(src);
    add("cost_" + std::string(source_id(src)), "$/GJ",
        [i](const WorldState&, const Diagnostics& d) { return d.effective_costs[i]; });
  }
  add("electricity_price", "$/kWh", [](const WorldState&, const Diagnostics& d) { return d.electricity_price; });
  add("building_energy_index", "fraction",
      [](const WorldState&, const Diagnostics& d) { return d.building_multiplier; });
  add("retrofitted_fraction", "fraction",
      [](const WorldState& s, const Diagnostics&) { return s.energy.buildings.retrofitted_fraction; });
  add("co2_energy_GtCO2", "GtCO2/yr", [](const WorldState&, const Diagnostics& d) { return d.energy_co2_gt; });
  add("co2_fossil_GtCO2", "GtCO2/yr", [](const WorldState&, const Diagnostics& d) { return d.fossil_co2_gt; });
  add("co2_net_GtCO2", "GtCO2/yr", [](const WorldState&, const Diagnostics& d) {
    return d.fossil_co2_gt + d.deforestation_gt - d.net_removal_gt;
  });
  add("ghg_total_GtCO2e", "GtCO2e/yr", [](const WorldState&, const Diagnostics& d) {
    return d.fossil_co2_gt + d.deforestation_gt - d.net_removal_gt +
           (d.ch4_total_mt * units::kGwpCH4 + d.n2o_total_mt * units::kGwpN2O) * 1e-3;
  });
  for (Region r : kRegions) {
    const auto i = index(r);
    add("ghg_" + std::string(region_id(r)), "GtCO2e/yr", [i](const WorldState&, const Diagnostics& d) {
      return d.regional.fossil_co2_gt[i] + d.regional.land_co2_gt[i] +
             (d.regional.ch4_mt[i] * units::kGwpCH4 + d.regional.n2o_mt[i] * units::kGwpN2O) * 1e-3;
    });
  }
  for (Region r : kRegions) {
    const auto i = index(r);
    add("co2_fossil_" + std::string(region_id(r)), "GtCO2/yr",
        [i](const WorldState&, const Diagnostics& d) { return d.regional.fossil_co2_gt[i]; });
  }
  for (Region r : kRegions) {
    const auto i = index(r);
    add("n2o_mt_" + std::string(region_id(r)), "Mt N2O/yr",
        [i](const WorldState&, const Diagnostics& d) { return d.regional.n2o_mt[i]; });
  }
  for (Region r : kRegions) {
    const auto i = index(r);
    add("ch4_mt_" + std::string(region_id(r)), "Mt CH4/yr",
        [i](const WorldState&, const Diagnostics& d) { return d.regional.ch4_mt[i]; });
  }
  add("n2o_mt_total", "Mt N2O/yr", [](const WorldState&, const Diagnostics& d) { return d.n2o_total_mt; });
  add("ch4_mt_total", "Mt CH4/yr", [](const WorldState&, const Diagnostics& d) { return d.ch4_total_mt; });
  add("deforestation_GtCO2", "GtCO2/yr", [](const WorldState&, const Diagnostics& d) { return d.deforestation_gt; });
  add("afforestation_gross_GtCO2", "GtCO2/yr",
      [](const WorldState&, const Diagnostics& d) { return d.gross_removal_gt; });
  add("land_removal_GtCO2", "GtCO2/yr", [](const WorldState&, const Diagnostics& d) { return d.net_removal_gt; });
  add("forest_area_Mha", "Mha", [](const WorldState& s, const Diagnostics&) {
    double sum = 0.0;
    for (const auto& a : s.land.areas) sum += a[index(LandType::Forest)];
    return sum;
  });
  add("budget_revenue", "$/yr", [](const WorldState&, const Diagnostics& d) { return d.budget.revenue; });
  add("budget_cost", "$/yr", [](const WorldState&, const Diagnostics& d) { return d.budget.subsidy_cost; });
  add("budget_net", "$/yr", [](const WorldState&, const Diagnostics& d) { return d.budget.net; });
  add("budget_cumulative", "$", [](const WorldState& s, const Diagnostics&) { return s.budget.cumulative; });
  return o;
}

const std::vector<OutputDef>& output_defs() {
  static const std::vector<OutputDef> defs = build_output_defs();
  return defs;
}

}  // namespace

const std::vector<OutputInfo>& output_catalog() {
  static const std::vector<OutputInfo> info = [] {
    std::vector<OutputInfo> v;
    for (const auto& d : output_defs()) v.push_back({d.id, d.units});
    return v;
  }();
  return info;
}

RunResult run_simulation(const ScenarioSpec& spec, const Calibration& cal) {
  spec.validate();
  const auto settings = resolve_settings(spec, cal);
  const auto& defs = output_defs();
  RunResult result(spec.grid.start_year, spec.grid.end_year);
  for (const auto& def : defs) result.add(def.id, def.units);
  // Pointers taken only after every series exists so none is invalidated.
  std::vector<std::vector<double>*> columns;
  for (const auto& def : defs) {
    auto& values = const_cast<Series&>(result.series(def.id)).values;
    values.reserve(static_cast<std::size_t>(spec.grid.year_count()));
    columns.push_back(&values);
  }
  auto record = [&](const WorldState& s, const Diagnostics& d) {
    for (std::size_t k = 0; k < defs.size(); ++k) columns[k]->push_back(defs[k].get(s, d));
  };

  WorldState state = build_initial_state(spec, cal);
  const long steps = spec.grid.step_count();
  const long per_year = spec.grid.steps_per_year();
  try {
    for (long k = 0; k < steps; ++k) {
      const auto d = diagnose(state, settings, cal);
      if (k % per_year == 0) record(state, d);
      state = advance(state, d, settings, cal, spec.grid.dt);
      state.time = spec.grid.time_at(state.step);
    }
    record(state, diagnose(state, settings, cal));
  } catch (const NumericFailure& e) {
    const double year = e.year() != 0.0 ? e.year() : state.time;
    throw NumericFailure(e.subsystem(), std::string(e.what()) + " (year " + format_number(year) + ")", year);
  }
  return result;
}

RunResult run_simulation(const ScenarioSpec& spec) { return run_simulation(spec, default_calibration()); }

}  // namespace climsim

#include "climsim/energy_market.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "climsim/error.hpp"

namespace climsim::energy {

double policy_ramp(double full_value, double year, double ramp_start, double ramp_duration) {
  if (ramp_duration < 0.0) throw DomainError("policy_ramp: negative duration");
  if (year < ramp_start) return 0.0;
  if (ramp_duration == 0.0 || year >= ramp_start + ramp_duration) return full_value;
  return full_value * (year - ramp_start) / ramp_duration;
}

PerSource<double> tax_per_gj(const FuelPolicy& policy, double year) {
  PerSource<double> t{};
  auto ramp = [&](double v) { return policy_ramp(v, year, policy.ramp_start, policy.ramp_duration); };
  t[index(EnergySource::Coal)] = ramp(policy.coal_tax) / units::kGJPerTCE;
  t[index(EnergySource::Oil)] = ramp(policy.oil_tax) / units::kGJPerBOE;
  t[index(EnergySource::Gas)] = ramp(policy.gas_tax) / units::kGJPerMCF;
  return t;
}

PerSource<double> subsidy_per_gj(const FuelPolicy& policy, double year) {
  PerSource<double> s{};
  auto ramp = [&](double v) { return policy_ramp(v, year, policy.ramp_start, policy.ramp_duration); };
  s[index(EnergySource::Bioenergy)] = ramp(policy.bio_subsidy) / units::kGJPerBOE;
  s[index(EnergySource::Renewables)] = ramp(policy.renewable_subsidy) / units::kGJPerKWh;
  s[index(EnergySource::Nuclear)] = ramp(policy.nuclear_subsidy) / units::kGJPerKWh;
  s[index(EnergySource::NewZeroCarbon)] = ramp(policy.nzc_subsidy) / units::kGJPerKWh;
  return s;
}

double carbon_price_at(const FuelPolicy& policy, double year) {
  return policy_ramp(policy.carbon_price, year, policy.ramp_start, policy.ramp_duration);
}

bool source_active(EnergySource s, double year, const BreakthroughSpec& bt) {
  if (s != EnergySource::NewZeroCarbon) return true;
  return bt.enabled && year >= bt.start_year;
}

double nzc_base_cost(const EnergyParams& p, double year, const BreakthroughSpec& bt) {
  const double coal = p.base_cost[index(EnergySource::Coal)](year);
  const double progress = std::clamp((year - bt.start_year) / bt.years_to_mass_market, 0.0, 1.0);
  const double multiple = bt.initial_price_multiple_of_coal + (1.0 - bt.initial_price_multiple_of_coal) * progress;
  return coal * multiple;
}

std::optional<double> base_cost(const EnergyParams& p, EnergySource s, double year, const BreakthroughSpec& bt) {
  if (!source_active(s, year, bt)) return std::nullopt;
  if (s == EnergySource::NewZeroCarbon) return nzc_base_cost(p, year, bt);
  return p.base_cost[index(s)](year);
}

std::optional<double> effective_cost(const EnergyParams& p, EnergySource s, double year, const FuelPolicy& policy,
                                     const BreakthroughSpec& bt) {
  auto base = base_cost(p, s, year, bt);
  if (!base) return std::nullopt;
  const auto i = index(s);
  return *base + tax_per_gj(policy, year)[i] - subsidy_per_gj(policy, year)[i] +
         carbon_price_at(policy, year) * p.emission_factor[i];
}

std::vector<double> softmax_shares(const std::vector<double>& costs, double beta) {
  if (costs.empty()) throw DomainError("softmax_shares: no sources");
  if (beta < 0.0) throw DomainError("softmax_shares: beta must be non-negative");
  double best = std::numeric_limits<double>::infinity();
  for (double c : costs) best = std::min(best, c);
  std::vector<double> w(costs.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < costs.size(); ++i) {
    w[i] = std::exp(-beta * (costs[i] - best));
    sum += w[i];
  }
  for (double& x : w) x /= sum;
  return w;
}

PerSource<double> market_shares(const PerSource<std::optional<double>>& costs, double beta) {
  std::vector<double> active;
  for (const auto& c : costs) {
    if (c) active.push_back(*c);
  }
  const auto w = softmax_shares(active, beta);
  PerSource<double> out{};
  std::size_t k = 0;
  for (std::size_t i = 0; i < kSourceCount; ++i) {
    if (costs[i]) out[i] = w[k++];
  }
  return out;
}

double coal_cut_fraction(const CoalReduction& c, double year) {
  return policy_ramp(c.eventual_pct / 100.0, year, c.start_year, c.ramp_years);
}

PerSource<double> apply_coal_cut(const PerSource<double>& shares, double cut_fraction) {
  const auto coal = index(EnergySource::Coal);
  const double removed = shares[coal] * cut_fraction;
  const double others = 1.0 - shares[coal];
  if (removed == 0.0 || !(others > 0.0)) return shares;
  PerSource<double> out = shares;
  out[coal] = shares[coal] - removed;
  for (std::size_t i = 0; i < kSourceCount; ++i) {
    if (i != coal) out[i] = shares[i] * (1.0 + removed / others);
  }
  return out;
}

double new_building_intensity(const DemandParams& d, double year) {
  if (year <= d.policy_start || d.new_building_efficiency_gain_pct == 0.0) return 1.0;
  return std::pow(1.0 - d.new_building_efficiency_gain_pct / 100.0, year - d.policy_start);
}

BuildingStock building_step(const BuildingStock& b, const DemandParams& d, double lifetime_yr, double year,
                            double dt) {
  const double target = new_building_intensity(d, year);
  BuildingStock next = b;
  double conversion = 1.0 / lifetime_yr;
  if (year >= d.policy_start && b.retrofitted_fraction < d.max_retrofit_potential) {
    const double rate = d.retrofit_rate_pct / 100.0;
    const double room = d.max_retrofit_potential - b.retrofitted_fraction;
    const double step = std::min(room, dt * rate);
    next.retrofitted_fraction = b.retrofitted_fraction + step;
    conversion += step / dt;
  }
  next.retrofitted_fraction = std::min(next.retrofitted_fraction, d.max_retrofit_potential);
  next.intensity = b.intensity + dt * conversion * (target - b.intensity);
  return next;
}

double building_multiplier(const BuildingStock& b, double affected_share) {
  return 1.0 - affected_share + affected_share * b.intensity;
}

double covid_multiplier(double year, double shock_years, double drop) {
  return (year >= 2020.0 && year < 2020.0 + shock_years) ? 1.0 - drop : 1.0;
}

double price_response(double wedge_per_gj, double base_average_per_gj, double elasticity) {
  if (!(base_average_per_gj > 0.0)) return 1.0;
  return std::exp(-elasticity * wedge_per_gj / base_average_per_gj);
}

double final_energy_demand(double raw_demand_ej, double building_mult, double covid_mult, double price_mult) {
  return raw_demand_ej * building_mult * covid_mult * price_mult;
}

PerSource<double> adjust_shares(const PerSource<double>& realized, const PerSource<double>& desired,
                                double adjustment_yr, double dt) {
  PerSource<double> out{};
  for (std::size_t i = 0; i < kSourceCount; ++i) {
    out[i] = realized[i] + dt * (desired[i] - realized[i]) / adjustment_yr;
  }
  return out;
}

double electricity_price(const EnergyMarketState& state, const EnergyParams& p) {
  double marginal = 0.0;
  double shortfall = 0.0;
  for (std::size_t i = 0; i < kSourceCount; ++i) {
    marginal += state.shares[i] * state.effective_costs[i];
    shortfall += std::max(0.0, state.desired_shares[i] - state.shares[i]);
  }
  return p.electricity_markup * units::kGJPerKWh * marginal * (1.0 + p.shortage_premium * shortfall);
}

double energy_co2(const PerSource<double>& shares, double demand_ej, const PerSource<double>& emission_factor) {
  double total = 0.0;
  for (std::size_t i = 0; i < kSourceCount; ++i) total += shares[i] * demand_ej * emission_factor[i];
  return total;
}

}  // namespace climsim::energy

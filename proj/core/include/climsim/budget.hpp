#pragma once

#include <optional>

#include "climsim/energy_market.hpp"

namespace climsim::budget {

struct BudgetState {
  double revenue = 0.0;       // $/yr
  double subsidy_cost = 0.0;  // $/yr
  double net = 0.0;           // $/yr
  double cumulative = 0.0;    // $
};

/// Per-fuel excise on realized quantities plus carbon price on fossil CO2, $/yr.
double annual_revenue(const energy::FuelPolicy& policy, const PerSource<double>& quantities_ej,
                      double fossil_co2_gt, double year);

/// Subsidy rate times realized quantity, summed over sources, $/yr.
double annual_subsidy_cost(const energy::FuelPolicy& policy, const PerSource<double>& quantities_ej, double year);

/// Flows at year with the cumulative carried over from the previous state.
BudgetState budget_flows(const BudgetState& prior, double revenue, double subsidy_cost);

/// Integrates the net flow over one step.
BudgetState budget_step(const BudgetState& s, double dt);

/// First year in which subsidy cost exceeds revenue.
std::optional<int> crossover_year(const std::vector<int>& years, const std::vector<double>& revenue,
                                  const std::vector<double>& cost);

}  // namespace climsim::budget

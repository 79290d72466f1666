#include "climsim/budget.hpp"

#include "climsim/error.hpp"

namespace climsim::budget {

namespace {
constexpr double kGJPerEJ = 1e9;
constexpr double kTonnesPerGt = 1e9;
}  // namespace

double annual_revenue(const energy::FuelPolicy& policy, const PerSource<double>& quantities_ej,
                      double fossil_co2_gt, double year) {
  const auto tax = energy::tax_per_gj(policy, year);
  double total = 0.0;
  for (std::size_t i = 0; i < kSourceCount; ++i) total += tax[i] * quantities_ej[i] * kGJPerEJ;
  return total + energy::carbon_price_at(policy, year) * fossil_co2_gt * kTonnesPerGt;
}

double annual_subsidy_cost(const energy::FuelPolicy& policy, const PerSource<double>& quantities_ej, double year) {
  const auto sub = energy::subsidy_per_gj(policy, year);
  double total = 0.0;
  for (std::size_t i = 0; i < kSourceCount; ++i) total += sub[i] * quantities_ej[i] * kGJPerEJ;
  return total;
}

BudgetState budget_flows(const BudgetState& prior, double revenue, double subsidy_cost) {
  return {revenue, subsidy_cost, revenue - subsidy_cost, prior.cumulative};
}

BudgetState budget_step(const BudgetState& s, double dt) {
  BudgetState next = s;
  next.cumulative = s.cumulative + s.net * dt;
  return next;
}

std::optional<int> crossover_year(const std::vector<int>& years, const std::vector<double>& revenue,
                                  const std::vector<double>& cost) {
  if (years.size() != revenue.size() || years.size() != cost.size()) {
    throw ComparisonError("crossover_year: series lengths differ");
  }
  for (std::size_t i = 0; i < years.size(); ++i) {
    if (cost[i] > revenue[i]) return years[i];
  }
  return std::nullopt;
}

}  // namespace climsim::budget

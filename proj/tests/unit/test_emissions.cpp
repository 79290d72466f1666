#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numeric>

#include "climsim/emissions.hpp"
#include "climsim/error.hpp"
#include "test_support.hpp"

using namespace climsim;
using namespace climsim::emissions;
using Catch::Approx;

namespace {

DriverParams toy_drivers() {
  DriverParams p;
  for (std::size_t i = 0; i < kRegionCount; ++i) {
    auto& d = p.regions[i];
    d.pop_1990_billion = 0.5 + 0.1 * static_cast<double>(i);
    d.pop_2020_billion = d.pop_1990_billion * 1.3;
    d.pop_2100_reference_billion = d.pop_2020_billion * 1.2;
    d.pop_increment_weight = 1.0 / kRegionCount;
    d.gdppc_1990_k = 5.0 + static_cast<double>(i);
    d.gdppc_2020_k = d.gdppc_1990_k * 2.0;
    d.gdppc_growth_offset_pct = 0.5 * static_cast<double>(i % 2);
    d.energy_intensity_1990 = 8.0;
    d.energy_intensity_2020 = 5.0;
    d.energy_intensity_decline_pct = 1.0;
  }
  double total = 0.0;
  for (const auto& d : p.regions) total += d.pop_2100_reference_billion;
  p.reference_population_2100_billion = total;
  return p;
}

}  // namespace

TEST_CASE("Kaya identity multiplies its factors with unit conversion", "[emissions]") {
  // 8e9 people * $10,000 * 5 MJ/$ * 70 kg/GJ = 28 Gt.
  CHECK(kaya_co2_gt(8.0e9, 1.0e4, 5.0, 70.0) == Approx(28.0));
  CHECK(kaya_co2_gt(0.0, 1.0e4, 5.0, 70.0) == 0.0);
  CHECK(kaya_co2_gt(8.0e9, 2.0e4, 5.0, 70.0) == Approx(2.0 * kaya_co2_gt(8.0e9, 1.0e4, 5.0, 70.0)));
}

TEST_CASE("historical drivers follow geometric interpolation", "[emissions]") {
  const auto p = toy_drivers();
  const DriverAssumptions a;
  const auto& us = p.regions[0];
  CHECK(population_billion(p, Region::US, 1990.0, a) == Approx(us.pop_1990_billion));
  CHECK(population_billion(p, Region::US, 2020.0, a) == Approx(us.pop_2020_billion));
  CHECK(population_billion(p, Region::US, 2005.0, a) ==
        Approx(std::sqrt(us.pop_1990_billion * us.pop_2020_billion)));
  CHECK(gdp_per_capita_k(p, Region::US, 2005.0, a) == Approx(std::sqrt(us.gdppc_1990_k * us.gdppc_2020_k)));
  CHECK(energy_intensity(p, Region::US, 2005.0, a) == Approx(std::sqrt(8.0 * 5.0)));
}

TEST_CASE("world population reaches the chosen 2100 total", "[emissions][property]") {
  const auto p = toy_drivers();
  testing::Gen gen(51);
  for (int trial = 0; trial < 50; ++trial) {
    DriverAssumptions a;
    a.population_2100_billion = gen.uniform(6.0, 16.0);
    double total = 0.0;
    for (Region r : kRegions) total += population_billion(p, r, 2100.0, a);
    REQUIRE(total == Approx(a.population_2100_billion).epsilon(1e-12));
    // Reference assumption leaves each region on its reference path.
  }
  DriverAssumptions ref;
  ref.population_2100_billion = p.reference_population_2100_billion;
  CHECK(population_billion(p, Region::China, 2100.0, ref) ==
        Approx(p.regions[index(Region::China)].pop_2100_reference_billion));
}

TEST_CASE("per-capita GDP grows at the lever rate plus a decaying offset", "[emissions]") {
  const auto p = toy_drivers();
  DriverAssumptions a;
  a.gdp_growth_pct = 2.0;
  // Region index 0 has no offset: pure exponential growth.
  const double g0 = p.regions[0].gdppc_2020_k;
  CHECK(gdp_per_capita_k(p, Region::US, 2070.0, a) == Approx(g0 * std::exp(0.02 * 50.0)));
  // Index 1 has +0.5 %/yr decaying over 40 yr; oracle by numerically integrating the rate.
  const auto& eu = p.regions[1];
  double log_g = 0.0;
  const int n = 50000;
  for (int k = 0; k < n; ++k) {
    const double t = (k + 0.5) * 50.0 / n;
    log_g += (2.0 + eu.gdppc_growth_offset_pct * std::exp(-t / 40.0)) / 100.0 * (50.0 / n);
  }
  CHECK(gdp_per_capita_k(p, Region::EU, 2070.0, a) == Approx(eu.gdppc_2020_k * std::exp(log_g)).epsilon(1e-8));
}

TEST_CASE("extra growth speeds intensity decline by the coupling share", "[emissions]") {
  auto p = toy_drivers();
  p.growth_efficiency_coupling = 0.5;
  DriverAssumptions a;
  a.gdp_growth_pct = 2.5;
  // decline = 1.0 + 0.5 * (2.5 - 1.5) = 1.5 %/yr.
  CHECK(energy_intensity(p, Region::US, 2060.0, a) == Approx(5.0 * std::exp(-0.015 * 40.0)));
  const double demand = raw_energy_demand_ej(p, Region::US, 2060.0, a);
  CHECK(demand == Approx(population_billion(p, Region::US, 2060.0, a) * gdp_per_capita_k(p, Region::US, 2060.0, a) *
                         energy_intensity(p, Region::US, 2060.0, a)));
}

TEST_CASE("CO2 allocation preserves the total", "[emissions][property]") {
  testing::Gen gen(53);
  for (int trial = 0; trial < 500; ++trial) {
    PerRegion<double> demand{};
    PerRegion<double> rel{};
    for (std::size_t i = 0; i < kRegionCount; ++i) {
      demand[i] = gen.uniform(0.0, 200.0);
      rel[i] = gen.uniform(0.2, 2.0);
    }
    const double total = gen.uniform(0.0, 60.0);
    const auto out = allocate_co2(demand, rel, total);
    REQUIRE(std::accumulate(out.begin(), out.end(), 0.0) == Approx(total).margin(1e-12));
    for (double v : out) REQUIRE(v >= 0.0);
  }
  const auto zero = allocate_co2({}, {}, 10.0);
  CHECK(std::accumulate(zero.begin(), zero.end(), 0.0) == 0.0);
}

TEST_CASE("annual reduction compounds from the start-year value", "[emissions]") {
  EmissionPolicy pol;
  pol.annual_reduction_pct = 10.0;
  pol.start_year = 2030.0;
  PolicyAnchors anchors;
  anchors = record_anchors(anchors, pol, 2029.0, 10.0);
  CHECK(!anchors.start_value);
  CHECK(policy_adjusted_co2(10.0, pol, anchors, 2029.0) == 10.0);
  anchors = record_anchors(anchors, pol, 2030.0, 12.0);
  REQUIRE(anchors.start_value);
  CHECK(*anchors.start_value == 12.0);
  anchors = record_anchors(anchors, pol, 2031.0, 99.0);
  CHECK(*anchors.start_value == 12.0);
  CHECK(policy_adjusted_co2(12.0, pol, anchors, 2030.0) == 12.0);
  CHECK(policy_adjusted_co2(13.0, pol, anchors, 2031.0) == Approx(10.8));
  CHECK(policy_adjusted_co2(13.0, pol, anchors, 2040.0) == Approx(12.0 * std::pow(0.9, 10)));
  // Never above baseline.
  CHECK(policy_adjusted_co2(1.0, pol, anchors, 2031.0) == 1.0);
}

TEST_CASE("peak pledge caps at the peak-year value", "[emissions]") {
  EmissionPolicy pol;
  pol.peak_year = 2040.0;
  PolicyAnchors a;
  a = record_anchors(a, pol, 2040.0, 15.0);
  REQUIRE(a.peak_value);
  CHECK(policy_adjusted_co2(20.0, pol, a, 2060.0) == 15.0);
  CHECK(policy_adjusted_co2(14.0, pol, a, 2060.0) == 14.0);
  CHECK(policy_adjusted_co2(20.0, pol, a, 2039.0) == 20.0);
  // A later reduction starts from the capped value.
  pol.annual_reduction_pct = 5.0;
  pol.start_year = 2050.0;
  a = record_anchors(a, pol, 2050.0, 18.0);
  CHECK(*a.start_value == 15.0);
}

TEST_CASE("non-CO2 coupling is linear down to its floor", "[emissions]") {
  CHECK(nonco2_coupling(0.0, 0.25, 0.5) == 1.0);
  CHECK(nonco2_coupling(0.4, 0.25, 0.5) == Approx(0.9));
  CHECK(nonco2_coupling(1.0, 0.8, 0.5) == 0.5);
}

TEST_CASE("non-CO2 emissions scale their baselines", "[emissions]") {
  NonCO2Params p;
  for (auto& s : p.n2o_baseline_mt) s = PiecewiseLinear::constant(4.0);
  for (auto& s : p.ch4_baseline_mt) s = PiecewiseLinear::constant(100.0);
  p.n2o_elasticity = 0.5;
  p.n2o_floor = 0.2;
  CHECK(n2o_emissions_mt(p, Region::India, 2050.0, 0.4) == Approx(4.0 * 0.8));
  p.ch4_agricultural_fraction = 0.4;
  p.ch4_elasticity = 0.5;
  p.ch4_floor = 0.0;
  // 100 * (0.6 * (1 - 0.5 * 0.2) + 0.4 * (1 - 0.25)) = 84.
  CHECK(ch4_emissions_mt(p, Region::India, 2050.0, 0.2, 0.25) == Approx(84.0));
  NonCO2Params empty;
  CHECK_THROWS_AS(n2o_baseline_mt(empty, Region::US, 2000.0), DataError);
}

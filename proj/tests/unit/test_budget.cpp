#include <catch2/catch_amalgamated.hpp>

#include "climsim/budget.hpp"
#include "climsim/error.hpp"
#include "test_support.hpp"

using namespace climsim;
using namespace climsim::budget;
using Catch::Approx;

TEST_CASE("revenue is excise times quantity plus carbon price times CO2", "[budget]") {
  energy::FuelPolicy pol;
  pol.oil_tax = 6.118;        // 1 $/GJ
  pol.carbon_price = 10.0;    // $/t
  PerSource<double> q{};
  q[index(EnergySource::Oil)] = 100.0;  // EJ
  // 100 EJ * 1e9 GJ/EJ * 1 $/GJ + 10 $/t * 5 Gt.
  CHECK(annual_revenue(pol, q, 5.0, 2030.0) == Approx(1.0e11 + 5.0e10));
  CHECK(annual_revenue(pol, q, 5.0, 2020.0) == 0.0);
}

TEST_CASE("subsidy cost is rate times quantity", "[budget]") {
  energy::FuelPolicy pol;
  pol.renewable_subsidy = 0.0036;  // 1 $/GJ
  pol.bio_subsidy = 12.236;        // 2 $/GJ
  PerSource<double> q{};
  q[index(EnergySource::Renewables)] = 50.0;
  q[index(EnergySource::Bioenergy)] = 10.0;
  q[index(EnergySource::Coal)] = 1000.0;
  CHECK(annual_subsidy_cost(pol, q, 2030.0) == Approx(5.0e10 + 2.0e10));
}

TEST_CASE("cumulative budget integrates the net flow", "[budget][property]") {
  testing::Gen gen(81);
  for (int trial = 0; trial < 100; ++trial) {
    BudgetState s;
    double oracle = 0.0;
    const double dt = 1.0 / gen.integer(1, 8);
    for (int k = 0; k < 200; ++k) {
      const double rev = gen.uniform(0.0, 1e12);
      const double cost = gen.uniform(0.0, 1e12);
      s = budget_flows(s, rev, cost);
      REQUIRE(s.net == rev - cost);
      s = budget_step(s, dt);
      oracle += (rev - cost) * dt;
    }
    REQUIRE(s.cumulative == Approx(oracle).margin(1e-3));
  }
}

TEST_CASE("crossover is the first year cost exceeds revenue", "[budget]") {
  CHECK(crossover_year({2030, 2031, 2032}, {5, 4, 3}, {1, 4, 5}) == 2032);
  CHECK(!crossover_year({2030, 2031}, {5, 5}, {1, 5}));
  CHECK(crossover_year({2030}, {0}, {1}) == 2030);
  CHECK_THROWS_AS(crossover_year({2030, 2031}, {1}, {1, 2}), ComparisonError);
}

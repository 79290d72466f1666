#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <nlohmann/json.hpp>

#include "climsim/error.hpp"
#include "climsim/run_io.hpp"
#include "test_support.hpp"

using namespace climsim;
using Catch::Approx;

namespace {

const RunResult& baseline() {
  static const RunResult r = testing::run_preset("baseline");
  return r;
}

RunResult random_run(testing::Gen& gen) {
  RunResult r(2000, 2000 + gen.integer(1, 30));
  const int n = gen.integer(1, 5);
  for (int k = 0; k < n; ++k) {
    auto& s = r.add("s" + std::to_string(k), "u" + std::to_string(k));
    for (int y = r.start_year(); y <= r.end_year(); ++y) {
      s.values.push_back(std::ldexp(gen.uniform(-1.0, 1.0), gen.integer(-40, 40)));
    }
  }
  return r;
}

}  // namespace

TEST_CASE("run output round-trips exactly through CSV and JSON", "[run_io]") {
  for (auto fmt : {OutputFormat::Csv, OutputFormat::Json}) {
    const auto text = emit_run(baseline(), fmt);
    CHECK(load_run(text, fmt) == baseline());
    CHECK(load_run(text) == baseline());
  }
}

TEST_CASE("round-trip holds for arbitrary doubles", "[run_io][property]") {
  testing::Gen gen(91);
  for (int trial = 0; trial < 100; ++trial) {
    const auto r = random_run(gen);
    REQUIRE(load_run(emit_run(r, OutputFormat::Csv)) == r);
    REQUIRE(load_run(emit_run(r, OutputFormat::Json)) == r);
  }
}

TEST_CASE("CSV header carries units and JSON carries the series map", "[run_io]") {
  const auto csv = emit_run(baseline(), OutputFormat::Csv);
  CHECK(csv.rfind("year,", 0) == 0);
  CHECK(csv.find("delta_T_C [C]") != std::string::npos);
  const auto doc = nlohmann::json::parse(emit_run(baseline(), OutputFormat::Json));
  CHECK(doc["start_year"] == 1990);
  CHECK(doc["end_year"] == 2100);
  CHECK(doc["years"].size() == 111);
  CHECK(doc["series"]["co2_ppm"]["values"].size() == 111);
  CHECK(doc["series"]["co2_ppm"].contains("units"));
}

TEST_CASE("malformed run files raise DataError", "[run_io]") {
  CHECK_THROWS_AS(load_run("", OutputFormat::Csv), DataError);
  CHECK_THROWS_AS(load_run("when,x [u]\n1990,1\n"), DataError);
  CHECK_THROWS_AS(load_run(R"({"start_year": 1990})"), DataError);
  CHECK_THROWS_AS(parse_format("xml"), ValidationError);
}

TEST_CASE("diff of a run with itself is zero", "[run_io]") {
  const auto rep = diff_runs(baseline(), baseline());
  CHECK(rep.series.size() == baseline().all().size());
  for (const auto& s : rep.series) {
    REQUIRE(s.max_abs_diff == 0.0);
    REQUIRE(s.terminal_delta == 0.0);
  }
  REQUIRE(rep.price_amplitude_a);
  CHECK(*rep.price_amplitude_a == *rep.price_amplitude_b);
  const auto doc = nlohmann::json::parse(diff_to_json(rep));
  CHECK(doc["series"]["delta_T_C"]["max_abs_diff"] == 0.0);
  CHECK(doc["metadata"].contains("price_amplitude_a"));
  CHECK(diff_to_text(rep).rfind("output,units,max_abs_diff", 0) == 0);
}

TEST_CASE("diff reports terminal deltas against an independent oracle", "[run_io]") {
  const auto us = testing::run_preset("us_reduction_10pct");
  const auto rep = diff_runs(baseline(), us);
  const auto& dT = rep.find("delta_T_C");
  CHECK(dT.terminal_delta == us.at("delta_T_C", 2100.0) - baseline().at("delta_T_C", 2100.0));
  CHECK(dT.terminal_delta < 0.0);
  double oracle = 0.0;
  int year = 1990;
  for (int y = 1990; y <= 2100; ++y) {
    const double d = std::abs(us.at("delta_T_C", y) - baseline().at("delta_T_C", y));
    if (d > oracle) {
      oracle = d;
      year = y;
    }
  }
  CHECK(dT.max_abs_diff == oracle);
  CHECK(dT.year_of_max == year);
  CHECK_THROWS_AS(rep.find("nope"), LookupError);
}

TEST_CASE("a $40 carbon price keeps total energy near baseline", "[run_io]") {
  const auto cp = testing::run_preset("carbon_price_40");
  const double base = baseline().at("energy_total_EJ", 2100.0);
  CHECK(std::abs(cp.at("energy_total_EJ", 2100.0) - base) / base <= 0.05);
  CHECK(cp.at("share_renewables", 2100.0) > cp.at("share_coal", 2100.0));
}

TEST_CASE("diff rejects runs on different grids", "[run_io]") {
  RunResult a(1990, 2000);
  RunResult b(1990, 2001);
  CHECK_THROWS_AS(diff_runs(a, b), ComparisonError);
  CHECK_THROWS_AS(cumulative_avoided(a, b, "x", 1995), ComparisonError);
}

TEST_CASE("cumulative avoided sums annual differences", "[run_io]") {
  RunResult base(2000, 2003);
  RunResult run(2000, 2003);
  base.add("e", "Gt").values = {10, 10, 10, 10};
  run.add("e", "Gt").values = {10, 9, 8, 7};
  CHECK(cumulative_avoided(run, base, "e", 2003) == 6.0);
  CHECK(cumulative_avoided(run, base, "e", 2001) == 1.0);
  CHECK_THROWS_AS(cumulative_avoided(run, base, "e", 2004), LookupError);
}

TEST_CASE("price amplitude is the range of the price series", "[run_io]") {
  RunResult r(2000, 2003);
  r.add("electricity_price", "$/kWh").values = {0.1, 0.3, 0.05, 0.2};
  CHECK(price_amplitude(r) == Approx(0.25));
  RunResult b(2000, 2002);
  b.add("budget_revenue", "$/yr").values = {5, 5, 5};
  b.add("budget_cost", "$/yr").values = {1, 6, 7};
  CHECK(budget_crossover_year(b) == 2001);
}

#include <catch2/catch_amalgamated.hpp>

#include <nlohmann/json.hpp>
#include <set>

#include "climsim/error.hpp"
#include "climsim/levers.hpp"
#include "climsim/scenario.hpp"
#include "test_support.hpp"

using namespace climsim;
using nlohmann::json;

TEST_CASE("registry exposes the documented lever bounds", "[levers]") {
  const auto& reg = LeverRegistry::instance();
  const auto& cp = reg.find("carbon_price");
  CHECK(cp.min == 0.0);
  CHECK(cp.max == 250.0);
  CHECK(cp.units == "$/tCO2");
  CHECK(cp.ramp_capable);
  CHECK(reg.find("coal_tax").units == "$/TCE");
  CHECK(reg.find("coal_tax").max == 200.0);
  CHECK(reg.find("oil_tax").max == 150.0);
  CHECK(reg.find("gas_tax").max == 20.0);
  CHECK(reg.find("renewable_subsidy").max == 0.1);
  CHECK(reg.find("fuel_policy_start").default_value == 2025.0);
  CHECK(reg.find("nzc_start_year").default_value == 2040.0);
  CHECK(reg.find("nzc_years_to_mass_market").default_value == 7.0);
  CHECK(reg.find("nzc_price_multiple").default_value == 2.0);
  CHECK(reg.find("population_2100_billion").group == LeverGroup::Assumption);
  CHECK_THROWS_AS(reg.find("no_such_lever"), LookupError);
  CHECK(reg.try_find("no_such_lever") == nullptr);
}

TEST_CASE("registry ids are unique and defaults lie within bounds", "[levers]") {
  const auto& all = LeverRegistry::instance().all();
  std::set<std::string> ids;
  for (std::size_t i = 0; i < all.size(); ++i) {
    const auto& d = all[i];
    INFO(d.id);
    CHECK(ids.insert(d.id).second);
    CHECK(d.min <= d.default_value);
    CHECK(d.default_value <= d.max);
    CHECK(d.step > 0.0);
    CHECK(LeverRegistry::instance().index_of(d.id) == i);
  }
}

TEST_CASE("registry JSON is byte-identical across calls and complete", "[levers]") {
  const auto& reg = LeverRegistry::instance();
  const auto a = registry_to_json(reg);
  CHECK(a == registry_to_json(reg));
  const auto doc = json::parse(a);
  REQUIRE(doc["levers"].size() == reg.all().size());
  const auto& first = doc["levers"][0];
  for (const char* key : {"id", "units", "min", "max", "default", "step", "ramp_capable", "group", "category",
                          "description"}) {
    CHECK(first.contains(key));
  }
  CHECK(doc["normalization"]["budget_usd"].get<double>() == 1.0e13);
  CHECK(doc["normalization"]["price_usd_per_kwh"].get<double>() == 0.01);
  for (const auto& l : doc["levers"]) {
    const auto g = l["group"].get<std::string>();
    CHECK((g == "assumptions" || g == "levers"));
  }
}

TEST_CASE("lever vector validates on set", "[levers]") {
  LeverVector v;
  v.set("carbon_price", 40.0);
  CHECK(v.get("carbon_price") == 40.0);
  CHECK(v.non_default() == std::map<std::string, double>{{"carbon_price", 40.0}});
  try {
    v.set("carbon_price", 251.0);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(e.field() == "carbon_price");
  }
  CHECK_THROWS_AS(v.get("nope"), LookupError);
}

TEST_CASE("scenario parse is strict", "[scenario]") {
  const auto spec = parse_scenario(R"({"name":"x","levers":{"carbon_price":40}})");
  CHECK(spec.name == "x");
  CHECK(spec.levers.get("carbon_price") == 40.0);
  CHECK(spec.levers.get("oil_tax") == 0.0);

  auto field_of = [](const std::string& text) {
    try {
      parse_scenario(text);
    } catch (const ValidationError& e) {
      return e.field();
    }
    return std::string("<no error>");
  };
  CHECK(field_of(R"({"levers":{"carbon_prise":40}})") == "carbon_prise");
  CHECK(field_of(R"({"levers":{"carbon_price":300}})") == "carbon_price");
  CHECK(field_of(R"({"levers":{"carbon_price":-1}})") == "carbon_price");
  CHECK(field_of(R"({"levers":{"climate_sensitivity":3}})") == "climate_sensitivity");
  CHECK(field_of(R"({"colour":"red"})") == "colour");
  CHECK(field_of(R"({"levers":{"nzc_breakthrough":0.5}})") == "nzc_breakthrough");
  CHECK(field_of(R"({"grid":{"dt":0.3}})") == "grid.dt");
  CHECK(field_of(R"({"grid":{"start_year":1990.5}})") == "grid.start_year");
  CHECK(field_of(R"({"grid":{"step":1}})") == "grid.step");
  CHECK(field_of(R"({"levers":{"carbon_price":"40"}})") == "carbon_price");
  CHECK_THROWS_AS(parse_scenario("{not json"), ValidationError);
  CHECK_THROWS_AS(parse_scenario("[]"), ValidationError);
}

TEST_CASE("grid validation requires whole steps per year", "[scenario]") {
  TimeGrid g;
  CHECK_NOTHROW(g.validate());
  CHECK(g.steps_per_year() == 4);
  CHECK(g.step_count() == 440);
  CHECK(g.year_count() == 111);
  for (double dt : {1.0, 0.5, 0.125, 0.0625}) {
    g.dt = dt;
    CHECK_NOTHROW(g.validate());
  }
  for (double dt : {0.0, -0.25, 0.3, 2.0}) {
    g.dt = dt;
    CHECK_THROWS_AS(g.validate(), ValidationError);
  }
  g = TimeGrid{};
  g.end_year = g.start_year;
  CHECK_THROWS_AS(g.validate(), ValidationError);
}

TEST_CASE("scenario JSON round-trips through parse", "[scenario][property]") {
  testing::Gen gen(21);
  const auto& all = LeverRegistry::instance().all();
  for (int trial = 0; trial < 50; ++trial) {
    ScenarioSpec spec;
    spec.name = "trial";
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (!gen.coin()) continue;
      const auto& d = all[i];
      // Years and flags stay at defaults so the cross-lever ordering rule holds.
      if (d.units == "flag" || d.units == "year") continue;
      spec.levers.set(d.id, gen.uniform(d.min, d.max));
    }
    const auto back = parse_scenario(scenario_to_json(spec));
    REQUIRE(back.levers == spec.levers);
    REQUIRE(back.grid == spec.grid);
  }
}

TEST_CASE("reduction starting before a pledged peak is rejected", "[scenario]") {
  CHECK_THROWS_AS(parse_scenario(R"({"levers":{"peak_pledge_us":1,"peak_year_us":2050,
      "emission_reduction_pct_us":5,"emission_reduction_start_us":2030}})"),
                  ValidationError);
  CHECK_NOTHROW(parse_scenario(R"({"levers":{"peak_pledge_us":1,"peak_year_us":2030,
      "emission_reduction_pct_us":5,"emission_reduction_start_us":2040}})"));
}

TEST_CASE("bundled presets parse and cover every experiment family", "[scenario]") {
  const auto presets = list_presets(testing::data_dir());
  REQUIRE(presets.size() >= 30);
  std::set<std::string> tags;
  for (const auto& p : presets) {
    INFO(p.id);
    CHECK(!p.provenance.empty());
    CHECK(!p.description.empty());
    tags.insert(p.provenance);
    CHECK_NOTHROW(load_preset(p.id, testing::data_dir()));
  }
  for (const char* tag : {"status-quo", "taxation", "subsidies", "policy-timing", "growth", "regional-reductions",
                          "n2o", "buildings", "land", "sea-level-melt", "markets", "government-budget",
                          "climate-sensitivity"}) {
    CHECK(tags.count(tag) == 1);
  }
  CHECK_THROWS_AS(load_preset("missing", testing::data_dir()), LookupError);
  CHECK_THROWS_AS(load_preset("../baseline", testing::data_dir()), LookupError);
}

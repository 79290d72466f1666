#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "climsim/error.hpp"
#include "climsim/piecewise.hpp"
#include "climsim/text.hpp"
#include "test_support.hpp"

using namespace climsim;
using Catch::Approx;

TEST_CASE("format_number round-trips every double exactly", "[text][property]") {
  testing::Gen gen(7);
  for (int i = 0; i < 2000; ++i) {
    const double x = std::ldexp(gen.uniform(-1.0, 1.0), gen.integer(-60, 60));
    REQUIRE(parse_number(format_number(x)) == x);
  }
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(2100.0) == "2100");
}

TEST_CASE("parse_number is strict", "[text]") {
  CHECK(parse_number("  3.5 ") == 3.5);
  CHECK_THROWS_AS(parse_number("3.5x"), ConfigError);
  CHECK_THROWS_AS(parse_number(""), ConfigError);
  CHECK_THROWS_AS(parse_number("abc"), ConfigError);
}

TEST_CASE("split keeps empty fields", "[text]") {
  const auto parts = split("a,,b,", ',');
  REQUIRE(parts.size() == 4);
  CHECK(parts[1].empty());
  CHECK(parts[3].empty());
  CHECK(trim("\t x \r\n") == "x");
}

TEST_CASE("fnv1a matches published vectors", "[text]") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
  CHECK(fnv1a_hex("foobar") == "85944171f73967e8");
}

TEST_CASE("piecewise interpolates and holds ends", "[piecewise]") {
  const PiecewiseLinear f({{1990.0, 1.0}, {2020.0, 4.0}, {2100.0, 0.0}});
  CHECK(f(1900.0) == 1.0);
  CHECK(f(1990.0) == 1.0);
  CHECK(f(2005.0) == Approx(2.5));
  CHECK(f(2060.0) == Approx(2.0));
  CHECK(f(2200.0) == 0.0);
  CHECK(f.scaled(2.0)(2005.0) == Approx(5.0));
  CHECK(PiecewiseLinear::constant(3.0)(-1e9) == 3.0);
  CHECK(PiecewiseLinear()(2000.0) == 0.0);
}

TEST_CASE("piecewise rejects unordered knots and bad text", "[piecewise]") {
  CHECK_THROWS_AS(PiecewiseLinear({{2000.0, 1.0}, {2000.0, 2.0}}), ConfigError);
  CHECK_THROWS_AS(PiecewiseLinear::parse("2000=1"), ConfigError);
  CHECK_THROWS_AS(PiecewiseLinear::parse(""), ConfigError);
}

TEST_CASE("piecewise text form round-trips", "[piecewise][property]") {
  testing::Gen gen(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::pair<double, double>> knots;
    double year = gen.uniform(1800.0, 2000.0);
    const int n = gen.integer(1, 8);
    for (int k = 0; k < n; ++k) {
      knots.emplace_back(year, gen.uniform(-100.0, 100.0));
      year += gen.uniform(0.25, 40.0);
    }
    const PiecewiseLinear f(knots);
    const auto g = PiecewiseLinear::parse(f.to_string());
    REQUIRE(g.knots() == f.knots());
  }
}

TEST_CASE("piecewise stays within the hull of neighbouring knots", "[piecewise][property]") {
  testing::Gen gen(13);
  const PiecewiseLinear f({{0.0, -2.0}, {10.0, 5.0}, {25.0, 1.0}, {40.0, 9.0}});
  for (int i = 0; i < 1000; ++i) {
    const double x = gen.uniform(-10.0, 50.0);
    const auto& k = f.knots();
    auto hi = std::upper_bound(k.begin(), k.end(), x, [](double y, const auto& p) { return y < p.first; });
    if (hi == k.begin() || hi == k.end()) continue;
    const auto lo = hi - 1;
    REQUIRE(f(x) >= std::min(lo->second, hi->second) - 1e-12);
    REQUIRE(f(x) <= std::max(lo->second, hi->second) + 1e-12);
  }
}

#include "climsim/piecewise.hpp"

#include <algorithm>
#include <sstream>

#include "climsim/error.hpp"
#include "climsim/text.hpp"

namespace climsim {

PiecewiseLinear::PiecewiseLinear(std::vector<std::pair<double, double>> knots) : knots_(std::move(knots)) {
  for (std::size_t i = 1; i < knots_.size(); ++i) {
    if (!(knots_[i].first > knots_[i - 1].first)) {
      throw ConfigError("piecewise series knots must have strictly increasing years");
    }
  }
}

double PiecewiseLinear::operator()(double year) const {
  if (knots_.empty()) return 0.0;
  if (year <= knots_.front().first) return knots_.front().second;
  if (year >= knots_.back().first) return knots_.back().second;
  auto hi = std::upper_bound(knots_.begin(), knots_.end(), year,
                             [](double y, const auto& knot) { return y < knot.first; });
  auto lo = hi - 1;
  const double w = (year - lo->first) / (hi->first - lo->first);
  return lo->second + w * (hi->second - lo->second);
}

PiecewiseLinear PiecewiseLinear::scaled(double factor) const {
  auto copy = knots_;
  for (auto& [year, value] : copy) value *= factor;
  return PiecewiseLinear(std::move(copy));
}

std::string PiecewiseLinear::to_string() const {
  std::string out;
  for (const auto& [year, value] : knots_) {
    if (!out.empty()) out += ' ';
    out += format_number(year);
    out += ':';
    out += format_number(value);
  }
  return out;
}

PiecewiseLinear PiecewiseLinear::parse(const std::string& text) {
  std::vector<std::pair<double, double>> knots;
  std::istringstream in(text);
  std::string token;
  while (in >> token) {
    const auto colon = token.find(':');
    if (colon == std::string::npos) {
      throw ConfigError("expected year:value pair, got '" + token + "'");
    }
    knots.emplace_back(parse_number(token.substr(0, colon)), parse_number(token.substr(colon + 1)));
  }
  if (knots.empty()) throw ConfigError("empty piecewise series");
  return PiecewiseLinear(std::move(knots));
}

}  // namespace climsim

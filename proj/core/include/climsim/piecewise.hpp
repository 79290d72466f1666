#pragma once

#include <string>
#include <utility>
#include <vector>

namespace climsim {

/// Piecewise-linear function of calendar year, held constant outside its knots.
class PiecewiseLinear {
 public:
  PiecewiseLinear() = default;
  explicit PiecewiseLinear(std::vector<std::pair<double, double>> knots);

  /// Constant function.
  static PiecewiseLinear constant(double value) { return PiecewiseLinear({{0.0, value}}); }

  double operator()(double year) const;

  const std::vector<std::pair<double, double>>& knots() const noexcept { return knots_; }
  bool empty() const noexcept { return knots_.empty(); }

  PiecewiseLinear scaled(double factor) const;

  /// "year:value year:value ..." form used in the calibration file.
  std::string to_string() const;
  static PiecewiseLinear parse(const std::string& text);

 private:
  std::vector<std::pair<double, double>> knots_;
};

}  // namespace climsim

#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace climsim {

enum class LeverGroup { Assumption, Policy };

struct LeverDef {
  std::string id;
  std::string units;
  double min = 0.0;
  double max = 0.0;
  double default_value = 0.0;
  double step = 0.0;
  bool ramp_capable = false;  // governed by a start year and ramp duration
  LeverGroup group = LeverGroup::Policy;
  std::string category;  // climate, drivers, energy, buildings, emissions, land, methane
  std::string description;
};

/// Scale factors that give optimizer weights implementation-independent meaning.
struct ObjectiveNormalization {
  double budget_usd = 1.0e13;        // cumulative deficit equal to this scores 1
  double price_usd_per_kwh = 0.01;   // price amplitude equal to this scores 1
};

/// Catalog of every assumption and policy input, in a fixed stable order.
class LeverRegistry {
 public:
  static const LeverRegistry& instance();

  const std::vector<LeverDef>& all() const noexcept { return levers_; }
  const LeverDef& find(const std::string& id) const;  // LookupError if unknown
  const LeverDef* try_find(const std::string& id) const;
  std::size_t index_of(const std::string& id) const;

  const ObjectiveNormalization& normalization() const noexcept { return norm_; }

 private:
  LeverRegistry();
  std::vector<LeverDef> levers_;
  std::map<std::string, std::size_t> by_id_;
  ObjectiveNormalization norm_;
};

/// Complete assignment of values to every registered lever.
class LeverVector {
 public:
  /// All levers at their registry defaults.
  LeverVector();

  double get(const std::string& id) const;
  double operator[](std::size_t i) const { return values_[i]; }
  /// Validates against registry bounds; ValidationError names lever and bounds.
  void set(const std::string& id, double value);
  /// Sets without bound checks, for clamped optimizer probes.
  void set_index(std::size_t i, double value) { values_[i] = value; }

  const std::vector<double>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }

  /// Levers whose value differs from the registry default.
  std::map<std::string, double> non_default() const;

  friend bool operator==(const LeverVector& a, const LeverVector& b) { return a.values_ == b.values_; }

 private:
  std::vector<double> values_;
};

/// {"levers": [...], "normalization": {...}} in registry order.
std::string registry_to_json(const LeverRegistry& registry, int indent = -1);

/// Lever ids constructed for per-region and per-source families.
namespace lever_ids {
std::string reduction_pct(std::string_view region);
std::string reduction_start(std::string_view region);
std::string peak_pledge(std::string_view region);
std::string peak_year(std::string_view region);
std::string afforestation_pct(std::string_view region);
std::string deforestation_prevention_pct(std::string_view region);
}  // namespace lever_ids

}  // namespace climsim

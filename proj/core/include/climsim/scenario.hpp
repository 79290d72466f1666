#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "climsim/levers.hpp"

namespace climsim {

/// Integration grid. The number of steps and the steps per year are both
/// integral so that every calendar year is a grid point.
struct TimeGrid {
  int start_year = 1990;
  int end_year = 2100;
  double dt = 0.25;

  void validate() const;  // ValidationError
  long step_count() const;
  long steps_per_year() const;
  double time_at(long step) const { return start_year + static_cast<double>(step) * dt; }
  int year_count() const { return end_year - start_year + 1; }

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;
};

struct ScenarioSpec {
  std::string name = "baseline";
  std::string description;
  std::string provenance;  // experiment-family tag for bundled presets
  TimeGrid grid;
  LeverVector levers;

  void validate() const;
};

/// Strict JSON parse. Omitted levers take registry defaults; unknown keys,
/// misplaced groups and out-of-bounds values raise ValidationError.
/// Accepted top-level keys: name, description, provenance, grid, assumptions, levers.
ScenarioSpec parse_scenario(const std::string& json_text);
std::string scenario_to_json(const ScenarioSpec& spec, int indent = 2);

struct PresetInfo {
  std::string id;
  std::string description;
  std::string provenance;
  std::filesystem::path path;
};

/// Bundled presets under <data>/presets, sorted by id.
std::vector<PresetInfo> list_presets(const std::filesystem::path& data_dir);
std::vector<PresetInfo> list_presets();
ScenarioSpec load_preset(const std::string& id, const std::filesystem::path& data_dir);
ScenarioSpec load_preset(const std::string& id);

}  // namespace climsim

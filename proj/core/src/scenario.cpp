#include "climsim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>

#include "climsim/calibration.hpp"
#include "climsim/error.hpp"
#include "climsim/text.hpp"
#include "climsim/types.hpp"

namespace climsim {

using nlohmann::json;

namespace {

constexpr double kGridTolerance = 1e-9;

bool is_integral(double x) { return std::abs(x - std::round(x)) < kGridTolerance; }

void require_object(const json& j, const std::string& field) {
  if (!j.is_object()) throw ValidationError(field, "'" + field + "' must be an object");
}

std::string require_string(const json& j, const std::string& field) {
  if (!j.is_string()) throw ValidationError(field, "'" + field + "' must be a string");
  return j.get<std::string>();
}

double require_number(const json& j, const std::string& field) {
  if (!j.is_number()) throw ValidationError(field, "'" + field + "' must be a number");
  return j.get<double>();
}

}  // namespace

void TimeGrid::validate() const {
  if (!(start_year < end_year)) throw ValidationError("grid", "grid start_year must precede end_year");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ValidationError("grid.dt", "grid dt must be positive");
  if (dt > 1.0 || !is_integral(1.0 / dt)) {
    throw ValidationError("grid.dt", "grid dt must divide one year into a whole number of steps");
  }
}

long TimeGrid::steps_per_year() const { return std::lround(1.0 / dt); }

long TimeGrid::step_count() const { return steps_per_year() * (end_year - start_year); }

void ScenarioSpec::validate() const {
  grid.validate();
  const auto& reg = LeverRegistry::instance();
  const auto& all = reg.all();
  for (std::size_t i = 0; i < all.size(); ++i) {
    const auto& d = all[i];
    const double v = levers[i];
    if (!std::isfinite(v) || v < d.min || v > d.max) {
      throw ValidationError(d.id, "lever '" + d.id + "' = " + format_number(v) + " outside [" +
                                      format_number(d.min) + ", " + format_number(d.max) + "]");
    }
    if (d.units == "flag" && v != 0.0 && v != 1.0) {
      throw ValidationError(d.id, "lever '" + d.id + "' is a flag and must be 0 or 1");
    }
  }
  for (Region r : kRegions) {
    const auto id = region_id(r);
    const bool pledge = levers.get(lever_ids::peak_pledge(id)) == 1.0;
    const bool reduces = levers.get(lever_ids::reduction_pct(id)) > 0.0;
    if (pledge && reduces &&
        levers.get(lever_ids::reduction_start(id)) < levers.get(lever_ids::peak_year(id))) {
      throw ValidationError(lever_ids::reduction_start(id),
                            "reduction start year precedes the peak year for region " + std::string(id));
    }
  }
}

ScenarioSpec parse_scenario(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError("", std::string("malformed scenario JSON: ") + e.what());
  }
  require_object(doc, "scenario");

  ScenarioSpec spec;
  spec.name.clear();
  const auto& reg = LeverRegistry::instance();
  for (const auto& [key, value] : doc.items()) {
    if (key == "name") {
      spec.name = require_string(value, key);
    } else if (key == "description") {
      spec.description = require_string(value, key);
    } else if (key == "provenance") {
      spec.provenance = require_string(value, key);
    } else if (key == "grid") {
      require_object(value, key);
      for (const auto& [gk, gv] : value.items()) {
        const std::string field = "grid." + gk;
        const double x = require_number(gv, field);
        if (gk == "dt") {
          spec.grid.dt = x;
        } else if (gk == "start_year" || gk == "end_year") {
          if (!is_integral(x)) throw ValidationError(field, "'" + field + "' must be a whole year");
          (gk == "start_year" ? spec.grid.start_year : spec.grid.end_year) = static_cast<int>(std::lround(x));
        } else {
          throw ValidationError(field, "unknown key '" + field + "'");
        }
      }
    } else if (key == "assumptions" || key == "levers") {
      require_object(value, key);
      const auto group = key == "assumptions" ? LeverGroup::Assumption : LeverGroup::Policy;
      for (const auto& [lk, lv] : value.items()) {
        const auto* def = reg.try_find(lk);
        if (def == nullptr) throw ValidationError(lk, "unknown " + key + " key '" + lk + "'");
        if (def->group != group) {
          throw ValidationError(lk, "'" + lk + "' belongs in '" +
                                        (group == LeverGroup::Assumption ? "levers" : "assumptions") + "'");
        }
        spec.levers.set(lk, require_number(lv, lk));
      }
    } else {
      throw ValidationError(key, "unknown key '" + key + "'");
    }
  }
  if (spec.name.empty()) spec.name = "scenario";
  spec.validate();
  return spec;
}

std::string scenario_to_json(const ScenarioSpec& spec, int indent) {
  json doc = json::object();
  doc["name"] = spec.name;
  if (!spec.description.empty()) doc["description"] = spec.description;
  if (!spec.provenance.empty()) doc["provenance"] = spec.provenance;
  doc["grid"] = {{"start_year", spec.grid.start_year}, {"end_year", spec.grid.end_year}, {"dt", spec.grid.dt}};
  json assumptions = json::object();
  json levers = json::object();
  const auto& all = LeverRegistry::instance().all();
  for (std::size_t i = 0; i < all.size(); ++i) {
    auto& target = all[i].group == LeverGroup::Assumption ? assumptions : levers;
    target[all[i].id] = spec.levers[i];
  }
  doc["assumptions"] = std::move(assumptions);
  doc["levers"] = std::move(levers);
  return doc.dump(indent);
}

std::vector<PresetInfo> list_presets(const std::filesystem::path& data_dir) {
  const auto dir = data_dir / "presets";
  if (!std::filesystem::is_directory(dir)) throw ConfigError("preset directory not found: " + dir.string());
  std::vector<PresetInfo> out;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() != ".json") continue;
    const auto spec = parse_scenario(read_text_file(entry.path()));
    out.push_back({entry.path().stem().string(), spec.description, spec.provenance, entry.path()});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return out;
}

std::vector<PresetInfo> list_presets() { return list_presets(default_data_dir()); }

ScenarioSpec load_preset(const std::string& id, const std::filesystem::path& data_dir) {
  if (id.empty() || id.find_first_of("/\\.") != std::string::npos) throw LookupError("invalid preset id: " + id);
  const auto path = data_dir / "presets" / (id + ".json");
  if (!std::filesystem::exists(path)) throw LookupError("unknown preset: " + id);
  auto spec = parse_scenario(read_text_file(path));
  return spec;
}

ScenarioSpec load_preset(const std::string& id) { return load_preset(id, default_data_dir()); }

}  // namespace climsim

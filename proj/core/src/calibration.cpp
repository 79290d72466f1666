#include "climsim/calibration.hpp"

#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>
#include <type_traits>
#include <variant>

#include "climsim/error.hpp"
#include "climsim/reference.hpp"
#include "climsim/text.hpp"

#ifndef CLIMSIM_DEFAULT_DATA_DIR
#define CLIMSIM_DEFAULT_DATA_DIR "data"
#endif

namespace climsim {

KeyValueDocument KeyValueDocument::parse(const std::string& text) {
  KeyValueDocument doc;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("calibration line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    std::string key(trim(body.substr(0, eq)));
    std::string value(trim(body.substr(eq + 1)));
    if (doc.contains(key)) {
      throw ConfigError("calibration line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
    doc.set(key, std::move(value));
  }
  return doc;
}

const std::string& KeyValueDocument::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("calibration key missing: " + key);
  return it->second;
}

double KeyValueDocument::number(const std::string& key) const {
  try {
    return parse_number(get(key));
  } catch (const ConfigError& e) {
    throw ConfigError("calibration key '" + key + "': " + e.what());
  }
}

void KeyValueDocument::set(const std::string& key, std::string value) {
  if (values_.count(key) == 0) order_.push_back(key);
  values_[key] = std::move(value);
}

void KeyValueDocument::set(const std::string& key, double value) { set(key, format_number(value)); }

std::string KeyValueDocument::to_string(const std::string& header) const {
  std::string out = header;
  for (const auto& key : order_) {
    out += key;
    out += " = ";
    out += values_.at(key);
    out += '\n';
  }
  return out;
}

namespace {

using Slot = std::variant<double*, PiecewiseLinear*, std::string*>;

std::vector<std::pair<std::string, Slot>> bind(Calibration& c) {
  std::vector<std::pair<std::string, Slot>> s;
  s.emplace_back("calibration_version", &c.version);
  s.emplace_back("climate.f2x", &c.f2x);
  s.emplace_back("climate.heat_capacity", &c.heat_capacity);

  auto& cc = c.carbon;
  s.emplace_back("carbon.mixed_layer_depth_m", &cc.mixed_layer_depth_m);
  for (std::size_t i = 0; i < 4; ++i) {
    s.emplace_back("carbon.deep_layer_thickness_m." + std::to_string(i + 1), &cc.deep_layer_thickness_m[i]);
  }
  s.emplace_back("carbon.mixed_layer_preindustrial_gtc", &cc.mixed_layer_preindustrial_gtc);
  s.emplace_back("carbon.biosphere_preindustrial_gtc", &cc.biosphere_preindustrial_gtc);
  s.emplace_back("carbon.buffer_factor", &cc.buffer_factor);
  s.emplace_back("carbon.atm_mixed_exchange_yr", &cc.atm_mixed_exchange_yr);
  s.emplace_back("carbon.eddy_diffusivity_m2_per_yr", &cc.eddy_diffusivity_m2_per_yr);
  s.emplace_back("carbon.biosphere_uptake_per_yr", &cc.biosphere_uptake_per_yr);
  s.emplace_back("carbon.biosphere_turnover_yr", &cc.biosphere_turnover_yr);

  s.emplace_back("sea.a_mm_per_yr_per_C", &c.sea.a_mm_per_yr_per_C);
  s.emplace_back("sea.b_mm_per_C", &c.sea.b_mm_per_C);
  s.emplace_back("sea.T0_C", &c.sea.T0_C);
  s.emplace_back("arctic.steepness_per_C", &c.arctic.steepness_per_C);
  s.emplace_back("arctic.midpoint_C", &c.arctic.midpoint_C);

  auto& n = c.nonco2;
  s.emplace_back("nonco2.other_forcing", &n.other_forcing);
  s.emplace_back("nonco2.n2o_lifetime_yr", &n.n2o_lifetime_yr);
  s.emplace_back("nonco2.ch4_lifetime_yr", &n.ch4_lifetime_yr);
  s.emplace_back("nonco2.n2o_forcing_per_mt", &n.n2o_forcing_per_mt);
  s.emplace_back("nonco2.ch4_forcing_per_mt", &n.ch4_forcing_per_mt);
  s.emplace_back("nonco2.n2o_elasticity", &n.n2o_elasticity);
  s.emplace_back("nonco2.n2o_floor", &n.n2o_floor);
  s.emplace_back("nonco2.ch4_elasticity", &n.ch4_elasticity);
  s.emplace_back("nonco2.ch4_floor", &n.ch4_floor);
  s.emplace_back("nonco2.ch4_agricultural_fraction", &n.ch4_agricultural_fraction);
  for (Region r : kRegions) {
    if (r != Region::India) {
      s.emplace_back("nonco2.n2o_baseline_mt." + std::string(region_id(r)), &n.n2o_baseline_mt[index(r)]);
    }
    s.emplace_back("nonco2.ch4_baseline_mt." + std::string(region_id(r)), &n.ch4_baseline_mt[index(r)]);
  }

  auto& d = c.drivers;
  s.emplace_back("drivers.reference_population_2100_billion", &d.reference_population_2100_billion);
  s.emplace_back("drivers.reference_growth_pct", &d.reference_growth_pct);
  s.emplace_back("drivers.projection_start_year", &d.projection_start_year);
  s.emplace_back("drivers.population_shape_yr", &d.population_shape_yr);
  s.emplace_back("drivers.growth_offset_decay_yr", &d.growth_offset_decay_yr);
  s.emplace_back("drivers.growth_efficiency_coupling", &d.growth_efficiency_coupling);
  s.emplace_back("drivers.intensity_decline_adjust_pct", &d.intensity_decline_adjust_pct);

  auto& e = c.energy;
  for (EnergySource src : kSources) {
    const std::string id(source_id(src));
    s.emplace_back("energy.base_cost." + id, &e.base_cost[index(src)]);
    s.emplace_back("energy.emission_factor." + id, &e.emission_factor[index(src)]);
    s.emplace_back("energy.initial_share." + id, &e.initial_shares[index(src)]);
  }
  s.emplace_back("energy.beta", &e.beta);
  s.emplace_back("energy.capital_adjustment_yr", &e.capital_adjustment_yr);
  s.emplace_back("energy.demand_price_elasticity", &e.demand_price_elasticity);
  s.emplace_back("energy.shortage_premium", &e.shortage_premium);
  s.emplace_back("energy.electricity_markup", &e.electricity_markup);
  s.emplace_back("energy.efficiency_affected_share", &e.efficiency_affected_share);
  s.emplace_back("energy.building_lifetime_yr", &e.building_lifetime_yr);
  s.emplace_back("energy.covid_demand_drop", &e.covid_demand_drop);

  auto& l = c.land;
  for (Region r : kRegions) {
    s.emplace_back("land.deforestation_baseline_gtco2." + std::string(region_id(r)),
                   &l.deforestation_baseline_gtco2[index(r)]);
  }
  s.emplace_back("land.forest_carbon_density_tco2_per_ha", &l.forest_carbon_density_tco2_per_ha);
  s.emplace_back("land.peak_uptake_tco2_per_ha_yr", &l.peak_uptake_tco2_per_ha_yr);
  s.emplace_back("land.uptake_peak_age_yr", &l.uptake_peak_age_yr);
  s.emplace_back("land.steady_uptake_fraction", &l.steady_uptake_fraction);
  s.emplace_back("land.uptake_decline_yr", &l.uptake_decline_yr);
  s.emplace_back("land.planting_period_yr", &l.planting_period_yr);
  s.emplace_back("land.leakage_fraction", &l.leakage_fraction);

  auto& i = c.initial;
  s.emplace_back("initial.year", &i.year);
  s.emplace_back("initial.atmosphere_gtc", &i.atmosphere_gtc);
  s.emplace_back("initial.mixed_layer_gtc", &i.mixed_layer_gtc);
  for (std::size_t k = 0; k < 4; ++k) {
    s.emplace_back("initial.deep_gtc." + std::to_string(k + 1), &i.deep_gtc[k]);
  }
  s.emplace_back("initial.biosphere_gtc", &i.biosphere_gtc);
  s.emplace_back("initial.delta_T_C", &i.delta_T_C);
  s.emplace_back("initial.n2o_burden_mt", &i.n2o_burden_mt);
  s.emplace_back("initial.ch4_burden_mt", &i.ch4_burden_mt);
  return s;
}

std::string exposure_to_text(const std::vector<ExposurePoint>& points) {
  std::string out;
  for (const auto& p : points) {
    if (!out.empty()) out += ' ';
    out += format_number(p.sea_level_m) + ':' + format_number(p.at_risk_million) + ':' +
           format_number(p.below_high_tide_million);
  }
  return out;
}

std::vector<ExposurePoint> exposure_from_text(const std::string& text) {
  std::vector<ExposurePoint> points;
  std::istringstream in(text);
  std::string token;
  while (in >> token) {
    const auto parts = split(token, ':');
    if (parts.size() != 3) throw ConfigError("exposure anchor must be level:at_risk:below_tide");
    points.push_back({parse_number(parts[0]), parse_number(parts[1]), parse_number(parts[2])});
  }
  for (std::size_t k = 1; k < points.size(); ++k) {
    if (!(points[k].sea_level_m > points[k - 1].sea_level_m)) {
      throw ConfigError("exposure anchors must have increasing sea level");
    }
    if (points[k].at_risk_million < points[k - 1].at_risk_million ||
        points[k].below_high_tide_million < points[k - 1].below_high_tide_million) {
      throw ConfigError("exposure curve must be non-decreasing");
    }
  }
  if (points.empty()) throw ConfigError("exposure curve needs at least one anchor");
  return points;
}

}  // namespace

std::string calibration_to_text(const Calibration& cal) {
  KeyValueDocument doc;
  doc.set("schema_version", std::to_string(kCalibrationSchemaVersion));
  for (auto& [key, slot] : bind(const_cast<Calibration&>(cal))) {
    std::visit(
        [&](auto* ptr) {
          using T = std::remove_pointer_t<decltype(ptr)>;
          if constexpr (std::is_same_v<T, double>) {
            doc.set(key, *ptr);
          } else if constexpr (std::is_same_v<T, PiecewiseLinear>) {
            doc.set(key, ptr->to_string());
          } else {
            doc.set(key, *ptr);
          }
        },
        slot);
  }
  doc.set("land.exposure_curve", exposure_to_text(cal.land.exposure));
  return doc.to_string(
      "# climsim calibration file. Schema: docs/calibration.md.\n"
      "# Generated by climsim-calibrate; edit by re-running the calibration.\n");
}

void apply_calibration_text(Calibration& cal, const std::string& text) {
  const auto doc = KeyValueDocument::parse(text);
  const auto schema = doc.number("schema_version");
  if (schema != kCalibrationSchemaVersion) {
    throw ConfigError("unsupported calibration schema_version " + doc.get("schema_version"));
  }
  for (auto& [key, slot] : bind(cal)) {
    std::visit(
        [&](auto* ptr) {
          using T = std::remove_pointer_t<decltype(ptr)>;
          if constexpr (std::is_same_v<T, double>) {
            *ptr = doc.number(key);
          } else if constexpr (std::is_same_v<T, PiecewiseLinear>) {
            *ptr = PiecewiseLinear::parse(doc.get(key));
          } else {
            *ptr = doc.get(key);
          }
        },
        slot);
  }
  cal.land.exposure = exposure_from_text(doc.get("land.exposure_curve"));
  cal.checksum = fnv1a_hex(text);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void load_regions_csv(Calibration& cal, const std::filesystem::path& path) {
  const auto text = read_text_file(path);
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> header;
  std::array<bool, kRegionCount> seen{};
  while (std::getline(in, line)) {
    if (trim(line).empty() || trim(line).front() == '#') continue;
    auto cells = split(trim(line), ',');
    if (header.empty()) {
      header = cells;
      continue;
    }
    if (cells.size() != header.size()) throw ConfigError(path.string() + ": ragged row");
    std::map<std::string, std::string> row;
    for (std::size_t k = 0; k < cells.size(); ++k) row[std::string(trim(header[k]))] = std::string(trim(cells[k]));
    auto num = [&](const std::string& col) {
      auto it = row.find(col);
      if (it == row.end()) throw ConfigError(path.string() + ": missing column " + col);
      return parse_number(it->second);
    };
    bool matched = false;
    for (Region r : kRegions) {
      if (row["region"] != region_id(r)) continue;
      matched = true;
      seen[index(r)] = true;
      auto& d = cal.drivers.regions[index(r)];
      d.pop_1990_billion = num("pop_1990_billion");
      d.pop_2020_billion = num("pop_2020_billion");
      d.pop_2100_reference_billion = num("pop_2100_reference_billion");
      d.pop_increment_weight = num("pop_increment_weight");
      d.gdppc_1990_k = num("gdppc_1990_k");
      d.gdppc_2020_k = num("gdppc_2020_k");
      d.gdppc_growth_offset_pct = num("gdppc_growth_offset_pct");
      d.energy_intensity_1990 = num("energy_intensity_1990");
      d.energy_intensity_2020 = num("energy_intensity_2020");
      d.energy_intensity_decline_pct = num("energy_intensity_decline_pct");
      d.carbon_intensity_rel = PiecewiseLinear(
          {{1990.0, num("carbon_intensity_rel_1990")},
           {2020.0, num("carbon_intensity_rel_2020")},
           {2100.0, num("carbon_intensity_rel_2100")}});
      for (std::size_t t = 0; t < kLandTypeCount; ++t) {
        d.land_mha[t] = num(std::string(land_type_id(static_cast<LandType>(t))) + "_mha");
      }
      d.max_afforestable_mha = num("max_afforestable_mha");
    }
    if (!matched) throw ConfigError(path.string() + ": unknown region " + row["region"]);
  }
  for (Region r : kRegions) {
    if (!seen[index(r)]) throw ConfigError(path.string() + ": missing region " + std::string(region_id(r)));
  }
}

std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("CLIMSIM_DATA_DIR"); env != nullptr && *env != '\0') {
    return env;
  }
  return CLIMSIM_DEFAULT_DATA_DIR;
}

void load_snapshot(Calibration& cal, const std::filesystem::path& data_dir) {
  load_regions_csv(cal, data_dir / "regions.csv");

  // India's N2O baseline is the bundled reference table, extended back to 1990
  // along its 2000-2010 trend.
  const auto table = load_reference("india_n2o", data_dir);
  std::vector<std::pair<double, double>> knots;
  const double v2000 = table.value(2000.0, 0);
  const double slope = (table.value(2010.0, 0) - v2000) / 10.0;
  knots.emplace_back(1990.0, v2000 - 10.0 * slope);
  for (std::size_t k = 0; k < table.years.size(); ++k) knots.emplace_back(table.years[k], table.columns[0][k]);
  cal.nonco2.n2o_baseline_mt[index(Region::India)] = PiecewiseLinear(std::move(knots));
}

Calibration load_calibration(const std::filesystem::path& data_dir) {
  Calibration cal;
  const auto cal_path = data_dir / "calibration.txt";
  if (!std::filesystem::exists(cal_path)) {
    throw ConfigError("calibration file not found: " + cal_path.string());
  }
  apply_calibration_text(cal, read_text_file(cal_path));
  load_snapshot(cal, data_dir);
  return cal;
}

const Calibration& default_calibration() {
  static const Calibration cal = load_calibration(default_data_dir());
  return cal;
}

}  // namespace climsim

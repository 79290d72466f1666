#include "climsim/run_io.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>
#include <sstream>

#include "climsim/budget.hpp"
#include "climsim/error.hpp"
#include "climsim/text.hpp"

namespace climsim {

using ojson = nlohmann::ordered_json;

OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  throw ValidationError("format", "unknown output format '" + name + "' (expected csv or json)");
}

namespace {

std::string emit_csv(const RunResult& r) {
  std::string out = "year";
  for (const auto& s : r.all()) out += "," + s.id + " [" + s.units + "]";
  out += "\n";
  const auto years = r.years();
  for (std::size_t k = 0; k < years.size(); ++k) {
    out += std::to_string(years[k]);
    for (const auto& s : r.all()) {
      out += ',';
      out += format_number(s.values[k]);
    }
    out += '\n';
  }
  return out;
}

std::string emit_json(const RunResult& r) {
  ojson doc;
  doc["start_year"] = r.start_year();
  doc["end_year"] = r.end_year();
  doc["years"] = r.years();
  ojson series = ojson::object();
  for (const auto& s : r.all()) series[s.id] = {{"units", s.units}, {"values", s.values}};
  doc["series"] = std::move(series);
  return doc.dump();
}

RunResult load_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw DataError("empty run CSV");
  const auto header = split(trim(line), ',');
  if (header.empty() || header[0] != "year") throw DataError("run CSV must start with a year column");
  std::vector<std::pair<std::string, std::string>> cols;
  for (std::size_t k = 1; k < header.size(); ++k) {
    const auto& h = header[k];
    const auto open = h.rfind(" [");
    if (open == std::string::npos || h.back() != ']') throw DataError("run CSV header cell lacks units: " + h);
    cols.emplace_back(h.substr(0, open), h.substr(open + 2, h.size() - open - 3));
  }
  std::vector<int> years;
  std::vector<std::vector<double>> values(cols.size());
  while (std::getline(in, line)) {
    const auto body = trim(line);
    if (body.empty()) continue;
    const auto cells = split(body, ',');
    if (cells.size() != header.size()) throw DataError("ragged run CSV row");
    years.push_back(static_cast<int>(parse_number(cells[0])));
    for (std::size_t k = 1; k < cells.size(); ++k) values[k - 1].push_back(parse_number(cells[k]));
  }
  if (years.empty()) throw DataError("run CSV has no rows");
  for (std::size_t k = 1; k < years.size(); ++k) {
    if (years[k] != years[k - 1] + 1) throw DataError("run CSV years are not consecutive");
  }
  RunResult r(years.front(), years.back());
  for (std::size_t k = 0; k < cols.size(); ++k) r.add(cols[k].first, cols[k].second).values = std::move(values[k]);
  return r;
}

RunResult load_json(const std::string& text) {
  ojson doc;
  try {
    doc = ojson::parse(text);
  } catch (const ojson::parse_error& e) {
    throw DataError(std::string("malformed run JSON: ") + e.what());
  }
  try {
    RunResult r(doc.at("start_year").get<int>(), doc.at("end_year").get<int>());
    const auto n = static_cast<std::size_t>(r.end_year() - r.start_year() + 1);
    for (const auto& [id, s] : doc.at("series").items()) {
      auto values = s.at("values").get<std::vector<double>>();
      if (values.size() != n) throw DataError("series " + id + " does not cover the grid");
      r.add(id, s.at("units").get<std::string>()).values = std::move(values);
    }
    return r;
  } catch (const ojson::exception& e) {
    throw DataError(std::string("run JSON does not match the schema: ") + e.what());
  }
}

}  // namespace

std::string emit_run(const RunResult& result, OutputFormat format) {
  return format == OutputFormat::Csv ? emit_csv(result) : emit_json(result);
}

RunResult load_run(const std::string& text, OutputFormat format) {
  return format == OutputFormat::Csv ? load_csv(text) : load_json(text);
}

RunResult load_run(const std::string& text) {
  const auto body = trim(text);
  return load_run(text, !body.empty() && body.front() == '{' ? OutputFormat::Json : OutputFormat::Csv);
}

const SeriesDiff& DiffReport::find(const std::string& id) const {
  for (const auto& s : series) {
    if (s.id == id) return s;
  }
  throw LookupError("diff has no output " + id);
}

DiffReport diff_runs(const RunResult& a, const RunResult& b) {
  if (a.start_year() != b.start_year() || a.end_year() != b.end_year()) {
    throw ComparisonError("runs cover different grids");
  }
  DiffReport report;
  report.start_year = a.start_year();
  report.end_year = a.end_year();
  for (const auto& sa : a.all()) {
    if (!b.has(sa.id)) continue;
    const auto& sb = b.series(sa.id);
    if (sa.units != sb.units) throw ComparisonError("output " + sa.id + " has different units");
    SeriesDiff d;
    d.id = sa.id;
    d.units = sa.units;
    d.year_of_max = a.start_year();
    for (std::size_t k = 0; k < sa.values.size(); ++k) {
      const double diff = std::abs(sa.values[k] - sb.values[k]);
      if (diff > d.max_abs_diff) {
        d.max_abs_diff = diff;
        d.year_of_max = a.start_year() + static_cast<int>(k);
      }
    }
    d.terminal_a = sa.values.back();
    d.terminal_b = sb.values.back();
    d.terminal_delta = d.terminal_b - d.terminal_a;
    report.series.push_back(d);
  }
  if (a.has("electricity_price")) report.price_amplitude_a = price_amplitude(a);
  if (b.has("electricity_price")) report.price_amplitude_b = price_amplitude(b);
  return report;
}

std::string diff_to_json(const DiffReport& report, int indent) {
  ojson doc;
  doc["start_year"] = report.start_year;
  doc["end_year"] = report.end_year;
  ojson meta = ojson::object();
  if (report.price_amplitude_a) meta["price_amplitude_a"] = *report.price_amplitude_a;
  if (report.price_amplitude_b) meta["price_amplitude_b"] = *report.price_amplitude_b;
  doc["metadata"] = std::move(meta);
  ojson series = ojson::object();
  for (const auto& s : report.series) {
    series[s.id] = {{"units", s.units},           {"max_abs_diff", s.max_abs_diff}, {"year_of_max", s.year_of_max},
                    {"terminal_a", s.terminal_a}, {"terminal_b", s.terminal_b},     {"terminal_delta", s.terminal_delta}};
  }
  doc["series"] = std::move(series);
  return doc.dump(indent);
}

std::string diff_to_text(const DiffReport& report) {
  std::ostringstream out;
  out << "output,units,max_abs_diff,year_of_max,terminal_a,terminal_b,terminal_delta\n";
  for (const auto& s : report.series) {
    out << s.id << ',' << s.units << ',' << format_number(s.max_abs_diff) << ',' << s.year_of_max << ','
        << format_number(s.terminal_a) << ',' << format_number(s.terminal_b) << ',' << format_number(s.terminal_delta)
        << '\n';
  }
  return out.str();
}

double cumulative_avoided(const RunResult& run, const RunResult& baseline_run, const std::string& output_id,
                          int through_year) {
  if (run.start_year() != baseline_run.start_year() || run.end_year() != baseline_run.end_year()) {
    throw ComparisonError("runs cover different grids");
  }
  if (through_year < run.start_year() || through_year > run.end_year()) {
    throw LookupError("through_year outside the grid");
  }
  const auto& s = run.series(output_id).values;
  const auto& b = baseline_run.series(output_id).values;
  double total = 0.0;
  for (int y = run.start_year(); y <= through_year; ++y) {
    const auto k = static_cast<std::size_t>(y - run.start_year());
    total += b[k] - s[k];
  }
  return total;
}

double price_amplitude(const RunResult& result) {
  const auto& v = result.series("electricity_price").values;
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi - *lo;
}

std::optional<int> budget_crossover_year(const RunResult& result) {
  return budget::crossover_year(result.years(), result.series("budget_revenue").values,
                                result.series("budget_cost").values);
}

}  // namespace climsim

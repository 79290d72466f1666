#include "climsim/reference.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "climsim/calibration.hpp"
#include "climsim/error.hpp"
#include "climsim/text.hpp"

namespace climsim {

namespace {

struct ReferenceEntry {
  const char* id;
  const char* file;
  const char* source;
};

constexpr ReferenceEntry kEntries[] = {
    {"india_n2o", "india_n2o.csv", "India N2O emissions table, baseline vs 10%/yr reduction from 2050"},
};

}  // namespace

double ReferenceSeries::value(double year, std::size_t column) const {
  if (column >= columns.size()) throw LookupError(id + ": no column " + std::to_string(column));
  auto it = std::lower_bound(years.begin(), years.end(), year);
  if (it == years.end() || *it != year) {
    throw LookupError(id + ": year " + format_number(year) + " not tabulated");
  }
  return columns[column][static_cast<std::size_t>(it - years.begin())];
}

double ReferenceSeries::value(double year, const std::string& column) const {
  auto it = std::find(column_names.begin(), column_names.end(), column);
  if (it == column_names.end()) throw LookupError(id + ": no column " + column);
  return value(year, static_cast<std::size_t>(it - column_names.begin()));
}

std::vector<std::string> reference_ids() {
  std::vector<std::string> ids;
  for (const auto& e : kEntries) ids.emplace_back(e.id);
  return ids;
}

ReferenceSeries load_reference(const std::string& id, const std::filesystem::path& data_dir) {
  const ReferenceEntry* entry = nullptr;
  for (const auto& e : kEntries) {
    if (id == e.id) entry = &e;
  }
  if (entry == nullptr) throw LookupError("unknown reference series: " + id);

  const auto path = data_dir / "reference" / entry->file;
  std::istringstream in(read_text_file(path));
  ReferenceSeries series;
  series.id = id;
  series.source = entry->source;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto cells = split(body, ',');
    if (!have_header) {
      if (cells.empty() || trim(cells[0]) != "year") throw DataError(path.string() + ": first column must be year");
      for (std::size_t k = 1; k < cells.size(); ++k) series.column_names.emplace_back(trim(cells[k]));
      series.columns.resize(series.column_names.size());
      have_header = true;
      continue;
    }
    if (cells.size() != series.column_names.size() + 1) throw DataError(path.string() + ": ragged row");
    const double year = parse_number(cells[0]);
    if (!series.years.empty() && !(year > series.years.back())) {
      throw DataError(path.string() + ": years must be strictly increasing");
    }
    series.years.push_back(year);
    for (std::size_t k = 1; k < cells.size(); ++k) {
      const double v = parse_number(cells[k]);
      if (!std::isfinite(v)) throw DataError(path.string() + ": non-finite value");
      series.columns[k - 1].push_back(v);
    }
  }
  if (!have_header || series.years.empty()) throw DataError(path.string() + ": empty reference table");
  return series;
}

ReferenceSeries load_reference(const std::string& id) { return load_reference(id, default_data_dir()); }

}  // namespace climsim

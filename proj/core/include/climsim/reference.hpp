#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace climsim {

/// Bundled tabular reference data, stored verbatim as CSV under data/reference/.
struct ReferenceSeries {
  std::string id;
  std::string source;
  std::vector<std::string> column_names;  // value columns, excluding "year"
  std::vector<double> years;
  std::vector<std::vector<double>> columns;

  /// Exact stored value; LookupError if the year is not tabulated.
  double value(double year, std::size_t column) const;
  double value(double year, const std::string& column) const;
};

/// Known ids: "india_n2o" (India N2O baseline and reduction scenario).
ReferenceSeries load_reference(const std::string& id, const std::filesystem::path& data_dir);
ReferenceSeries load_reference(const std::string& id);

std::vector<std::string> reference_ids();

}  // namespace climsim

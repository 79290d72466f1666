#pragma once

#include <optional>
#include <string>
#include <vector>

#include "climsim/engine.hpp"

namespace climsim {

enum class OutputFormat { Csv, Json };

/// "csv" or "json"; ValidationError otherwise.
OutputFormat parse_format(const std::string& name);

/// CSV: one row per year, header cells "id [units]". JSON: series map with
/// units. Both round-trip exactly through load_run.
std::string emit_run(const RunResult& result, OutputFormat format);
RunResult load_run(const std::string& text, OutputFormat format);
/// Detects the format from the first non-blank character.
RunResult load_run(const std::string& text);

struct SeriesDiff {
  std::string id;
  std::string units;
  double max_abs_diff = 0.0;
  int year_of_max = 0;
  double terminal_a = 0.0;
  double terminal_b = 0.0;
  double terminal_delta = 0.0;  // b - a
};

struct DiffReport {
  int start_year = 0;
  int end_year = 0;
  std::vector<SeriesDiff> series;
  std::optional<double> price_amplitude_a;
  std::optional<double> price_amplitude_b;

  const SeriesDiff& find(const std::string& id) const;
};

/// Outputs present in both runs are compared; ComparisonError on different grids.
DiffReport diff_runs(const RunResult& a, const RunResult& b);
std::string diff_to_json(const DiffReport& report, int indent = 2);
std::string diff_to_text(const DiffReport& report);

/// Sum over annual values through through_year of (baseline - run).
double cumulative_avoided(const RunResult& run, const RunResult& baseline_run, const std::string& output_id,
                          int through_year);

/// Peak-to-trough range of the electricity price over the whole run, $/kWh.
double price_amplitude(const RunResult& result);

/// First year budget cost exceeds revenue.
std::optional<int> budget_crossover_year(const RunResult& result);

}  // namespace climsim

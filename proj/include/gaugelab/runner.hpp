#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gaugelab/report.hpp"
#include "gaugelab/scenario.hpp"

namespace gaugelab {

/// Declarative run description. Parses deterministically; unknown keys are
/// rejected at every level.
struct ScenarioSpecFile {
  std::string scenario;
  std::map<std::string, double> params;
  std::optional<int> grid_n;
  std::vector<std::string> routes;  ///< empty means the scenario defaults
  std::optional<double> tolerance;  ///< residual tolerance override
  std::optional<int> csv_n;
  std::optional<std::string> csv_path;
  std::optional<std::string> report_path;
};

struct SpecParseError : std::runtime_error {
  int line = 0, column = 0;
  SpecParseError(const std::string& msg, int line_, int column_)
      : std::runtime_error(msg), line(line_), column(column_) {}
};

ScenarioSpecFile parse_spec_text(const std::string& text);
ScenarioSpecFile parse_spec_file(const std::string& path);

struct RunOptions {
  std::optional<int> grid_n;
  std::optional<double> tolerance;
  std::optional<std::string> csv_path;
  std::optional<std::string> report_path;
};

struct RunOutcome {
  RunReport report;
  CsvTable csv;
  int exit_code = 0;  ///< 0 pass, 1 check failure
};

/// Executes the scenario's check suite (field consistency, fixing
/// conditions, residuals, route equality, cancellation / causality /
/// multiplicity recovery as applicable) and renders the CSV table.
RunOutcome run(const ScenarioSpecFile& spec, const RunOptions& opt = {});

}  // namespace gaugelab

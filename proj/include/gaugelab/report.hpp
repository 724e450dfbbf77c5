#pragma once

#include <string>
#include <vector>

namespace gaugelab {

struct CheckLine {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string note;
};

/// Human-readable run summary: one line per check, overall PASS iff every
/// line passes.
struct RunReport {
  std::string scenario;
  std::vector<CheckLine> lines;

  bool overall() const {
    for (const auto& l : lines)
      if (!l.pass) return false;
    return true;
  }
  std::vector<std::string> failing_names() const;
  std::string to_text() const;
};

/// Fixed-width scientific format with 12 significant digits.
std::string format_value(double v);

/// CSV writer: mandatory header row, 12-significant-digit values, rows in
/// the order given (byte-reproducible).
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::string to_string() const;
  void write(const std::string& path) const;
};

}  // namespace gaugelab

#include "gaugelab/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gaugelab {

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.11e", v);
  return buf;
}

std::vector<std::string> RunReport::failing_names() const {
  std::vector<std::string> out;
  for (const auto& l : lines)
    if (!l.pass) out.push_back(l.name);
  return out;
}

std::string RunReport::to_text() const {
  std::ostringstream os;
  os << "scenario: " << scenario << "\n";
  for (const auto& l : lines) {
    os << (l.pass ? "PASS" : "FAIL") << "  " << l.name << "  measured=" << format_value(l.measured)
       << "  tol=" << format_value(l.tolerance);
    if (!l.note.empty()) os << "  (" << l.note << ")";
    os << "\n";
  }
  os << "overall: " << (overall() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

std::string CsvTable::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) os << ",";
    os << header[i];
  }
  os << "\n";
  for (const auto& row : rows) {
    if (row.size() != header.size())
      throw std::logic_error("CsvTable: row width does not match header");
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ",";
      os << format_value(row[i]);
    }
    os << "\n";
  }
  return os.str();
}

void CsvTable::write(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("CsvTable: cannot open " + path + " for writing");
  f << to_string();
}

}  // namespace gaugelab

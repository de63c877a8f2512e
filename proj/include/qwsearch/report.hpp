// report.hpp
// CSV and run-manifest serialization.

#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qwsearch::report {

/// Shortest decimal form that parses back to the same double. Independent of
/// the global locale.
std::string format_double(double value);

struct CsvColumn {
  std::string name;
  std::span<const double> values;
};

/// One header row, then one row per sample. All columns must have the same
/// length.
void write_csv(std::ostream& out, std::span<const CsvColumn> columns);

/// Flat `key = value` file recording everything needed to rerun a command.
struct RunManifest {
  std::string command;
  /// Fully resolved argument list (defaults made explicit), output
  /// destination flags excluded.
  std::vector<std::string> argv;
  /// Resolved parameters in insertion order.
  std::vector<std::pair<std::string, std::string>> config;
  std::string tool_version;
  double wall_time = 0.0;

  void write(std::ostream& out) const;
  /// Reads a file produced by write(). Unknown keys land in `config`.
  static RunManifest parse(std::istream& in);
  std::string value(std::string_view key) const;
};

}  // namespace qwsearch::report

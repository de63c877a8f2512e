#include "qwsearch/report.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "qwsearch/errors.hpp"

namespace qwsearch::report {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += ' ';
    out += p;
  }
  return out;
}

std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string word; in >> word;) out.push_back(word);
  return out;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

void write_csv(std::ostream& out, std::span<const CsvColumn> columns) {
  if (columns.empty()) return;
  const std::size_t rows = columns.front().values.size();
  for (const auto& c : columns) {
    if (c.values.size() != rows) {
      throw DimensionMismatchError("CSV column '" + c.name + "' has " +
                                   std::to_string(c.values.size()) + " rows, expected " +
                                   std::to_string(rows));
    }
  }
  std::string line;
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (j) line += ',';
    line += columns[j].name;
  }
  out << line << '\n';
  for (std::size_t i = 0; i < rows; ++i) {
    line.clear();
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (j) line += ',';
      line += format_double(columns[j].values[i]);
    }
    out << line << '\n';
  }
}

void RunManifest::write(std::ostream& out) const {
  out << "command = " << command << '\n';
  out << "argv = " << join(argv) << '\n';
  out << "tool_version = " << tool_version << '\n';
  out << "wall_time = " << format_double(wall_time) << '\n';
  for (const auto& [key, value] : config) out << key << " = " << value << '\n';
}

RunManifest RunManifest::parse(std::istream& in) {
  RunManifest m;
  for (std::string line; std::getline(in, line);) {
    const std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) continue;
    const std::string key(trim(view.substr(0, eq)));
    const std::string value(trim(view.substr(eq + 1)));
    if (key == "command") {
      m.command = value;
    } else if (key == "argv") {
      m.argv = split_words(value);
    } else if (key == "tool_version") {
      m.tool_version = value;
    } else if (key == "wall_time") {
      std::from_chars(value.data(), value.data() + value.size(), m.wall_time);
    } else {
      m.config.emplace_back(key, value);
    }
  }
  return m;
}

std::string RunManifest::value(std::string_view key) const {
  for (const auto& [k, v] : config) {
    if (k == key) return v;
  }
  return {};
}

}  // namespace qwsearch::report

#pragma once

// Run configuration: key = value lines in [sections], validated against a
// single defaults table.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace shortck::cli {

enum class ValueType { Real, Integer, Bool, Text, RealList, Choice };

struct KeyDef {
  const char* section;
  const char* key;
  ValueType type;
  const char* fallback;  // default, as config text
  bool required;
  const char* choices;   // '|'-separated, for Choice
  const char* doc;
};

/// Every recognised key with its default.
const std::vector<KeyDef>& defaults_table();

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::size_t line, const std::string& what)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

using Value = std::variant<double, long long, bool, std::string, std::vector<double>>;

class RunConfig {
 public:
  /// Defaults for every key.
  RunConfig();

  double real(const std::string& section, const std::string& key) const;
  long long integer(const std::string& section, const std::string& key) const;
  std::size_t count(const std::string& section, const std::string& key) const;
  bool flag(const std::string& section, const std::string& key) const;
  const std::string& text(const std::string& section, const std::string& key) const;
  const std::vector<double>& list(const std::string& section, const std::string& key) const;

  /// Parses and stores one value. Throws ConfigError for unknown keys or
  /// type mismatches, quoting `line`.
  void assign(const std::string& section, const std::string& key, const std::string& raw, std::size_t line = 0);

  const std::map<std::string, Value>& values() const { return values_; }
  friend bool operator==(const RunConfig&, const RunConfig&) = default;

 private:
  const Value& at(const std::string& section, const std::string& key) const;
  std::map<std::string, Value> values_;  // "section.key"
};

/// Throws ConfigError (with the line number) on unknown keys or sections,
/// type mismatches, duplicates and missing required keys.
RunConfig parse_config(const std::string& text);

/// Canonical text of every key; parse_config(emit(c)) == c.
std::string emit(const RunConfig& c);

/// Canonical text of one value.
std::string value_text(const Value& v);

}  // namespace shortck::cli

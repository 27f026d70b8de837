#pragma once

#include <stdexcept>
#include <string>

namespace pasdiv {

/// Shape mismatch between a solution and its instance, or an out-of-range room id.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameter values (negative alpha, F <= 1, ...).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Entropy counters went out of their legal range.
class StateCorruption : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Instance or population file could not be read. `where` names the line/column or JSON field.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

/// Greedy seeding could not place a patient.
class ConstructionFailure : public std::runtime_error {
 public:
  ConstructionFailure(int patient, const std::string& what)
      : std::runtime_error(what), patient_(patient) {}
  int patient() const noexcept { return patient_; }

 private:
  int patient_;
};

}  // namespace pasdiv

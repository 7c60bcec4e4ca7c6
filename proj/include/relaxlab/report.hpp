#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace relaxlab {

enum class CheckStatus { pass, fail, skipped };

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::pass;
  double value = 0.0;
  double threshold = 0.0;
  std::string detail;
};

/// A named list of checks plus free-form fitted values.
class Report {
 public:
  explicit Report(std::string title = {}) : title_(std::move(title)) {}

  /// Records value against threshold; `ok` decides pass/fail.
  void check(std::string name, bool ok, double value, double threshold, std::string detail = {});
  void skip(std::string name, std::string why);
  void set_value(const std::string& key, double v) { values_[key] = v; }
  void merge(const Report& other);

  const std::string& title() const noexcept { return title_; }
  const std::vector<CheckResult>& checks() const noexcept { return checks_; }
  const std::map<std::string, double>& values() const noexcept { return values_; }
  double value(const std::string& key) const;

  bool all_passed() const noexcept;
  std::vector<CheckResult> failures() const;

  nlohmann::ordered_json to_json() const;

 private:
  std::string title_;
  std::vector<CheckResult> checks_;
  std::map<std::string, double> values_;
};

std::string to_string(CheckStatus s);

}  // namespace relaxlab

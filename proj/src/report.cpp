#include "relaxlab/report.hpp"

#include <cmath>
#include <stdexcept>

namespace relaxlab {

void Report::check(std::string name, bool ok, double value, double threshold, std::string detail) {
  checks_.push_back({std::move(name), ok ? CheckStatus::pass : CheckStatus::fail, value, threshold,
                     std::move(detail)});
}

void Report::skip(std::string name, std::string why) {
  checks_.push_back({std::move(name), CheckStatus::skipped, 0.0, 0.0, std::move(why)});
}

void Report::merge(const Report& other) {
  const std::string prefix = other.title().empty() ? std::string{} : other.title() + ".";
  for (auto c : other.checks()) {
    c.name = prefix + c.name;
    checks_.push_back(std::move(c));
  }
  for (const auto& [k, v] : other.values()) values_[prefix + k] = v;
}

double Report::value(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw std::out_of_range("Report::value: no key " + key);
  return it->second;
}

bool Report::all_passed() const noexcept {
  for (const auto& c : checks_) {
    if (c.status == CheckStatus::fail) return false;
  }
  return true;
}

std::vector<CheckResult> Report::failures() const {
  std::vector<CheckResult> out;
  for (const auto& c : checks_) {
    if (c.status == CheckStatus::fail) out.push_back(c);
  }
  return out;
}

namespace {

// JSON has no NaN/Inf; emit null for those.
nlohmann::ordered_json number_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

}  // namespace

nlohmann::ordered_json Report::to_json() const {
  nlohmann::ordered_json j;
  j["title"] = title_;
  j["passed"] = all_passed();
  auto& arr = j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks_) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    e["status"] = to_string(c.status);
    e["value"] = number_or_null(c.value);
    e["threshold"] = number_or_null(c.threshold);
    if (!c.detail.empty()) e["detail"] = c.detail;
    arr.push_back(std::move(e));
  }
  auto& vals = j["values"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : values_) vals[k] = number_or_null(v);
  return j;
}

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skipped: return "skipped";
  }
  return "unknown";
}

}  // namespace relaxlab

#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <utility>
#include <vector>

namespace buncat {

using json = nlohmann::json;

enum class Verdict { Pass, Fail, Skipped };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Skipped: return "skipped";
  }
  return "fail";
}

/// One named check with an optional structured counterexample. Witnesses are
/// kept as JSON so a failure can be replayed from the report alone.
struct CheckResult {
  std::string name;
  Verdict verdict = Verdict::Pass;
  json witness;  // null when the check passed or carries no data

  static CheckResult pass(std::string name) { return {std::move(name), Verdict::Pass, nullptr}; }
  static CheckResult fail(std::string name, json witness = nullptr) {
    return {std::move(name), Verdict::Fail, std::move(witness)};
  }
  static CheckResult skipped(std::string name, json why = nullptr) {
    return {std::move(name), Verdict::Skipped, std::move(why)};
  }
};

struct VerificationReport {
  std::string task;
  std::vector<CheckResult> checks;
  json result;  // optional computation payload (jets, probe counts, ...)

  bool overall_pass() const {
    for (const auto& c : checks)
      if (c.verdict == Verdict::Fail) return false;
    return true;
  }

  void add(CheckResult c) { checks.push_back(std::move(c)); }
  void add_pass(std::string name) { add(CheckResult::pass(std::move(name))); }
  void add_fail(std::string name, json witness = nullptr) {
    add(CheckResult::fail(std::move(name), std::move(witness)));
  }

  const CheckResult* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }

  /// Appends another report's checks under a `prefix/` namespace.
  void merge(const VerificationReport& other, const std::string& prefix = "") {
    for (const auto& c : other.checks) {
      CheckResult copy = c;
      if (!prefix.empty()) copy.name = prefix + "/" + copy.name;
      checks.push_back(std::move(copy));
    }
  }

  json to_json(bool quiet = false) const {
    json checks_json = json::array();
    for (const auto& c : checks) {
      if (quiet && c.verdict == Verdict::Pass) continue;
      json entry;
      entry["name"] = c.name;
      entry["verdict"] = to_string(c.verdict);
      if (!c.witness.is_null()) entry["witness"] = c.witness;
      checks_json.push_back(std::move(entry));
    }
    json out;
    out["task"] = task;
    out["checks"] = std::move(checks_json);
    out["overall"] = overall_pass() ? "pass" : "fail";
    if (!result.is_null()) out["result"] = result;
    return out;
  }
};

}  // namespace buncat

#pragma once

#include <string>
#include <vector>

namespace gcover {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;  // empty when passed
};

struct VerificationReport {
  std::vector<Check> checks;

  void add(std::string name, bool passed, std::string detail = {}) {
    checks.push_back({std::move(name), passed, passed ? std::string() : std::move(detail)});
  }
  bool ok() const {
    for (const Check& c : checks) {
      if (!c.passed) return false;
    }
    return true;
  }
};

}  // namespace gcover

#pragma once

#include <algorithm>
#include <string>
#include <vector>

namespace weilad {

/// Outcome of an exhaustive law check. Failures carry a witness: the
/// indices (basis elements, morphisms, elements...) that broke the law.
struct CheckResult {
  std::string law;
  bool passed = true;
  std::vector<std::size_t> witness;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
  }

  const CheckResult* find(const std::string& law) const {
    for (const auto& c : checks)
      if (c.law == law) return &c;
    return nullptr;
  }
};

}  // namespace weilad

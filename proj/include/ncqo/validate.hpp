#pragma once

// Cross-check suites: closed forms against the matrix oracles, tau -> 0
// limits and exact identities.

#include <string>
#include <vector>

namespace ncqo {

enum class ValidationLevel { Fast, Full };
ValidationLevel parse_level(const std::string& text);

/// A check passes when lo <= measured <= hi.
struct CheckResult {
  std::string name;
  double measured = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  bool passed = false;
};

struct ValidationReport {
  std::vector<CheckResult> checks;

  bool passed() const;
  std::string to_text() const;
};

ValidationReport validate(ValidationLevel level);

}  // namespace ncqo

#pragma once

#include <string>
#include <vector>

namespace fusswalk {

struct VerifyCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  bool all_passed() const;
};

/// Runs the cross-module invariant suite up to size max_n (enumerative
/// checks are internally capped where they would get expensive).
VerifyReport run_verification(int max_n);

}  // namespace fusswalk

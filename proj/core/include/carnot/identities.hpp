#pragma once

#include <string>
#include <vector>

namespace carnot {

struct IdentityCheck {
  std::string id;           // group label, e.g. "1a"
  std::string description;
  bool passed = false;
  std::string detail;
  bool informational = false;  // reported but never counted as a failure
};

// Exact symbolic checks of the group law, the map G, the semigroup and cone
// polynomials, and the interior-point identities.
std::vector<IdentityCheck> run_identity_suite();

bool all_passed(const std::vector<IdentityCheck>& checks);

}  // namespace carnot

#include <gtest/gtest.h>

#include <set>

#include "carnot/identities.hpp"

using namespace carnot;

TEST(Identities, SuitePasses) {
  const auto checks = run_identity_suite();
  std::set<std::string> groups;
  for (const auto& c : checks) {
    groups.insert(c.id);
    if (!c.informational) EXPECT_TRUE(c.passed) << c.id << " " << c.description << ": " << c.detail;
  }
  for (const char* g : {"1a", "1b", "1c", "1d", "1e", "1f", "1g"}) EXPECT_TRUE(groups.count(g)) << g;
  EXPECT_TRUE(all_passed(checks));
}

TEST(Identities, AllPassedIgnoresInformational) {
  std::vector<IdentityCheck> v{{"x", "a", true, "", false}, {"info", "b", false, "", true}};
  EXPECT_TRUE(all_passed(v));
  v[0].passed = false;
  EXPECT_FALSE(all_passed(v));
}

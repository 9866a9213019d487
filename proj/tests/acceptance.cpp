// Acceptance checks: one PASS/FAIL line per criterion.
#include <cstdio>

#include "arraymirror/verify.hpp"

int main() {
  int failed = 0;
  arraymirror::verify_suite([&](const arraymirror::CriterionResult& r) {
    std::printf("%s\n", arraymirror::format_result(r).c_str());
    std::fflush(stdout);
    if (!r.passed) ++failed;
  });
  std::printf("%d of %d criteria passed\n", arraymirror::kCriterionCount - failed, arraymirror::kCriterionCount);
  return failed == 0 ? 0 : 1;
}

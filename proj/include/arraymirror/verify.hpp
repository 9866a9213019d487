#pragma once

#include <functional>
#include <string>
#include <vector>

namespace arraymirror {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;  // measured values and tolerances
};

inline constexpr int kCriterionCount = 13;

// Runs one acceptance criterion (1..13). Never throws for numerical
// failures; they become a failed result with the error text.
CriterionResult run_criterion(int id);

// All criteria in order. The callback, if given, sees each result as soon as
// it is available.
std::vector<CriterionResult> verify_suite(const std::function<void(const CriterionResult&)>& progress = {});

std::string format_result(const CriterionResult& r);

}  // namespace arraymirror

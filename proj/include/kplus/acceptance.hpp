#pragma once

#include <string>
#include <vector>

namespace kplus {

enum class Profile { Quick, Full };

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  /// Shortfalls that the criterion reports without failing.
  std::vector<std::string> findings;
  std::string detail;
  double seconds = 0;
};

CriterionResult run_criterion(int id, Profile profile);
std::vector<CriterionResult> run_acceptance(Profile profile);

}  // namespace kplus

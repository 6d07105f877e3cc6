#pragma once

#include <string>

namespace rmlearn {

// Result of plugging a concrete machine into an exported model: whether the
// induced assignment satisfies every constraint, the name of the first
// violated constraint otherwise, and the objective value of the assignment.
struct SubstitutionResult {
  bool feasible = true;
  std::string violated;
  double objective = 0.0;
};

}  // namespace rmlearn

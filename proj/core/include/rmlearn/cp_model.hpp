#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rmlearn/model_types.hpp"
#include "rmlearn/prefix_tree.hpp"
#include "rmlearn/reward_machine.hpp"

namespace rmlearn {

// Constraint program over one decision table d[state, observation]: node
// states are chained expressions over d, prediction membership is a
// disjunction over the witnessing tree nodes, and the objective sums
// weighted logarithms of the resulting set sizes. Text form documented in
// docs/cp_model_format.md.
struct CpModel {
  PrefixTree tree;
  int u_max = 1;
  bool compressed = false;
  // S(s, s2): nodes whose incoming observation is s and that have a child on
  // s2; keyed in (s, s2) order
  std::map<std::pair<int, int>, std::vector<int>> witnesses;
};

CpModel build_cp_model(const PrefixTree& tree, int u_max, bool compressed);

std::string write_cp_model(const CpModel& model,
                           const std::vector<std::pair<std::string, std::string>>& meta = {});

// Full round trip: the text carries the instance, so the parsed model can be
// substituted and scored like the original.
CpModel parse_cp_model(const std::string& text);

SubstitutionResult substitute_and_score(const CpModel& model, const RewardMachine& rm);

}  // namespace rmlearn

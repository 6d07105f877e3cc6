#pragma once

#include <map>
#include <set>

#include "rmlearn/reward_machine.hpp"
#include "rmlearn/trace.hpp"

namespace rmlearn {

// For each (machine state, observation) pair witnessed in a corpus, the set
// of observations that followed it, plus how often the pair occurred.
struct PredictionSets {
  using Key = RewardMachine::Key;

  std::map<Key, std::set<HighLevelObs>> entries;
  std::map<Key, long long> counts;

  bool contains(int state, const HighLevelObs& context, const HighLevelObs& next) const {
    auto it = entries.find({state, context});
    return it != entries.end() && it->second.count(next) > 0;
  }
  long long count(int state, const HighLevelObs& context) const {
    auto it = counts.find({state, context});
    return it == counts.end() ? 0 : it->second;
  }
};

PredictionSets prediction_sets(const RewardMachine& rm, const TraceSet& corpus);

// Empirical edge rewards: for each (state before the step, incoming
// observation) pair, total reward divided by (occurrences + eps). Pairs never
// witnessed stay absent and therefore read as zero.
std::map<RewardMachine::Key, double> estimate_delta_r(const RewardMachine& rm,
                                                      const TraceSet& corpus,
                                                      double eps = 1e-6);

}  // namespace rmlearn

#include "rmlearn/reward_machine.hpp"

#include <sstream>
#include <stdexcept>

namespace rmlearn {

int transition(const RewardMachine& rm, int state, const HighLevelObs& obs) {
  if (state < 0 || state >= rm.num_states)
    throw std::out_of_range("reward machine state out of range");
  auto it = rm.transitions.find({state, obs});
  if (it == rm.transitions.end()) return state;
  return it->second;
}

double edge_reward(const RewardMachine& rm, int state, const HighLevelObs& obs) {
  if (state < 0 || state >= rm.num_states)
    throw std::out_of_range("reward machine state out of range");
  auto it = rm.rewards.find({state, obs});
  if (it == rm.rewards.end()) return 0.0;
  return it->second;
}

std::vector<int> run_trace(const RewardMachine& rm, const LabelledTrace& trace) {
  std::vector<int> states;
  if (trace.obs.empty()) return states;
  states.reserve(trace.obs.size());
  int u = rm.initial;
  states.push_back(u);
  for (std::size_t t = 1; t < trace.obs.size(); ++t) {
    u = transition(rm, u, trace.obs[t]);
    states.push_back(u);
  }
  return states;
}

std::vector<ClosureViolation> check_selfloop_closure(const RewardMachine& rm) {
  std::vector<ClosureViolation> out;
  for (const auto& [key, target] : rm.transitions) {
    if (transition(rm, target, key.second) != target)
      out.push_back({key.first, key.second, target});
  }
  return out;
}

std::string canonical_transition_key(const RewardMachine& rm) {
  std::ostringstream os;
  os << rm.num_states << ":" << rm.initial << ";";
  for (const auto& [key, target] : rm.transitions) {
    os << key.first << ",";
    for (int b = 0; b < key.second.width(); ++b) os << (key.second.test(b) ? '1' : '0');
    os << ">" << target << ";";
  }
  return os.str();
}

}  // namespace rmlearn

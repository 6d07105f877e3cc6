#include "rmlearn/reference_machines.hpp"

#include <initializer_list>

namespace rmlearn {

RewardMachine cookie_reference_machine(const PropositionAlphabet& alphabet) {
  RewardMachine rm;
  rm.num_states = 4;
  rm.initial = 0;
  auto obs = [&](std::initializer_list<const char*> names) {
    std::vector<std::string> v(names.begin(), names.end());
    return HighLevelObs::from_names(alphabet, v);
  };
  const auto press = obs({"R3", "BP"});
  rm.transitions[{0, press}] = 1;
  rm.transitions[{1, obs({"R2"})}] = 2;      // blue empty: cookie is in green
  rm.transitions[{1, obs({"R0", "C"})}] = 2;  // seen in green
  rm.transitions[{1, obs({"R0"})}] = 3;      // green empty: cookie is in blue
  rm.transitions[{1, obs({"R2", "C"})}] = 3;  // seen in blue
  const auto eat_green = obs({"R0", "CE"});
  const auto eat_blue = obs({"R2", "CE"});
  rm.transitions[{2, eat_green}] = 0;
  rm.transitions[{2, press}] = 1;
  rm.transitions[{3, eat_blue}] = 0;
  rm.transitions[{3, press}] = 1;
  rm.rewards[{2, eat_green}] = 1.0;
  rm.rewards[{3, eat_blue}] = 1.0;
  return rm;
}

RewardMachine gravity_reference_machine(const PropositionAlphabet& alphabet) {
  RewardMachine rm;
  rm.num_states = 2;
  rm.initial = 0;
  std::vector<std::string> bp{"BP"}, ce{"CE"};
  const auto press = HighLevelObs::from_names(alphabet, bp);
  const auto eat = HighLevelObs::from_names(alphabet, ce);
  rm.transitions[{0, press}] = 1;
  rm.transitions[{1, press}] = 0;
  rm.rewards[{0, eat}] = 1.0;
  rm.rewards[{1, eat}] = 1.0;
  return rm;
}

RewardMachine single_state_machine() {
  RewardMachine rm;
  rm.num_states = 1;
  rm.initial = 0;
  return rm;
}

}  // namespace rmlearn

#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rmlearn/alphabet.hpp"
#include "rmlearn/trace.hpp"

namespace rmlearn {

// Finite state machine over high-level observations. An absent transition is
// a self loop, so the machine is total. Rewards default to zero.
struct RewardMachine {
  using Key = std::pair<int, HighLevelObs>;

  int num_states = 1;
  int initial = 0;
  std::map<Key, int> transitions;
  std::map<Key, double> rewards;

  bool operator==(const RewardMachine& other) const = default;
};

// Next state for (state, obs); absent entries self loop. Throws
// std::out_of_range if state is outside [0, num_states).
int transition(const RewardMachine& rm, int state, const HighLevelObs& obs);

// Reward attached to the edge taken on obs from state; 0 if not set.
double edge_reward(const RewardMachine& rm, int state, const HighLevelObs& obs);

// States x_0..x_T visited while reading the trace. x_0 is the initial state;
// the first observation never drives a transition, obs[t] drives x_{t-1} to
// x_t for t >= 1. Empty trace gives an empty vector.
std::vector<int> run_trace(const RewardMachine& rm, const LabelledTrace& trace);

struct ClosureViolation {
  int state = 0;
  HighLevelObs obs;
  int target = 0;
  bool operator==(const ClosureViolation& other) const = default;
};

// Stored transitions (u, obs) -> u' whose target does not self loop on the
// same observation. Compressed corpora require this list to be empty, since
// a collapsed run must keep the machine in place.
std::vector<ClosureViolation> check_selfloop_closure(const RewardMachine& rm);

// Stable text encoding of (num_states, transitions); used as search identity
// for tabu lists and for canonical term ordering.
std::string canonical_transition_key(const RewardMachine& rm);

std::string to_dot(const RewardMachine& rm, const PropositionAlphabet& alphabet,
                   const std::vector<std::pair<std::string, std::string>>& meta = {});

std::string rm_to_json(const RewardMachine& rm, const PropositionAlphabet& alphabet,
                       const std::vector<std::pair<std::string, std::string>>& meta = {});

// Parses rm_to_json output. The alphabet is restored from the document.
RewardMachine rm_from_json(const std::string& text, PropositionAlphabet* alphabet_out);

}  // namespace rmlearn

#pragma once

#include <set>
#include <vector>

#include "rmlearn/objective.hpp"
#include "rmlearn/prefix_tree.hpp"
#include "rmlearn/reward_machine.hpp"

namespace rmlearn::detail {

// Machine as a dense table over the tree's observations, padded with self
// looping states up to u_max.
TransitionTable padded_table(const RewardMachine& rm, const ObsTable& observations,
                             int u_max);

// State attached to every tree node: the root and its children sit in the
// initial state, deeper nodes follow the table along their incoming edge.
std::vector<int> node_states(const PrefixTree& tree, const TransitionTable& table);

// Observed successor sets per (state, observation id) pair, indexed
// u * num_obs + s.
std::vector<std::set<int>> pair_sets(const PrefixTree& tree, const std::vector<int>& states,
                                     int u_max);

}  // namespace rmlearn::detail

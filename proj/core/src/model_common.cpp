#include "model_common.hpp"

#include "rmlearn/errors.hpp"

namespace rmlearn::detail {

TransitionTable padded_table(const RewardMachine& rm, const ObsTable& observations,
                             int u_max) {
  if (rm.num_states > u_max)
    throw ConfigError("machine has more states than the model allows");
  for (const auto& [key, target] : rm.transitions) {
    (void)target;
    if (observations.size() > 0 &&
        key.second.width() != observations.obs(0).width())
      throw ConfigError("machine observation width does not match the model");
  }
  TransitionTable t = TransitionTable::empty(u_max, observations.size());
  for (const auto& [key, target] : rm.transitions) {
    auto oid = observations.id(key.second);
    if (oid) t.put(key.first, *oid, target);
  }
  return t;
}

std::vector<int> node_states(const PrefixTree& tree, const TransitionTable& table) {
  std::vector<int> states(static_cast<std::size_t>(tree.num_nodes()), 0);
  for (int n = 1; n < tree.num_nodes(); ++n) {
    const auto& node = tree.node(n);
    if (node.parent == 0) continue;
    states[static_cast<std::size_t>(n)] =
        table.step(states[static_cast<std::size_t>(node.parent)], node.obs);
  }
  return states;
}

std::vector<std::set<int>> pair_sets(const PrefixTree& tree, const std::vector<int>& states,
                                     int u_max) {
  int num_obs = tree.observations().size();
  std::vector<std::set<int>> sets(static_cast<std::size_t>(u_max) *
                                  static_cast<std::size_t>(num_obs));
  for (int n = 1; n < tree.num_nodes(); ++n) {
    const auto& node = tree.node(n);
    if (node.children.empty()) continue;
    std::size_t key = static_cast<std::size_t>(states[static_cast<std::size_t>(n)]) *
                          static_cast<std::size_t>(num_obs) +
                      static_cast<std::size_t>(node.obs);
    for (const auto& [obs, child] : node.children) {
      (void)child;
      sets[key].insert(obs);
    }
  }
  return sets;
}

}  // namespace rmlearn::detail

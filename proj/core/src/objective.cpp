#include "rmlearn/objective.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "rmlearn/errors.hpp"

namespace rmlearn {

TransitionTable to_table(const RewardMachine& rm, const ObsTable& observations) {
  TransitionTable t = TransitionTable::empty(rm.num_states, observations.size());
  for (const auto& [key, target] : rm.transitions) {
    auto oid = observations.id(key.second);
    if (oid) t.put(key.first, *oid, target);
  }
  return t;
}

RewardMachine to_machine(const TransitionTable& table, const ObsTable& observations) {
  RewardMachine rm;
  rm.num_states = table.num_states;
  for (int u = 0; u < table.num_states; ++u)
    for (int o = 0; o < table.num_obs; ++o) {
      int v = table.at(u, o);
      if (v >= 0) rm.transitions[{u, observations.obs(o)}] = v;
    }
  return rm;
}

bool closure_ok(const TransitionTable& table) {
  for (int u = 0; u < table.num_states; ++u)
    for (int o = 0; o < table.num_obs; ++o) {
      int v = table.at(u, o);
      if (v >= 0 && table.step(v, o) != v) return false;
    }
  return true;
}

Evaluator::Evaluator(const PrefixTree& tree) : tree_(&tree) {
  int k = tree.observations().size();
  words_per_set_ = (k + 63) / 64;
  log_table_.resize(static_cast<std::size_t>(k) + 1);
  for (int i = 0; i <= k; ++i) log_table_[static_cast<std::size_t>(i)] = std::log(static_cast<double>(i == 0 ? 1 : i));
  state_of_node_.assign(static_cast<std::size_t>(tree.num_nodes()), 0);
}

void Evaluator::propagate(const TransitionTable& table) {
  const PrefixTree& t = *tree_;
  if (table.num_obs != t.observations().size())
    throw std::invalid_argument("transition table does not match the tree's observations");
  state_of_node_.assign(static_cast<std::size_t>(t.num_nodes()), 0);
  // parents precede children, so one forward pass settles all states; nodes
  // at depth one stay in the initial state because the first observation of
  // a trace never drives a transition
  for (int n = 1; n < t.num_nodes(); ++n) {
    const auto& node = t.node(n);
    if (node.parent == 0) {
      state_of_node_[static_cast<std::size_t>(n)] = 0;
    } else {
      int pu = state_of_node_[static_cast<std::size_t>(node.parent)];
      state_of_node_[static_cast<std::size_t>(n)] =
          static_cast<std::int32_t>(table.step(pu, node.obs));
    }
  }

  std::size_t pair_count = static_cast<std::size_t>(table.num_states) *
                           static_cast<std::size_t>(table.num_obs);
  set_bits_.assign(pair_count * static_cast<std::size_t>(words_per_set_), 0);
  touched_.clear();
  for (int n = 1; n < t.num_nodes(); ++n) {
    const auto& node = t.node(n);
    if (node.children.empty()) continue;
    std::size_t key = static_cast<std::size_t>(state_of_node_[static_cast<std::size_t>(n)]) *
                          static_cast<std::size_t>(table.num_obs) +
                      static_cast<std::size_t>(node.obs);
    std::uint64_t* bits = set_bits_.data() + key * static_cast<std::size_t>(words_per_set_);
    for (const auto& [obs, child] : node.children) {
      (void)child;
      bits[obs / 64] |= 1ULL << (obs % 64);
    }
    touched_.push_back(static_cast<std::int32_t>(key));
  }
}

double Evaluator::total(const TransitionTable& table) {
  propagate(table);
  const PrefixTree& t = *tree_;
  double sum = 0.0;
  for (int n = 1; n < t.num_nodes(); ++n) {
    const auto& node = t.node(n);
    if (node.weight <= 0) continue;
    std::size_t key = static_cast<std::size_t>(state_of_node_[static_cast<std::size_t>(n)]) *
                          static_cast<std::size_t>(table.num_obs) +
                      static_cast<std::size_t>(node.obs);
    const std::uint64_t* bits = set_bits_.data() + key * static_cast<std::size_t>(words_per_set_);
    int card = 0;
    for (int w = 0; w < words_per_set_; ++w) card += std::popcount(bits[w]);
    sum += static_cast<double>(node.weight) * log_table_[static_cast<std::size_t>(card)];
  }
  return sum;
}

LrmCost Evaluator::with_per_node(const TransitionTable& table) {
  propagate(table);
  const PrefixTree& t = *tree_;
  LrmCost cost;
  for (int n = 1; n < t.num_nodes(); ++n) {
    const auto& node = t.node(n);
    if (node.weight <= 0) continue;
    std::size_t key = static_cast<std::size_t>(state_of_node_[static_cast<std::size_t>(n)]) *
                          static_cast<std::size_t>(table.num_obs) +
                      static_cast<std::size_t>(node.obs);
    const std::uint64_t* bits = set_bits_.data() + key * static_cast<std::size_t>(words_per_set_);
    int card = 0;
    for (int w = 0; w < words_per_set_; ++w) card += std::popcount(bits[w]);
    double c = static_cast<double>(node.weight) * log_table_[static_cast<std::size_t>(card)];
    cost.total += c;
    if (c != 0.0) cost.per_node.emplace_back(n, c);
  }
  return cost;
}

LrmCost evaluate(const RewardMachine& rm, const PrefixTree& tree, bool want_per_node) {
  for (const auto& [key, target] : rm.transitions) {
    (void)target;
    if (key.second.width() != tree.alphabet().size())
      throw ConfigError("reward machine observation width does not match the corpus alphabet");
  }
  if (tree.compressed() && !check_selfloop_closure(rm).empty())
    throw ConfigError("reward machine violates the self loop closure required by compressed corpora");

  Evaluator ev(tree);
  TransitionTable table = to_table(rm, tree.observations());
  if (want_per_node) return ev.with_per_node(table);
  LrmCost c;
  c.total = ev.total(table);
  return c;
}

}  // namespace rmlearn

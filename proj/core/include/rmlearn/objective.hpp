#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "rmlearn/prefix_tree.hpp"
#include "rmlearn/reward_machine.hpp"

namespace rmlearn {

// Dense transition map over interned observations; -1 marks an absent entry
// (a self loop). This is the working representation inside the optimizers.
struct TransitionTable {
  int num_states = 1;
  int num_obs = 0;
  std::vector<std::int16_t> next;  // num_states * num_obs entries

  static TransitionTable empty(int num_states, int num_obs) {
    TransitionTable t;
    t.num_states = num_states;
    t.num_obs = num_obs;
    t.next.assign(static_cast<std::size_t>(num_states) * static_cast<std::size_t>(num_obs), -1);
    return t;
  }
  int at(int u, int o) const {
    return next[static_cast<std::size_t>(u) * static_cast<std::size_t>(num_obs) +
                static_cast<std::size_t>(o)];
  }
  void put(int u, int o, int v) {
    next[static_cast<std::size_t>(u) * static_cast<std::size_t>(num_obs) +
         static_cast<std::size_t>(o)] = static_cast<std::int16_t>(v);
  }
  // effective next state, absent entries self loop
  int step(int u, int o) const {
    int v = at(u, o);
    return v < 0 ? u : v;
  }
  bool operator==(const TransitionTable& other) const = default;
};

// Projects the machine onto the observations of a table. Transitions on
// observations outside the table cannot fire on tree inputs and are dropped.
TransitionTable to_table(const RewardMachine& rm, const ObsTable& observations);
// Inverse: only stored (non negative) entries become transitions.
RewardMachine to_machine(const TransitionTable& table, const ObsTable& observations);

// Constraint for compressed corpora on the dense form: every stored entry
// (u, o) -> v needs the effective step (v, o) to stay at v.
bool closure_ok(const TransitionTable& table);

struct LrmCost {
  double total = 0.0;
  // (node id, contribution), only for nodes with a positive contribution;
  // filled when requested
  std::vector<std::pair<int, double>> per_node;
};

// Reusable scorer for one prefix tree. Scratch buffers persist across calls
// so the optimizer's inner loop does not allocate.
class Evaluator {
 public:
  explicit Evaluator(const PrefixTree& tree);

  double total(const TransitionTable& table);
  LrmCost with_per_node(const TransitionTable& table);

  const PrefixTree& tree() const { return *tree_; }

 private:
  void propagate(const TransitionTable& table);

  const PrefixTree* tree_;
  int words_per_set_ = 0;
  std::vector<double> log_table_;
  std::vector<std::int32_t> state_of_node_;
  std::vector<std::uint64_t> set_bits_;
  std::vector<std::int32_t> touched_;
};

// Score of a machine on a corpus tree: the sum over continuing trace
// positions of w * ln |prediction set| at that position. Requires the
// machine's observation width to match the tree; on compressed trees the
// machine must satisfy the self loop closure.
LrmCost evaluate(const RewardMachine& rm, const PrefixTree& tree, bool want_per_node = false);

}  // namespace rmlearn

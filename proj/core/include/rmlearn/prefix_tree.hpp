#pragma once

#include <utility>
#include <vector>

#include "rmlearn/trace.hpp"

namespace rmlearn {

// Prefix tree over a trace corpus. Node 0 is the root. Node ids are dense in
// insertion order, so every parent id is smaller than its children's ids.
// A node's weight counts the traces that pass through it and emit at least
// one further observation; the root's weight equals the number of traces.
class PrefixTree {
 public:
  struct Node {
    int parent = -1;  // -1 only for the root
    int obs = -1;     // ObsTable id of the observation on the edge from parent
    long long weight = 0;
    std::vector<std::pair<int, int>> children;  // (obs id, node id), sorted by obs id
  };

  int num_nodes() const { return static_cast<int>(nodes_.size()); }
  const Node& node(int i) const { return nodes_.at(static_cast<std::size_t>(i)); }
  int child(int node, int obs) const;

  const ObsTable& observations() const { return obs_table_; }
  const PropositionAlphabet& alphabet() const { return alphabet_; }
  bool compressed() const { return compressed_; }
  long long num_traces() const { return num_traces_; }

  static PrefixTree from_parts(PropositionAlphabet alphabet, ObsTable observations,
                               std::vector<Node> nodes, bool compressed,
                               long long num_traces);

  friend PrefixTree build_prefix_tree(const TraceSet& corpus);

 private:
  std::vector<Node> nodes_{Node{}};
  ObsTable obs_table_;
  PropositionAlphabet alphabet_;
  bool compressed_ = false;
  long long num_traces_ = 0;
};

// Throws ConfigError if the corpus mixes compressed and uncompressed traces
// or contains a trace without observations.
PrefixTree build_prefix_tree(const TraceSet& corpus);

}  // namespace rmlearn

#include "rmlearn/prefix_tree.hpp"

#include <algorithm>

#include "rmlearn/errors.hpp"

namespace rmlearn {

int PrefixTree::child(int node, int obs) const {
  const auto& kids = nodes_.at(static_cast<std::size_t>(node)).children;
  auto it = std::lower_bound(kids.begin(), kids.end(), obs,
                             [](const std::pair<int, int>& c, int o) { return c.first < o; });
  if (it == kids.end() || it->first != obs) return -1;
  return it->second;
}

PrefixTree PrefixTree::from_parts(PropositionAlphabet alphabet, ObsTable observations,
                                  std::vector<Node> nodes, bool compressed,
                                  long long num_traces) {
  if (nodes.empty()) throw std::invalid_argument("prefix tree needs a root node");
  PrefixTree t;
  t.alphabet_ = std::move(alphabet);
  t.obs_table_ = std::move(observations);
  t.nodes_ = std::move(nodes);
  t.compressed_ = compressed;
  t.num_traces_ = num_traces;
  return t;
}

PrefixTree build_prefix_tree(const TraceSet& corpus) {
  PrefixTree tree;
  tree.alphabet_ = corpus.alphabet;

  std::vector<HighLevelObs> seen;
  for (const auto& tr : corpus.traces) {
    if (tr.obs.empty()) throw ConfigError("corpus contains a trace without observations");
    if (tr.rewards.size() + 1 != tr.obs.size())
      throw ConfigError("corpus contains a trace with misaligned rewards");
    if (tr.compressed != corpus.traces.front().compressed)
      throw ConfigError("corpus mixes compressed and uncompressed traces");
    for (const auto& o : tr.obs) {
      if (o.width() != corpus.alphabet.size())
        throw ConfigError("trace observation width does not match the alphabet");
      seen.push_back(o);
    }
  }
  tree.obs_table_ = ObsTable::build(std::move(seen));
  tree.compressed_ = !corpus.traces.empty() && corpus.traces.front().compressed;
  tree.num_traces_ = static_cast<long long>(corpus.traces.size());

  for (const auto& tr : corpus.traces) {
    int node = 0;
    for (const auto& o : tr.obs) {
      int obs_id = *tree.obs_table_.id(o);
      tree.nodes_[static_cast<std::size_t>(node)].weight += 1;
      int next = tree.child(node, obs_id);
      if (next < 0) {
        next = tree.num_nodes();
        PrefixTree::Node n;
        n.parent = node;
        n.obs = obs_id;
        tree.nodes_.push_back(n);
        auto& kids = tree.nodes_[static_cast<std::size_t>(node)].children;
        kids.insert(std::upper_bound(kids.begin(), kids.end(), std::make_pair(obs_id, next)),
                    {obs_id, next});
      }
      node = next;
    }
  }
  return tree;
}

}  // namespace rmlearn

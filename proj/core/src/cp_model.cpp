#include "rmlearn/cp_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "model_common.hpp"
#include "rmlearn/errors.hpp"

namespace rmlearn {

CpModel build_cp_model(const PrefixTree& tree, int u_max, bool compressed) {
  if (u_max < 1) throw ConfigError("u_max must be at least 1");
  if (compressed != tree.compressed())
    throw ConfigError("compressed flag does not match the corpus compression");
  if (tree.observations().size() == 0)
    throw ConfigError("cannot build a model from an empty corpus");
  CpModel m;
  m.tree = tree;
  m.u_max = u_max;
  m.compressed = compressed;
  for (int n = 1; n < tree.num_nodes(); ++n) {
    const auto& node = tree.node(n);
    for (const auto& [s2, child] : node.children) {
      (void)child;
      m.witnesses[{node.obs, s2}].push_back(n);
    }
  }
  return m;
}

std::string write_cp_model(const CpModel& model,
                           const std::vector<std::pair<std::string, std::string>>& meta) {
  const PrefixTree& tree = model.tree;
  std::ostringstream os;
  os << "# rm-cp-model v1\n";
  for (const auto& [k, v] : meta) os << "# " << k << ": " << v << "\n";

  os << "alphabet " << tree.alphabet().size();
  for (const auto& n : tree.alphabet().names()) os << " " << n;
  os << "\n";
  os << "u_max " << model.u_max << "\n";
  os << "compressed " << (model.compressed ? 1 : 0) << "\n";
  os << "num_obs " << tree.observations().size() << "\n";
  for (int s = 0; s < tree.observations().size(); ++s) {
    os << "obs " << s;
    for (const auto& n : tree.observations().obs(s).names(tree.alphabet())) os << " " << n;
    os << "\n";
  }
  os << "num_nodes " << tree.num_nodes() << "\n";
  for (int n = 0; n < tree.num_nodes(); ++n) {
    const auto& node = tree.node(n);
    os << "node " << n << " " << node.parent << " " << node.obs << " " << node.weight << "\n";
  }

  os << "dvar d[u in 0.." << model.u_max - 1 << ", s in 0.."
     << tree.observations().size() - 1 << "] in 0.." << model.u_max - 1 << "\n";
  os << "x[0] = 0\n";
  for (int n = 1; n < tree.num_nodes(); ++n) {
    const auto& node = tree.node(n);
    if (node.parent == 0)
      os << "x[" << n << "] = 0\n";
    else
      os << "x[" << n << "] = d[x[" << node.parent << "], " << node.obs << "]\n";
  }
  for (const auto& [key, nodes] : model.witnesses) {
    os << "p[u, " << key.first << ", " << key.second << "] = or(x[n] == u : n in {";
    for (std::size_t i = 0; i < nodes.size(); ++i) os << (i ? "," : "") << nodes[i];
    os << "})\n";
  }
  os << "y[u, s] = sum(p[u, s, s2] : s2 in 0.." << tree.observations().size() - 1 << ")\n";
  if (model.compressed) {
    for (int u = 0; u < model.u_max; ++u)
      for (int s = 0; s < tree.observations().size(); ++s)
        for (int v = 0; v < model.u_max; ++v) {
          if (u == v) continue;
          os << "constraint if d[" << u << ", " << s << "] == " << v << " then d[" << v
             << ", " << s << "] == " << v << "\n";
        }
  }
  os << "minimize sum(w[n] * ln(y[x[n], obs[n]]) : n in nodes, w[n] > 0)\n";
  return os.str();
}

CpModel parse_cp_model(const std::string& text) {
  std::istringstream is(text);
  std::string line;

  PropositionAlphabet alphabet;
  bool have_alphabet = false;
  int u_max = -1, compressed = -1, num_obs = -1, num_nodes = -1;
  std::vector<HighLevelObs> observations;
  std::vector<PrefixTree::Node> nodes;

  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string head;
    ls >> head;
    if (head == "alphabet") {
      int count = 0;
      ls >> count;
      std::vector<std::string> names;
      std::string n;
      while (ls >> n) names.push_back(n);
      if (static_cast<int>(names.size()) != count)
        throw ConfigError("cp parse: alphabet count mismatch");
      alphabet = PropositionAlphabet(names);
      have_alphabet = true;
    } else if (head == "u_max") {
      ls >> u_max;
    } else if (head == "compressed") {
      ls >> compressed;
    } else if (head == "num_obs") {
      ls >> num_obs;
      observations.reserve(static_cast<std::size_t>(num_obs));
    } else if (head == "obs") {
      if (!have_alphabet) throw ConfigError("cp parse: obs before alphabet");
      int id = 0;
      ls >> id;
      if (id != static_cast<int>(observations.size()))
        throw ConfigError("cp parse: observation ids must be dense and ordered");
      std::vector<std::string> names;
      std::string n;
      while (ls >> n) names.push_back(n);
      observations.push_back(HighLevelObs::from_names(alphabet, names));
    } else if (head == "num_nodes") {
      ls >> num_nodes;
      nodes.reserve(static_cast<std::size_t>(num_nodes));
    } else if (head == "node") {
      int id = 0;
      PrefixTree::Node n;
      ls >> id >> n.parent >> n.obs >> n.weight;
      if (id != static_cast<int>(nodes.size()))
        throw ConfigError("cp parse: node ids must be dense and ordered");
      if (id > 0 && (n.parent < 0 || n.parent >= id))
        throw ConfigError("cp parse: node parent must precede the node");
      nodes.push_back(n);
    }
    // dvar, x, p, y, constraint and minimize lines are the rendered model;
    // the instance lines above are enough to rebuild them
  }

  if (!have_alphabet || u_max < 1 || compressed < 0 || num_obs < 0 || num_nodes < 1)
    throw ConfigError("cp parse: missing header fields");
  if (static_cast<int>(observations.size()) != num_obs ||
      static_cast<int>(nodes.size()) != num_nodes)
    throw ConfigError("cp parse: count mismatch");

  for (std::size_t n = 1; n < nodes.size(); ++n) {
    auto& kids = nodes[static_cast<std::size_t>(nodes[n].parent)].children;
    kids.emplace_back(nodes[n].obs, static_cast<int>(n));
  }
  for (auto& n : nodes) std::sort(n.children.begin(), n.children.end());

  ObsTable table = ObsTable::build(observations);
  for (int s = 0; s < static_cast<int>(observations.size()); ++s)
    if (table.id(observations[static_cast<std::size_t>(s)]) != s)
      throw ConfigError("cp parse: observations are not in canonical order");

  long long num_traces = nodes[0].weight;
  PrefixTree tree = PrefixTree::from_parts(alphabet, std::move(table), std::move(nodes),
                                           compressed != 0, num_traces);
  return build_cp_model(tree, u_max, compressed != 0);
}

SubstitutionResult substitute_and_score(const CpModel& model, const RewardMachine& rm) {
  const PrefixTree& tree = model.tree;
  const int S = tree.observations().size();
  auto table = detail::padded_table(rm, tree.observations(), model.u_max);

  SubstitutionResult res;
  if (model.compressed) {
    for (int u = 0; u < model.u_max && res.feasible; ++u)
      for (int s = 0; s < S && res.feasible; ++s) {
        int v = table.step(u, s);
        if (v != u && table.step(v, s) != v) {
          res.feasible = false;
          char buf[64];
          std::snprintf(buf, sizeof buf, "c29_u%d_s%d_u%d", u, s, v);
          res.violated = buf;
        }
      }
  }

  auto states = detail::node_states(tree, table);
  auto sets = detail::pair_sets(tree, states, model.u_max);
  for (int n = 1; n < tree.num_nodes(); ++n) {
    const auto& node = tree.node(n);
    if (node.weight <= 0) continue;
    const auto& set = sets[static_cast<std::size_t>(states[static_cast<std::size_t>(n)]) * S +
                           node.obs];
    res.objective +=
        static_cast<double>(node.weight) * std::log(static_cast<double>(set.size()));
  }
  return res;
}

}  // namespace rmlearn

#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rmlearn/model_types.hpp"
#include "rmlearn/prefix_tree.hpp"
#include "rmlearn/reward_machine.hpp"

namespace rmlearn {

struct MilpOptions {
  // cap the prediction set size index at the number of distinct observations
  // in the corpus instead of 2^|propositions|; every reachable set size is
  // still representable and the variable count stays linear in the corpus
  bool cap_m_to_sigma = true;
  long long var_budget = 500'000;
};

struct LinearTerm {
  double coef = 0.0;
  int var = 0;
};

struct MilpConstraint {
  std::string name;
  std::vector<LinearTerm> terms;
  char sense = 'L';  // 'L' <=, 'G' >=, 'E' =
  double rhs = 0.0;
};

struct MilpVar {
  std::string name;
  bool binary = true;  // otherwise continuous with lower bound 0
};

// Mixed integer encoding of the machine learning problem for one corpus
// tree: binaries pick a state per tree node and a transition map, linear
// rows tie prediction set sizes to them, and the objective adds the weighted
// logarithms through big-M rows. The instance tree rides along so machines
// can be substituted without re-deriving anything from text.
struct MilpModel {
  PrefixTree tree;
  int u_max = 1;
  bool compressed = false;
  int m_cap = 1;
  double big_m = 0.0;  // ln(2^|propositions|)

  std::vector<MilpVar> vars;
  std::vector<LinearTerm> objective;
  std::vector<MilpConstraint> constraints;

  int x_index(int node, int u) const;
  int d_index(int u, int s, int v) const;
  int p_index(int u, int s, int s2) const;
  int y_index(int u, int s, int m) const;  // m in 1..m_cap
  int z_index(int node) const;             // node >= 1
};

MilpModel build_milp_model(const PrefixTree& tree, int u_max, bool compressed,
                           const MilpOptions& options = {});

// CPLEX LP text. Deterministic: same model, same bytes.
std::string write_lp(const MilpModel& model,
                     const std::vector<std::pair<std::string, std::string>>& meta = {});

struct ParsedLp {
  std::vector<std::string> var_names;
  std::map<std::string, int> var_ids;
  std::vector<LinearTerm> objective;
  std::vector<MilpConstraint> constraints;
};

// Parses the subset of LP syntax emitted by write_lp.
ParsedLp parse_lp(const std::string& text);

// Derives the full variable assignment a machine induces, checks every row,
// and evaluates the objective. A machine that breaks the self loop closure
// shows up as a violated c19 row, not an exception.
SubstitutionResult substitute_and_score(const MilpModel& model, const RewardMachine& rm);

}  // namespace rmlearn

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "rmlearn/env.hpp"
#include "rmlearn/prediction.hpp"
#include "rmlearn/reward_machine.hpp"
#include "rmlearn/rng.hpp"
#include "rmlearn/search.hpp"
#include "rmlearn/trace.hpp"

namespace rmlearn {

// Q-values indexed by (observation key, machine state, action); unseen
// entries read as 0.
class QTable {
 public:
  explicit QTable(int num_actions = kNumActions);

  int num_actions() const { return num_actions_; }
  double get(const std::string& obs_key, int u, int a) const;
  void set(const std::string& obs_key, int u, int a, double v);
  double max_value(const std::string& obs_key, int u) const;
  int argmax(const std::string& obs_key, int u) const;  // lowest id wins ties
  void clear();
  std::size_t num_rows() const { return rows_.size(); }

 private:
  static std::string row_key(const std::string& obs_key, int u);
  int num_actions_;
  std::unordered_map<std::string, std::vector<double>> rows_;
};

// epsilon-greedy: random action with probability epsilon, else argmax
int select_action(const QTable& q, const std::string& obs_key, int u,
                  double epsilon, Rng& rng);

// Q(o,u,a) += alpha * (r + gamma * max_a' Q(o',u',a') - Q(o,u,a)); the
// bootstrap term is dropped on terminal steps.
void q_update(QTable& q, const std::string& obs_key, int u, int a, double reward,
              const std::string& next_obs_key, int next_u, double gamma,
              double alpha, bool done);

// Counterfactual update: every machine state whose prediction set for
// (state, sigma) contains sigma' is updated with the machine's edge reward
// and its own successor state; the rest are left untouched. Returns the
// number of states updated. env_reward is carried in the experience but the
// applied reward comes from rm.rewards.
int qrm_update(QTable& q, const RewardMachine& rm, const PredictionSets& sets,
               const std::string& obs_key, const HighLevelObs& sigma, int action,
               double env_reward, const std::string& next_obs_key,
               const HighLevelObs& next_sigma, double gamma, double alpha,
               bool done);

struct LoopConfig {
  std::uint64_t seed = 1;
  long long t_w = 200000;      // random-policy steps collected before learning
  long long t_train = 200000;  // policy-learning steps
  double epsilon = 0.1;
  // with anneal_steps > 0, exploration starts at epsilon_start and falls
  // linearly to epsilon over that many steps; 0 keeps epsilon flat. The
  // schedule restarts whenever an adopted machine resets the Q-table, so a
  // fresh policy always begins with fresh exploration.
  double epsilon_start = 1.0;
  long long anneal_steps = 0;
  double gamma = 0.9;
  double alpha = 0.1;
  std::string method = "ts";  // ls | ts | exact
  SearchConfig search;
  bool qrm_enabled = false;
  long long relearn_budget = -1;  // < 0 means unlimited
  bool inject_reference = false;  // use the domain's hand-built machine, skip search
  long long log_every = 10000;
};

struct RelearnEvent {
  long long step = 0;         // training step at which the miss fired
  double current_cost = 0.0;  // incumbent machine on the grown corpus
  double searched_cost = 0.0;
  bool adopted = false;
  std::size_t corpus_traces = 0;
};

struct RewardLogRow {
  long long step = 0;
  double window_reward = 0.0;
  int relearns = 0;
  double rm_cost = 0.0;
};

struct JointLoopResult {
  RewardMachine rm;
  double rm_cost = 0.0;
  QTable q;
  std::vector<RewardLogRow> reward_log;
  std::vector<RelearnEvent> relearn_events;
  TraceSet corpus;
  long long episodes = 0;
  double total_reward = 0.0;
  std::vector<std::string> warnings;
};

// Random-policy rollouts, episode-delimited; a trailing partial episode is
// kept. Traces are compressed on the way in when `compressed` is set.
TraceSet collect_random_traces(GridPomdp& env, long long steps, Rng& policy_rng,
                               bool compressed);

// Learn-and-act loop: warmup collection, initial machine search, then
// epsilon-greedy control with the machine state as memory. A step whose new
// observation falls outside the prediction set appends the episode trace to
// the corpus, reruns the search, adopts the result only when strictly
// cheaper (resetting the Q-table), and ends the episode.
JointLoopResult run_joint_loop(Domain domain, const LoopConfig& cfg);

void write_reward_log_csv(std::ostream& os, const std::vector<RewardLogRow>& rows,
                          const std::map<std::string, std::string>& meta);

}  // namespace rmlearn

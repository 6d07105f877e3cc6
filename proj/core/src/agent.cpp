#include "rmlearn/agent.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "rmlearn/errors.hpp"
#include "rmlearn/objective.hpp"
#include "rmlearn/prefix_tree.hpp"
#include "rmlearn/reference_machines.hpp"

namespace rmlearn {
namespace {

constexpr long long kConsistencyCheckStride = 1009;

SearchResult run_search(const PrefixTree& tree, const SearchConfig& sc,
                        const std::string& method) {
  if (method == "ls") return local_search(tree, sc);
  if (method == "ts") return tabu_search(tree, sc);
  if (method == "exact") {
    auto [rm, cost] = exact_enumerate(tree, sc);
    SearchResult r;
    r.best_rm = std::move(rm);
    r.best_cost = cost;
    return r;
  }
  throw ConfigError("unknown search method '" + method + "' (want ls, ts or exact)");
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

QTable::QTable(int num_actions) : num_actions_(num_actions) {
  if (num_actions <= 0) throw ConfigError("QTable needs at least one action");
}

std::string QTable::row_key(const std::string& obs_key, int u) {
  return obs_key + '\x1f' + std::to_string(u);
}

double QTable::get(const std::string& obs_key, int u, int a) const {
  const auto it = rows_.find(row_key(obs_key, u));
  return it == rows_.end() ? 0.0 : it->second[static_cast<std::size_t>(a)];
}

void QTable::set(const std::string& obs_key, int u, int a, double v) {
  auto& row = rows_[row_key(obs_key, u)];
  if (row.empty()) row.assign(static_cast<std::size_t>(num_actions_), 0.0);
  row[static_cast<std::size_t>(a)] = v;
}

double QTable::max_value(const std::string& obs_key, int u) const {
  const auto it = rows_.find(row_key(obs_key, u));
  if (it == rows_.end()) return 0.0;
  return *std::max_element(it->second.begin(), it->second.end());
}

int QTable::argmax(const std::string& obs_key, int u) const {
  const auto it = rows_.find(row_key(obs_key, u));
  if (it == rows_.end()) return 0;
  int best = 0;
  for (int a = 1; a < num_actions_; ++a) {
    if (it->second[static_cast<std::size_t>(a)] >
        it->second[static_cast<std::size_t>(best)]) {
      best = a;
    }
  }
  return best;
}

void QTable::clear() { rows_.clear(); }

int select_action(const QTable& q, const std::string& obs_key, int u,
                  double epsilon, Rng& rng) {
  if (rng.chance(epsilon)) return static_cast<int>(rng.below(static_cast<std::uint64_t>(q.num_actions())));
  return q.argmax(obs_key, u);
}

void q_update(QTable& q, const std::string& obs_key, int u, int a, double reward,
              const std::string& next_obs_key, int next_u, double gamma,
              double alpha, bool done) {
  const double cur = q.get(obs_key, u, a);
  const double target = reward + (done ? 0.0 : gamma * q.max_value(next_obs_key, next_u));
  q.set(obs_key, u, a, cur + alpha * (target - cur));
}

int qrm_update(QTable& q, const RewardMachine& rm, const PredictionSets& sets,
               const std::string& obs_key, const HighLevelObs& sigma, int action,
               double env_reward, const std::string& next_obs_key,
               const HighLevelObs& next_sigma, double gamma, double alpha,
               bool done) {
  (void)env_reward;  // the machine's estimated reward is what gets applied
  int updated = 0;
  for (int v = 0; v < rm.num_states; ++v) {
    if (!sets.contains(v, sigma, next_sigma)) continue;
    const int next_v = transition(rm, v, next_sigma);
    const double r = edge_reward(rm, v, next_sigma);
    q_update(q, obs_key, v, action, r, next_obs_key, next_v, gamma, alpha, done);
    ++updated;
  }
  return updated;
}

TraceSet collect_random_traces(GridPomdp& env, long long steps, Rng& policy_rng,
                               bool compressed) {
  TraceSet out;
  out.alphabet = env.alphabet();
  long long t = 0;
  while (t < steps) {
    Observation obs = env.reset();
    LabelledTrace tr;
    tr.obs.push_back(obs.label);
    bool done = false;
    while (!done && t < steps) {
      const int a = static_cast<int>(policy_rng.below(static_cast<std::uint64_t>(env.num_actions())));
      StepResult sr = env.step(a);
      ++t;
      tr.obs.push_back(sr.obs.label);
      tr.rewards.push_back(sr.reward);
      done = sr.done;
    }
    out.traces.push_back(compressed ? compress(tr) : std::move(tr));
  }
  return out;
}

JointLoopResult run_joint_loop(Domain domain, const LoopConfig& cfg) {
  if (!(cfg.gamma > 0.0 && cfg.gamma < 1.0)) {
    throw ConfigError("gamma must lie strictly between 0 and 1");
  }
  if (cfg.epsilon < 0.0 || cfg.epsilon > 1.0) {
    throw ConfigError("epsilon must lie in [0, 1]");
  }
  if (cfg.epsilon_start < 0.0 || cfg.epsilon_start > 1.0) {
    throw ConfigError("epsilon_start must lie in [0, 1]");
  }
  if (cfg.anneal_steps < 0) throw ConfigError("anneal_steps cannot be negative");
  if (cfg.alpha <= 0.0 || cfg.alpha > 1.0) {
    throw ConfigError("alpha must lie in (0, 1]");
  }
  if (cfg.log_every <= 0) throw ConfigError("log_every must be positive");

  GridPomdp env(domain, Rng::mix(cfg.seed, 0));
  Rng policy_rng(Rng::mix(cfg.seed, 1));
  const bool compressed = cfg.search.compressed_mode;

  JointLoopResult res;
  res.corpus.alphabet = env.alphabet();
  res.rm_cost = std::numeric_limits<double>::quiet_NaN();

  // warmup corpus; skipped for pure policy learning on an injected machine
  const bool need_corpus = !cfg.inject_reference || cfg.qrm_enabled;
  if (need_corpus && cfg.t_w > 0) {
    res.corpus = collect_random_traces(env, cfg.t_w, policy_rng, compressed);
  }

  if (cfg.inject_reference) {
    switch (domain) {
      case Domain::cookie:
        res.rm = cookie_reference_machine(env.alphabet());
        break;
      case Domain::gravity:
        res.rm = gravity_reference_machine(env.alphabet());
        break;
      default:
        throw ConfigError("no reference machine for domain " + domain_name(domain));
    }
    if (!res.corpus.traces.empty()) {
      res.rm_cost = evaluate(res.rm, build_prefix_tree(res.corpus)).total;
    }
  } else if (res.corpus.traces.empty()) {
    res.rm = single_state_machine();
  } else {
    SearchConfig sc = cfg.search;
    sc.seed = Rng::mix(cfg.seed, 2);
    const SearchResult sr = run_search(build_prefix_tree(res.corpus), sc, cfg.method);
    res.rm = sr.best_rm;
    res.rm_cost = sr.best_cost;
  }

  PredictionSets sets = prediction_sets(res.rm, res.corpus);
  if (!res.corpus.traces.empty()) {
    res.rm.rewards = estimate_delta_r(res.rm, res.corpus);
  }

  // annealing is clocked from the last Q-table reset, not from step zero, so
  // adopting a new machine re-opens exploration for the blank policy
  long long anneal_from = 0;
  auto epsilon_at = [&cfg, &anneal_from](long long step) {
    const long long offset = step - anneal_from;
    if (cfg.anneal_steps <= 0 || offset >= cfg.anneal_steps) return cfg.epsilon;
    const double frac =
        static_cast<double>(offset) / static_cast<double>(cfg.anneal_steps);
    return cfg.epsilon_start + (cfg.epsilon - cfg.epsilon_start) * frac;
  };

  long long t = 0;
  long long last_logged = 0;
  double window_reward = 0.0;
  int window_relearns = 0;
  long long relearn_count = 0;
  bool budget_warned = false;

  auto flush_log = [&]() {
    res.reward_log.push_back({t, window_reward, window_relearns, res.rm_cost});
    window_reward = 0.0;
    window_relearns = 0;
    last_logged = t;
  };

  while (t < cfg.t_train) {
    Observation obs = env.reset();
    int u = res.rm.initial;
    ++res.episodes;
    std::vector<HighLevelObs> ep_labels{obs.label};
    std::vector<double> ep_rewards;
    // live analogue of trace compression: length of the collapsed prefix and
    // its last observation
    long long clen = 1;
    HighLevelObs clast = obs.label;
    bool done = false;

    while (!done && t < cfg.t_train) {
      const std::string obs_key = obs.canonical_key();
      const int a = select_action(res.q, obs_key, u, epsilon_at(t), policy_rng);
      const StepResult sr = env.step(a);
      ++t;
      const HighLevelObs& sigma = obs.label;
      const HighLevelObs& sigma2 = sr.obs.label;
      ep_labels.push_back(sigma2);
      ep_rewards.push_back(sr.reward);
      const int u2 = transition(res.rm, u, sigma2);
      const std::string next_key = sr.obs.canonical_key();

      if (cfg.qrm_enabled) {
        qrm_update(res.q, res.rm, sets, obs_key, sigma, a, sr.reward, next_key,
                   sigma2, cfg.gamma, cfg.alpha, sr.done);
      } else {
        q_update(res.q, obs_key, u, a, sr.reward, next_key, u2, cfg.gamma,
                 cfg.alpha, sr.done);
      }
      window_reward += sr.reward;
      res.total_reward += sr.reward;

      // a duplicate that trace compression would collapse is not a
      // prediction event
      bool merged = false;
      if (compressed && clen >= 2 && sigma2 == clast) {
        merged = true;
      } else {
        ++clen;
        clast = sigma2;
      }

      if (!cfg.inject_reference && !merged && !sets.contains(u, sigma, sigma2)) {
        if (cfg.relearn_budget >= 0 && relearn_count >= cfg.relearn_budget) {
          if (!budget_warned) {
            res.warnings.push_back("relearn budget exhausted at step " +
                                   std::to_string(t) + "; keeping current machine");
            budget_warned = true;
          }
        } else {
          ++relearn_count;
          ++window_relearns;
          LabelledTrace tr;
          tr.obs = ep_labels;
          tr.rewards = ep_rewards;
          res.corpus.traces.push_back(compressed ? compress(tr) : std::move(tr));
          const PrefixTree tree = build_prefix_tree(res.corpus);
          const double current_cost = evaluate(res.rm, tree).total;
          SearchConfig sc = cfg.search;
          sc.seed = Rng::mix(cfg.seed, 1000 + static_cast<std::uint64_t>(relearn_count));
          const SearchResult searched = run_search(tree, sc, cfg.method);
          const bool adopted = searched.best_cost < current_cost;
          if (adopted) {
            res.rm = searched.best_rm;
            res.rm_cost = searched.best_cost;
            res.q.clear();
            anneal_from = t;
          } else {
            res.rm_cost = current_cost;
          }
          sets = prediction_sets(res.rm, res.corpus);
          res.rm.rewards = estimate_delta_r(res.rm, res.corpus);
          res.relearn_events.push_back({t, current_cost, searched.best_cost,
                                        adopted, res.corpus.traces.size()});
          done = true;  // forced episode end
        }
      }
      if (sr.done) done = true;

      if (t % kConsistencyCheckStride == 0 && !done) {
        LabelledTrace replay;
        replay.obs = ep_labels;
        replay.rewards = ep_rewards;
        const auto states = run_trace(res.rm, replay);
        if (states.back() != u2) {
          throw std::logic_error("machine state drifted from the episode replay");
        }
      }

      obs = sr.obs;
      u = u2;
      if (t % cfg.log_every == 0) flush_log();
    }
  }
  if (t > last_logged) flush_log();
  return res;
}

void write_reward_log_csv(std::ostream& os, const std::vector<RewardLogRow>& rows,
                          const std::map<std::string, std::string>& meta) {
  for (const auto& [k, v] : meta) os << "# " << k << ": " << v << "\n";
  os << "step,window_reward,relearns,rm_cost\n";
  for (const auto& r : rows) {
    os << r.step << ',' << fmt_double(r.window_reward) << ',' << r.relearns
       << ',' << fmt_double(r.rm_cost) << "\n";
  }
}

}  // namespace rmlearn

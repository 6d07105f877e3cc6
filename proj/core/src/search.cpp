#include "rmlearn/search.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <deque>
#include <limits>
#include <unordered_map>

#include "rmlearn/errors.hpp"

namespace rmlearn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Clock = std::chrono::steady_clock;

struct Deadline {
  Clock::time_point end;
  bool armed = false;
  explicit Deadline(double seconds) {
    if (seconds > 0) {
      end = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                               std::chrono::duration<double>(seconds));
      armed = true;
    }
  }
  bool expired() const { return armed && Clock::now() >= end; }
};

void validate(const PrefixTree& tree, const SearchConfig& cfg) {
  if (cfg.u_max < 1) throw ConfigError("u_max must be at least 1");
  if (cfg.t_max < 0) throw ConfigError("t_max must be non-negative");
  if (cfg.tabu_size < 1) throw ConfigError("tabu_size must be at least 1");
  if (cfg.compressed_mode != tree.compressed())
    throw ConfigError("compressed_mode does not match the corpus compression");
}

TransitionTable sample_table(int u_max, int num_obs, Rng& rng, bool compressed_mode) {
  TransitionTable t = TransitionTable::empty(u_max, num_obs);
  for (int u = 0; u < u_max; ++u)
    for (int o = 0; o < num_obs; ++o)
      t.put(u, o, static_cast<int>(rng.below(static_cast<std::uint64_t>(u_max) + 1)) - 1);
  if (compressed_mode) {
    // one sweep closes the relation: rewrites only ever store self loops,
    // which satisfy every implication pointing at them
    for (int u = 0; u < u_max; ++u)
      for (int o = 0; o < num_obs; ++o) {
        int v = t.at(u, o);
        if (v >= 0 && t.step(v, o) != v) t.put(v, o, v);
      }
  }
  return t;
}

// move = rewrite slot (u, o) to value w; skips identity moves where the
// transition function is unchanged (absent <-> stored self loop)
template <class Fn>
void for_each_neighbour_move(const TransitionTable& t, int u_max, Fn&& fn) {
  for (int u = 0; u < u_max; ++u)
    for (int o = 0; o < t.num_obs; ++o) {
      int v = t.at(u, o);
      for (int w = -1; w < u_max; ++w) {
        if (w == v) continue;
        if (v == -1 && w == u) continue;
        if (v == u && w == -1) continue;
        fn(u, o, w);
      }
    }
}

std::string table_key(const TransitionTable& t) {
  return std::string(reinterpret_cast<const char*>(t.next.data()), t.next.size() * sizeof(std::int16_t));
}

class TabuList {
 public:
  explicit TabuList(int capacity) : capacity_(capacity) {}
  bool contains(const std::string& key) const { return counts_.count(key) > 0; }
  void push(const std::string& key) {
    if (static_cast<int>(fifo_.size()) == capacity_) {
      auto it = counts_.find(fifo_.front());
      if (--it->second == 0) counts_.erase(it);
      fifo_.pop_front();
    }
    fifo_.push_back(key);
    counts_[key] += 1;
  }

 private:
  int capacity_;
  std::deque<std::string> fifo_;
  std::unordered_map<std::string, int> counts_;
};

std::string format_cost(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

RewardMachine sample_random_rm(const ObsTable& observations, int u_max, Rng& rng,
                               bool compressed_mode) {
  if (u_max < 1) throw ConfigError("u_max must be at least 1");
  return to_machine(sample_table(u_max, observations.size(), rng, compressed_mode),
                    observations);
}

std::vector<RewardMachine> neighbours(const RewardMachine& rm, const ObsTable& observations,
                                      int u_max, bool compressed_mode) {
  if (u_max < 1) throw ConfigError("u_max must be at least 1");
  if (rm.num_states > u_max) throw ConfigError("machine has more states than u_max");
  TransitionTable t = to_table(rm, observations);
  if (rm.num_states < u_max) {
    TransitionTable wide = TransitionTable::empty(u_max, observations.size());
    for (int u = 0; u < t.num_states; ++u)
      for (int o = 0; o < t.num_obs; ++o) wide.put(u, o, t.at(u, o));
    t = wide;
  }
  std::vector<RewardMachine> out;
  for_each_neighbour_move(t, u_max, [&](int u, int o, int w) {
    TransitionTable cand = t;
    cand.put(u, o, w);
    if (compressed_mode && !closure_ok(cand)) return;
    out.push_back(to_machine(cand, observations));
  });
  return out;
}

SearchResult local_search(const PrefixTree& tree, const SearchConfig& cfg) {
  validate(tree, cfg);
  Evaluator ev(tree);
  Rng rng(cfg.seed);
  Deadline deadline(cfg.wall_clock_limit_sec);
  const int num_obs = tree.observations().size();

  long long t = 0;
  int restarts = -1;
  double best = kInf;
  TransitionTable best_table = TransitionTable::empty(cfg.u_max, num_obs);
  SearchResult result;

  while (t <= cfg.t_max && !deadline.expired()) {
    ++restarts;
    TransitionTable cur = sample_table(cfg.u_max, num_obs, rng, cfg.compressed_mode);
    double c = ev.total(cur);
    if (c < best) {
      best = c;
      best_table = cur;
    }
    double c_prev = kInf;
    while (t <= cfg.t_max && c < c_prev && !deadline.expired()) {
      ++t;
      c_prev = c;
      int move_u = -1, move_o = -1, move_w = 0;
      double c_move = c;
      TransitionTable cand = cur;
      for_each_neighbour_move(cur, cfg.u_max, [&](int u, int o, int w) {
        int saved = cand.at(u, o);
        cand.put(u, o, w);
        if (!cfg.compressed_mode || closure_ok(cand)) {
          double cn = ev.total(cand);
          if (cn < c_move) {
            c_move = cn;
            move_u = u;
            move_o = o;
            move_w = w;
          }
        }
        cand.put(u, o, saved);
      });
      if (move_u >= 0) {
        cur.put(move_u, move_o, move_w);
        c = c_move;
      }
      if (c < best) {
        best = c;
        best_table = cur;
      }
      result.trajectory.push_back({t, c, best, restarts});
    }
  }

  result.best_rm = to_machine(best_table, tree.observations());
  result.best_cost = best;
  result.iterations = t;
  result.restarts = restarts;
  return result;
}

SearchResult tabu_search(const PrefixTree& tree, const SearchConfig& cfg) {
  validate(tree, cfg);
  Evaluator ev(tree);
  Rng rng(cfg.seed);
  Deadline deadline(cfg.wall_clock_limit_sec);
  const int num_obs = tree.observations().size();

  long long t = 0;
  int restarts = -1;
  double best = kInf;
  TransitionTable best_table = TransitionTable::empty(cfg.u_max, num_obs);
  TabuList tabu(cfg.tabu_size);
  SearchResult result;

  while (t <= cfg.t_max && !deadline.expired()) {
    ++restarts;
    TransitionTable cur = sample_table(cfg.u_max, num_obs, rng, cfg.compressed_mode);
    double c = ev.total(cur);
    if (c < best) {
      best = c;
      best_table = cur;
    }
    while (t <= cfg.t_max && !tabu.contains(table_key(cur)) && !deadline.expired()) {
      ++t;
      tabu.push(table_key(cur));
      c = kInf;
      int move_u = -1, move_o = -1, move_w = 0;
      TransitionTable cand = cur;
      for_each_neighbour_move(cur, cfg.u_max, [&](int u, int o, int w) {
        int saved = cand.at(u, o);
        cand.put(u, o, w);
        if ((!cfg.compressed_mode || closure_ok(cand)) && !tabu.contains(table_key(cand))) {
          double cn = ev.total(cand);
          if (cn < c) {
            c = cn;
            move_u = u;
            move_o = o;
            move_w = w;
          }
        }
        cand.put(u, o, saved);
      });
      if (move_u >= 0) cur.put(move_u, move_o, move_w);
      // with every neighbour listed the machine stays put and its own key,
      // pushed above, ends the inner loop
      if (c < best) {
        best = c;
        best_table = cur;
      }
      result.trajectory.push_back({t, c, best, restarts});
    }
  }

  result.best_rm = to_machine(best_table, tree.observations());
  result.best_cost = best;
  result.iterations = t;
  result.restarts = restarts;
  return result;
}

std::pair<RewardMachine, double> exact_enumerate(const PrefixTree& tree,
                                                 const SearchConfig& cfg) {
  validate(tree, cfg);
  const int num_obs = tree.observations().size();
  const long long slots = static_cast<long long>(cfg.u_max) * num_obs;
  const double count = std::pow(static_cast<double>(cfg.u_max) + 1.0, static_cast<double>(slots));
  if (!(count <= static_cast<double>(cfg.enum_budget))) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "exact enumeration needs %.6g candidates, budget is %lld", count,
                  cfg.enum_budget);
    throw BudgetError(buf);
  }

  Evaluator ev(tree);
  TransitionTable cur = TransitionTable::empty(cfg.u_max, num_obs);
  TransitionTable best_table = cur;
  double best = kInf;
  for (;;) {
    if (!cfg.compressed_mode || closure_ok(cur)) {
      double c = ev.total(cur);
      if (c < best) {
        best = c;
        best_table = cur;
      }
    }
    // odometer over slots, last slot least significant; values -1..u_max-1
    long long i = slots - 1;
    while (i >= 0) {
      auto idx = static_cast<std::size_t>(i);
      if (cur.next[idx] + 1 < cfg.u_max) {
        cur.next[idx] = static_cast<std::int16_t>(cur.next[idx] + 1);
        break;
      }
      cur.next[idx] = -1;
      --i;
    }
    if (i < 0) break;
  }
  if (best == kInf) throw ConfigError("no feasible machine found");
  return {to_machine(best_table, tree.observations()), best};
}

void write_search_csv(std::ostream& os, const SearchResult& result,
                      const std::vector<std::pair<std::string, std::string>>& meta) {
  for (const auto& [k, v] : meta) os << "# " << k << ": " << v << "\n";
  os << "iteration,current_cost,best_cost,restarts\n";
  for (const auto& p : result.trajectory)
    os << p.iteration << "," << format_cost(p.current_cost) << "," << format_cost(p.best_cost)
       << "," << p.restarts << "\n";
}

}  // namespace rmlearn

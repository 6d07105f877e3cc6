#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "rmlearn/objective.hpp"
#include "rmlearn/rng.hpp"

namespace rmlearn {

struct SearchConfig {
  int u_max = 10;
  long long t_max = 100;
  int tabu_size = 100;
  std::uint64_t seed = 0;
  bool compressed_mode = false;
  double wall_clock_limit_sec = 0.0;  // <= 0 disables the limit
  long long enum_budget = 2'000'000;  // candidate cap for exact_enumerate
};

struct TrajectoryPoint {
  long long iteration = 0;
  double current_cost = 0.0;
  double best_cost = 0.0;
  int restarts = 0;
};

struct SearchResult {
  RewardMachine best_rm;
  double best_cost = 0.0;
  long long iterations = 0;
  int restarts = 0;
  std::vector<TrajectoryPoint> trajectory;
};

// Uniform machine over u_max states: every (state, observation) slot is
// independently absent or one of the u_max targets, so any machine with at
// most u_max states has positive probability. In compressed mode the sample
// is repaired to satisfy the self loop closure.
RewardMachine sample_random_rm(const ObsTable& observations, int u_max, Rng& rng,
                               bool compressed_mode);

// Machines reachable by rewriting exactly one slot to another value (absent
// or any target). Candidates that leave the transition function unchanged
// (removing a stored self loop or storing one) are skipped, as are closure
// violators in compressed mode. Enumeration order is slot major, value
// ascending, which is the canonical order used for tie breaking everywhere.
std::vector<RewardMachine> neighbours(const RewardMachine& rm, const ObsTable& observations,
                                      int u_max, bool compressed_mode);

// Steepest descent with random restarts. Each iteration moves to the best
// strictly improving neighbour; at a local optimum the search restarts from
// a fresh random machine. The iteration counter advances once per descent
// step, never when restarting.
SearchResult local_search(const PrefixTree& tree, const SearchConfig& cfg);

// Short term memory variant: visited machines enter a FIFO list of capacity
// tabu_size and the search moves to the best non listed neighbour even when
// it is worse. A restart happens when the current machine re-enters the list
// or no non listed neighbour exists. Identity is the serialized transition
// map, so a stored self loop and an absent entry are distinct.
SearchResult tabu_search(const PrefixTree& tree, const SearchConfig& cfg);

// Scores every one of the (u_max+1)^(u_max * |observations|) transition maps
// and returns the first minimum in canonical enumeration order. Throws
// BudgetError when the candidate count exceeds cfg.enum_budget.
std::pair<RewardMachine, double> exact_enumerate(const PrefixTree& tree,
                                                 const SearchConfig& cfg);

void write_search_csv(std::ostream& os, const SearchResult& result,
                      const std::vector<std::pair<std::string, std::string>>& meta = {});

}  // namespace rmlearn

#include <benchmark/benchmark.h>

#include "rmlearn/agent.hpp"
#include "rmlearn/env.hpp"
#include "rmlearn/objective.hpp"
#include "rmlearn/prefix_tree.hpp"
#include "rmlearn/search.hpp"
#include "rmlearn/trace.hpp"

namespace {

using namespace rmlearn;

TraceSet cookie_corpus(long long steps, bool compressed) {
  GridPomdp env(Domain::cookie, 7);
  Rng rng(11);
  return collect_random_traces(env, steps, rng, compressed);
}

void bm_evaluate(benchmark::State& state) {
  const TraceSet ts = cookie_corpus(10000, true);
  const PrefixTree tree = build_prefix_tree(ts);
  Rng rng(3);
  const RewardMachine rm = sample_random_rm(tree.observations(), 10, rng, true);
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate(rm, tree).total);
  }
  state.SetLabel(std::to_string(tree.num_nodes()) + " nodes");
}
BENCHMARK(bm_evaluate);

void bm_neighbours(benchmark::State& state) {
  const TraceSet ts = cookie_corpus(10000, true);
  const PrefixTree tree = build_prefix_tree(ts);
  Rng rng(3);
  const RewardMachine rm = sample_random_rm(tree.observations(), 10, rng, true);
  for (auto _ : state) {
    benchmark::DoNotOptimize(neighbours(rm, tree.observations(), 10, true).size());
  }
}
BENCHMARK(bm_neighbours);

void bm_env_step(benchmark::State& state) {
  GridPomdp env(Domain::cookie, 5);
  Rng rng(9);
  env.reset();
  for (auto _ : state) {
    if (env.episode_done()) env.reset();
    benchmark::DoNotOptimize(env.step(static_cast<int>(rng.below(4))).reward);
  }
}
BENCHMARK(bm_env_step);

void bm_compress(benchmark::State& state) {
  const TraceSet ts = cookie_corpus(5000, false);
  for (auto _ : state) {
    for (const auto& tr : ts.traces) {
      benchmark::DoNotOptimize(compress(tr).obs.size());
    }
  }
}
BENCHMARK(bm_compress);

}  // namespace

BENCHMARK_MAIN();

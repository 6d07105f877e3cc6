#include <cmath>

#include "doctest.h"

#include "rmlearn/prediction.hpp"
#include "rmlearn/reference_machines.hpp"
#include "support/test_util.hpp"

using namespace rmlearn;
using testutil::letters;
using testutil::make_corpus;
using testutil::obs_of;

TEST_CASE("single state pools every context into one row") {
  auto a = letters(3);
  const TraceSet corpus = make_corpus(a, {{{"a"}, {"b"}, {"a"}, {"c"}}});
  const auto sets = prediction_sets(single_state_machine(), corpus);

  const HighLevelObs oa = obs_of(a, {"a"});
  const HighLevelObs ob = obs_of(a, {"b"});
  const HighLevelObs oc = obs_of(a, {"c"});

  CHECK(sets.entries.size() == 2);
  CHECK(sets.contains(0, oa, ob));
  CHECK(sets.contains(0, oa, oc));
  CHECK(!sets.contains(0, oa, oa));
  CHECK(sets.contains(0, ob, oa));
  CHECK(sets.count(0, oa) == 2);
  CHECK(sets.count(0, ob) == 1);
  // the last observation is never a context
  CHECK(sets.count(0, oc) == 0);
}

TEST_CASE("machine state splits contexts that share an observation") {
  auto a = letters(3);
  const HighLevelObs oa = obs_of(a, {"a"});
  const HighLevelObs ob = obs_of(a, {"b"});
  const HighLevelObs oc = obs_of(a, {"c"});

  RewardMachine rm;
  rm.num_states = 2;
  rm.transitions[{0, ob}] = 1;

  const TraceSet corpus = make_corpus(a, {{{"a"}, {"b"}, {"a"}, {"c"}}});
  const auto sets = prediction_sets(rm, corpus);

  // the two occurrences of context a land in different states
  CHECK(sets.contains(0, oa, ob));
  CHECK(!sets.contains(0, oa, oc));
  CHECK(sets.contains(1, oa, oc));
  CHECK(!sets.contains(1, oa, ob));
  CHECK(sets.contains(1, ob, oa));
  CHECK(sets.count(0, oa) == 1);
  CHECK(sets.count(1, oa) == 1);
  CHECK(sets.count(0, ob) == 0);
}

TEST_CASE("counts add up to the continuing positions of the corpus") {
  Rng rng(11);
  for (int round = 0; round < 20; ++round) {
    const TraceSet corpus = testutil::random_corpus(rng, 3, 5, 1, 12, false);
    long long positions = 0;
    for (const auto& tr : corpus.traces)
      positions += static_cast<long long>(tr.obs.size()) - 1;
    const auto sets = prediction_sets(single_state_machine(), corpus);
    long long total = 0;
    for (const auto& [key, n] : sets.counts) total += n;
    CHECK(total == positions);
    for (const auto& [key, members] : sets.entries) CHECK(!members.empty());
  }
}

TEST_CASE("edge rewards average the observed payouts") {
  auto a = letters(2);
  const HighLevelObs oa = obs_of(a, {"a"});
  const HighLevelObs ob = obs_of(a, {"b"});

  TraceSet corpus = make_corpus(a, {{{"a"}, {"b"}, {"a"}, {"b"}}});
  corpus.traces[0].rewards = {1.0, 2.0, 3.0};

  const auto dr = estimate_delta_r(single_state_machine(), corpus, 0.0);
  REQUIRE(dr.size() == 2);
  CHECK(dr.at({0, ob}) == doctest::Approx(2.0));  // (1 + 3) / 2
  CHECK(dr.at({0, oa}) == doctest::Approx(2.0));  // 2 / 1
  CHECK(dr.count({0, HighLevelObs(a.size())}) == 0);

  // the regulariser shaves the estimate slightly below the mean
  const auto damped = estimate_delta_r(single_state_machine(), corpus, 1e-6);
  CHECK(damped.at({0, ob}) < 2.0);
  CHECK(damped.at({0, ob}) == doctest::Approx(2.0).epsilon(1e-5));
}

TEST_CASE("edge rewards respect machine state") {
  auto a = letters(2);
  const HighLevelObs oa = obs_of(a, {"a"});
  const HighLevelObs ob = obs_of(a, {"b"});

  RewardMachine rm;
  rm.num_states = 2;
  rm.transitions[{0, ob}] = 1;
  rm.transitions[{1, ob}] = 1;

  // b is worth 1 the first time and 5 afterwards
  TraceSet corpus = make_corpus(a, {{{"a"}, {"b"}, {"a"}, {"b"}, {"a"}, {"b"}}});
  corpus.traces[0].rewards = {1.0, 0.0, 5.0, 0.0, 5.0};

  const auto dr = estimate_delta_r(rm, corpus, 0.0);
  CHECK(dr.at({0, ob}) == doctest::Approx(1.0));
  CHECK(dr.at({1, ob}) == doctest::Approx(5.0));
  CHECK(dr.at({1, oa}) == doctest::Approx(0.0));
}

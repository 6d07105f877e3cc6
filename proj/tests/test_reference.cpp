#include <vector>

#include "doctest.h"

#include "rmlearn/agent.hpp"
#include "rmlearn/objective.hpp"
#include "rmlearn/prefix_tree.hpp"
#include "rmlearn/reference_machines.hpp"
#include "support/test_util.hpp"

using namespace rmlearn;
namespace tu = rmlearn::testutil;

TEST_CASE("the cookie machine tracks where the cookie is known to be") {
  const PropositionAlphabet a = make_domain_alphabet(Domain::cookie);
  const RewardMachine rm = cookie_reference_machine(a);

  CHECK(rm.num_states == 4);
  CHECK(rm.initial == 0);
  CHECK(rm.transitions.size() == 9);
  CHECK(check_selfloop_closure(rm).empty());

  const auto hall = tu::obs_of(a, {"R1"});
  const auto press = tu::obs_of(a, {"R3", "BP"});
  const auto blue_empty = tu::obs_of(a, {"R2"});
  const auto green_cookie = tu::obs_of(a, {"R0", "C"});
  const auto green_eat = tu::obs_of(a, {"R0", "CE"});
  const auto blue_eat = tu::obs_of(a, {"R2", "CE"});

  // press resolves nothing yet; a room sighting does; eating starts over
  CHECK(transition(rm, 0, press) == 1);
  CHECK(transition(rm, 1, blue_empty) == 2);
  CHECK(transition(rm, 1, green_cookie) == 2);
  CHECK(transition(rm, 1, tu::obs_of(a, {"R0"})) == 3);
  CHECK(transition(rm, 1, tu::obs_of(a, {"R2", "C"})) == 3);
  CHECK(transition(rm, 2, press) == 1);
  CHECK(transition(rm, 3, press) == 1);
  CHECK(transition(rm, 2, green_eat) == 0);
  CHECK(transition(rm, 3, blue_eat) == 0);
  CHECK(transition(rm, 0, hall) == 0);  // unknown observations self loop
  CHECK(transition(rm, 2, hall) == 2);

  CHECK(edge_reward(rm, 2, green_eat) == 1.0);
  CHECK(edge_reward(rm, 3, blue_eat) == 1.0);
  CHECK(edge_reward(rm, 0, press) == 0.0);
  CHECK(edge_reward(rm, 3, green_eat) == 0.0);

  LabelledTrace ep;
  ep.obs = {hall, press, blue_empty, hall, green_cookie, green_eat};
  ep.rewards.assign(5, 0.0);
  CHECK(run_trace(rm, ep) == std::vector<int>{0, 1, 2, 2, 2, 0});
}

TEST_CASE("the gravity machine toggles with the button and rewards every eat") {
  const PropositionAlphabet a = make_domain_alphabet(Domain::gravity);
  const RewardMachine rm = gravity_reference_machine(a);

  CHECK(rm.num_states == 2);
  const auto press = tu::obs_of(a, {"BP"});
  const auto eat = tu::obs_of(a, {"CE"});

  CHECK(transition(rm, 0, press) == 1);
  CHECK(transition(rm, 1, press) == 0);
  CHECK(transition(rm, 0, eat) == 0);
  CHECK(transition(rm, 1, eat) == 1);
  CHECK(edge_reward(rm, 0, eat) == 1.0);
  CHECK(edge_reward(rm, 1, eat) == 1.0);

  // the toggle is incompatible with collapsed runs: pressing twice must move
  const auto violations = check_selfloop_closure(rm);
  CHECK(violations.size() == 2);
  for (const auto& v : violations) CHECK(v.obs == press);

  LabelledTrace ep;
  ep.obs = {tu::obs_of(a, {}), press, eat, press, eat};
  ep.rewards = {0.0, 1.0, 0.0, 1.0};
  CHECK(run_trace(rm, ep) == std::vector<int>{0, 1, 1, 0, 0});
}

TEST_CASE("the single state machine never moves") {
  const RewardMachine rm = single_state_machine();
  CHECK(rm.num_states == 1);
  CHECK(rm.transitions.empty());
  CHECK(rm.rewards.empty());
  CHECK(check_selfloop_closure(rm).empty());

  const PropositionAlphabet a = tu::letters(2);
  const TraceSet corpus = tu::make_corpus(a, {{{"a"}, {"b"}, {"a"}, {"b"}}});
  CHECK(run_trace(rm, corpus.traces[0]) == std::vector<int>{0, 0, 0, 0});
}

TEST_CASE("on real cookie play the hand-built machine predicts better than none") {
  GridPomdp env(Domain::cookie, 3);
  Rng policy(4);
  const TraceSet corpus = collect_random_traces(env, 10000, policy, true);
  const PrefixTree tree = build_prefix_tree(corpus);

  const double fixture = evaluate(cookie_reference_machine(env.alphabet()), tree).total;
  const double bare = evaluate(single_state_machine(), tree).total;
  CHECK(fixture < bare);
}

#include "doctest.h"

#include <numeric>
#include <string>
#include <vector>

#include "rmlearn/prefix_tree.hpp"
#include "rmlearn/reward_machine.hpp"
#include "rmlearn/search.hpp"
#include "rmlearn/trace.hpp"
#include "support/test_util.hpp"

using namespace rmlearn;
using testutil::letters;
using testutil::make_trace;
using testutil::obs_of;

TEST_CASE("label_trace applies init and step labellers in order") {
  PropositionAlphabet a({"even", "big"});
  auto label = [&](int v) {
    HighLevelObs o(a.size());
    if (v % 2 == 0) o.set(0);
    if (v > 10) o.set(1);
    return o;
  };
  std::vector<RawStep<int>> steps{{3, 0, 0.5}, {12, 1, -1.0}};
  const LabelledTrace tr = label_trace(
      4, steps, label, [&](int, int, int next) { return label(next); });
  REQUIRE(tr.obs.size() == 3);
  CHECK(tr.obs[0] == obs_of(a, {"even"}));
  CHECK(tr.obs[1] == obs_of(a, {}));
  CHECK(tr.obs[2] == obs_of(a, {"even", "big"}));
  CHECK(tr.rewards == std::vector<double>{0.5, -1.0});
  CHECK(!tr.compressed);
}

namespace {

// the worked room-hopping example: 26 observations collapsing to 9
std::vector<std::vector<std::string>> long_room_walk() {
  return {{"R1"}, {"R1"}, {"R1"}, {"R1"}, {"R3"}, {"R3"}, {"R3", "BP"},
          {"R3"}, {"R3"}, {"R1"}, {"R1"}, {"R1"}, {"R1"}, {"R1"}, {"R1"},
          {"R1"}, {"R2"}, {"R1"}, {"R1"}, {"R1"}, {"R1"}, {"R1"}, {"R1"},
          {"R1"}, {"R1"}, {"R0", "C"}};
}

}  // namespace

TEST_CASE("compress collapses runs after the first observation") {
  PropositionAlphabet a({"C", "BP", "R0", "R1", "R2", "R3"});
  std::vector<double> rewards(25);
  std::iota(rewards.begin(), rewards.end(), 1.0);  // 1..25
  const LabelledTrace tc = compress(make_trace(a, long_room_walk(), rewards));

  const auto expected = make_trace(
      a,
      {{"R1"}, {"R1"}, {"R3"}, {"R3", "BP"}, {"R3"}, {"R1"}, {"R2"}, {"R1"}, {"R0", "C"}},
      {6, 9, 6, 15, 84, 16, 164, 25});
  CHECK(tc.obs == expected.obs);
  CHECK(tc.rewards == expected.rewards);
  CHECK(tc.compressed);
  const double total = std::accumulate(tc.rewards.begin(), tc.rewards.end(), 0.0);
  CHECK(total == doctest::Approx(25.0 * 26.0 / 2.0).epsilon(1e-12));
}

TEST_CASE("compress keeps alternating traces and the leading duplicate") {
  auto a = letters(2);
  SUBCASE("already alternating") {
    const auto tr = make_trace(a, {{"a"}, {"b"}, {"a"}, {"b"}});
    const auto tc = compress(tr);
    CHECK(tc.obs == tr.obs);
    CHECK(tc.rewards == tr.rewards);
  }
  SUBCASE("constant trace keeps first two entries") {
    const auto tc = compress(make_trace(a, {{"a"}, {"a"}, {"a"}, {"a"}}, {1, 2, 4}));
    CHECK(tc.obs == make_trace(a, {{"a"}, {"a"}}).obs);
    CHECK(tc.rewards == std::vector<double>{7.0});
  }
  SUBCASE("single observation") {
    const auto tc = compress(make_trace(a, {{"b"}}));
    CHECK(tc.obs.size() == 1);
    CHECK(tc.compressed);
  }
}

TEST_CASE("compress validates its input") {
  auto a = letters(1);
  auto tr = make_trace(a, {{"a"}, {"a"}});
  const auto tc = compress(tr);
  CHECK_THROWS_AS(compress(tc), std::invalid_argument);
  LabelledTrace empty;
  CHECK_THROWS_AS(compress(empty), std::invalid_argument);
  LabelledTrace bad = tr;
  bad.rewards.push_back(1.0);
  CHECK_THROWS_AS(compress(bad), std::invalid_argument);
}

TEST_CASE("machine states on a compressed trace match the run starts") {
  Rng rng(42);
  for (int round = 0; round < 50; ++round) {
    const TraceSet corpus = testutil::random_corpus(rng, 2, 1, 4, 12, false);
    const LabelledTrace& raw = corpus.traces[0];
    const LabelledTrace packed = compress(raw);

    // closure-repaired random machine, as compressed mode requires
    std::vector<HighLevelObs> seen(raw.obs.begin(), raw.obs.end());
    const ObsTable table = ObsTable::build(seen);
    const RewardMachine rm = sample_random_rm(table, 3, rng, true);
    REQUIRE(check_selfloop_closure(rm).empty());

    const auto raw_states = run_trace(rm, raw);
    const auto packed_states = run_trace(rm, packed);
    std::vector<int> expected{raw_states[0]};
    for (std::size_t t = 1; t < raw.obs.size(); ++t) {
      if (t == 1 || !(raw.obs[t] == raw.obs[t - 1])) {
        expected.push_back(raw_states[t]);
      }
    }
    CHECK(packed_states == expected);
  }
}

#include "doctest.h"

#include <algorithm>

#include "rmlearn/alphabet.hpp"
#include "rmlearn/errors.hpp"
#include "support/test_util.hpp"

using namespace rmlearn;
using testutil::letters;
using testutil::obs_of;

TEST_CASE("alphabet assigns dense ids and rejects bad names") {
  PropositionAlphabet a;
  CHECK(a.add("BP") == 0);
  CHECK(a.add("R3") == 1);
  CHECK(a.size() == 2);
  CHECK(a.name(0) == "BP");
  CHECK(*a.id("R3") == 1);
  CHECK(!a.id("nope").has_value());
  CHECK_THROWS_AS(a.add("BP"), std::invalid_argument);
  CHECK_THROWS_AS(a.add(""), std::invalid_argument);
  CHECK_THROWS_AS(a.name(2), std::out_of_range);
}

TEST_CASE("observations print sorted names") {
  PropositionAlphabet a({"R3", "BP", "C"});
  const auto o = obs_of(a, {"R3", "BP"});
  CHECK(o.names(a) == std::vector<std::string>{"BP", "R3"});
  CHECK(o.to_string(a) == "{BP,R3}");
  CHECK(HighLevelObs(a.size()).to_string(a) == "{}");
  CHECK_THROWS_AS(obs_of(a, {"R9"}), ConfigError);
}

TEST_CASE("observation order is numeric and total") {
  auto a = letters(3);
  const auto empty = obs_of(a, {});
  const auto oa = obs_of(a, {"a"});
  const auto ob = obs_of(a, {"b"});
  const auto oab = obs_of(a, {"a", "b"});
  CHECK(empty < oa);
  CHECK(oa < ob);
  CHECK(ob < oab);
  CHECK(oa == obs_of(a, {"a"}));
  CHECK(oa.hash() == obs_of(a, {"a"}).hash());
  CHECK(oa.hash() != ob.hash());
}

TEST_CASE("wide observations spill into extra words") {
  PropositionAlphabet a;
  for (int i = 0; i < 70; ++i) a.add("p" + std::to_string(i));
  HighLevelObs low(a.size()), high(a.size());
  low.set(0);
  high.set(69);
  CHECK(low.count() == 1);
  CHECK(high.test(69));
  CHECK(low < high);  // high word dominates
  CHECK(low.hash() != high.hash());
  high.set(69, false);
  CHECK(high.none());
  CHECK_THROWS_AS(high.set(70), std::out_of_range);
}

TEST_CASE("obs table ids follow canonical order regardless of input order") {
  auto a = letters(2);
  const auto empty = obs_of(a, {});
  const auto oa = obs_of(a, {"a"});
  const auto ob = obs_of(a, {"b"});
  ObsTable t = ObsTable::build({ob, oa, ob, empty, oa});
  CHECK(t.size() == 3);
  CHECK(t.obs(0) == empty);
  CHECK(t.obs(1) == oa);
  CHECK(t.obs(2) == ob);
  CHECK(*t.id(ob) == 2);
  CHECK(!t.id(obs_of(a, {"a", "b"})).has_value());
}

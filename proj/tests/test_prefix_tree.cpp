#include "doctest.h"

#include "rmlearn/errors.hpp"
#include "rmlearn/prefix_tree.hpp"
#include "support/test_util.hpp"

using namespace rmlearn;
using testutil::letters;
using testutil::make_corpus;
using testutil::obs_of;

TEST_CASE("three short traces share prefixes in a five node tree") {
  auto a = letters(3);
  const TraceSet corpus = make_corpus(a, {{{"b"}}, {{"a"}, {"b"}}, {{"a"}, {"c"}}});
  const PrefixTree pt = build_prefix_tree(corpus);

  REQUIRE(pt.num_nodes() == 5);
  CHECK(pt.num_traces() == 3);
  const int oa = *pt.observations().id(obs_of(a, {"a"}));
  const int ob = *pt.observations().id(obs_of(a, {"b"}));
  const int oc = *pt.observations().id(obs_of(a, {"c"}));

  CHECK(pt.node(0).weight == 3);
  const int na = pt.child(0, oa);
  const int nb = pt.child(0, ob);
  REQUIRE(na >= 0);
  REQUIRE(nb >= 0);
  CHECK(pt.node(na).weight == 2);
  CHECK(pt.node(nb).weight == 0);
  CHECK(pt.node(nb).children.empty());

  const int nab = pt.child(na, ob);
  const int nac = pt.child(na, oc);
  REQUIRE(nab >= 0);
  REQUIRE(nac >= 0);
  CHECK(pt.node(nab).weight == 0);
  CHECK(pt.node(nac).weight == 0);
  CHECK(pt.node(na).parent == 0);
  CHECK(pt.node(nab).parent == na);
  CHECK(pt.node(nac).obs == oc);
  CHECK(pt.child(0, oc) == -1);
}

TEST_CASE("a single distinct-symbol trace builds a weighted chain") {
  auto a = letters(3);
  const PrefixTree pt =
      build_prefix_tree(make_corpus(a, {{{"a"}, {"b"}, {"c"}}}));
  REQUIRE(pt.num_nodes() == 4);
  // every observation bumps the node it leaves from; the leaf stays at zero
  int node = 0;
  for (const int expect : {1, 1, 1, 0}) {
    CHECK(pt.node(node).weight == expect);
    if (!pt.node(node).children.empty()) node = pt.node(node).children[0].second;
  }
}

TEST_CASE("identical traces double every weight") {
  auto a = letters(2);
  const auto one = build_prefix_tree(make_corpus(a, {{{"a"}, {"b"}}}));
  const auto two = build_prefix_tree(make_corpus(a, {{{"a"}, {"b"}}, {{"a"}, {"b"}}}));
  REQUIRE(one.num_nodes() == two.num_nodes());
  for (int i = 0; i < one.num_nodes(); ++i) {
    CHECK(two.node(i).weight == 2 * one.node(i).weight);
  }
}

TEST_CASE("corpus validation") {
  auto a = letters(2);
  SUBCASE("mixed compression is rejected") {
    TraceSet corpus = make_corpus(a, {{{"a"}, {"b"}}, {{"b"}, {"a"}}});
    corpus.traces[1].compressed = true;
    CHECK_THROWS_AS(build_prefix_tree(corpus), ConfigError);
  }
  SUBCASE("empty trace is rejected") {
    TraceSet corpus = make_corpus(a, {{{"a"}}});
    corpus.traces.push_back({});
    CHECK_THROWS_AS(build_prefix_tree(corpus), ConfigError);
  }
  SUBCASE("misaligned rewards are rejected") {
    TraceSet corpus = make_corpus(a, {{{"a"}, {"b"}}});
    corpus.traces[0].rewards.push_back(3.0);
    CHECK_THROWS_AS(build_prefix_tree(corpus), ConfigError);
  }
  SUBCASE("compressed corpora mark the tree") {
    TraceSet corpus = make_corpus(a, {{{"a"}, {"b"}}});
    corpus.traces[0].compressed = true;
    CHECK(build_prefix_tree(corpus).compressed());
    CHECK(!build_prefix_tree(make_corpus(a, {{{"a"}}})).compressed());
  }
}

TEST_CASE("node count never exceeds one plus total observations") {
  Rng rng(7);
  for (int round = 0; round < 25; ++round) {
    const TraceSet corpus = testutil::random_corpus(rng, 2, 4, 2, 9, false);
    long long total = 0;
    for (const auto& tr : corpus.traces) total += static_cast<long long>(tr.obs.size());
    const PrefixTree pt = build_prefix_tree(corpus);
    CHECK(pt.num_nodes() <= total + 1);
    CHECK(pt.num_traces() == 4);
    CHECK(pt.node(0).weight == 4);
  }
}

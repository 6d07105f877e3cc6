#include <cmath>
#include <limits>
#include <string>

#include "doctest.h"

#include "rmlearn/cp_model.hpp"
#include "rmlearn/errors.hpp"
#include "rmlearn/milp_model.hpp"
#include "rmlearn/search.hpp"
#include "support/test_util.hpp"

using namespace rmlearn;
using testutil::letters;
using testutil::make_corpus;
using testutil::obs_of;

namespace {

TraceSet toy_corpus() {
  auto a = letters(3);
  return make_corpus(a, {{{"a"}, {"b"}, {"a"}, {"c"}}, {{"b"}, {"a"}, {"b"}}});
}

}  // namespace

TEST_CASE("witnesses collect the nodes that can prove a successor") {
  const PrefixTree tree = build_prefix_tree(toy_corpus());
  const CpModel model = build_cp_model(tree, 2, false);

  // every witness list entry really is a node with that incoming observation
  // and a child on the successor observation
  long long listed = 0;
  for (const auto& [key, nodes] : model.witnesses) {
    CHECK(!nodes.empty());
    for (int n : nodes) {
      CHECK(tree.node(n).obs == key.first);
      CHECK(tree.child(n, key.second) >= 0);
      ++listed;
    }
  }
  long long edges = 0;
  for (int n = 1; n < tree.num_nodes(); ++n)
    edges += static_cast<long long>(tree.node(n).children.size());
  CHECK(listed == edges);
}

TEST_CASE("the rendered text is stable and carries the whole instance") {
  const PrefixTree tree = build_prefix_tree(toy_corpus());
  const CpModel model = build_cp_model(tree, 2, false);
  const std::string text = write_cp_model(model, {{"tool", "test"}});
  CHECK(text == write_cp_model(model, {{"tool", "test"}}));
  CHECK(text.rfind("# rm-cp-model v1", 0) == 0);
  CHECK(text.find("dvar d[u in 0..1, s in 0..") != std::string::npos);
  CHECK(text.find("x[0] = 0") != std::string::npos);
  CHECK(text.find("minimize sum(w[n] * ln(y[x[n], obs[n]]) : n in nodes, w[n] > 0)") !=
        std::string::npos);
  CHECK(text.find("constraint if") == std::string::npos);  // uncompressed

  const CpModel back = parse_cp_model(text);
  CHECK(back.u_max == model.u_max);
  CHECK(back.compressed == model.compressed);
  CHECK(back.witnesses == model.witnesses);
  CHECK(back.tree.num_nodes() == tree.num_nodes());
  for (int n = 0; n < tree.num_nodes(); ++n) {
    CHECK(back.tree.node(n).parent == tree.node(n).parent);
    CHECK(back.tree.node(n).obs == tree.node(n).obs);
    CHECK(back.tree.node(n).weight == tree.node(n).weight);
  }
  // a reparse of the re-render is byte identical
  CHECK(write_cp_model(back) == write_cp_model(model));
}

TEST_CASE("compressed instances render the pinning implications") {
  auto a = letters(2);
  TraceSet corpus = make_corpus(a, {{{"a"}, {"b"}, {"b"}, {"a"}}});
  for (auto& tr : corpus.traces) tr = compress(tr);
  const PrefixTree tree = build_prefix_tree(corpus);
  const CpModel model = build_cp_model(tree, 2, true);
  const std::string text = write_cp_model(model);
  CHECK(text.find("constraint if d[0, ") != std::string::npos);

  const CpModel back = parse_cp_model(text);
  CHECK(back.compressed);
  CHECK(back.tree.compressed());

  CHECK_THROWS_AS(build_cp_model(tree, 2, false), ConfigError);
  CHECK_THROWS_AS(build_cp_model(tree, 0, true), ConfigError);
}

TEST_CASE("parser rejects mangled documents") {
  CHECK_THROWS_AS(parse_cp_model(""), ConfigError);
  CHECK_THROWS_AS(parse_cp_model("# rm-cp-model v1\nu_max 2\n"), ConfigError);

  const PrefixTree tree = build_prefix_tree(toy_corpus());
  std::string text = write_cp_model(build_cp_model(tree, 2, false));
  const auto pos = text.find("node 1");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 6, "node 7");
  CHECK_THROWS_AS(parse_cp_model(text), ConfigError);
}

TEST_CASE("substitution matches the evaluator and the milp twin") {
  Rng rng(909);
  for (int round = 0; round < 8; ++round) {
    const bool compressed = round % 2 == 0;
    const TraceSet corpus = testutil::random_corpus(rng, 2, 3, 2, 10, compressed);
    const PrefixTree tree = build_prefix_tree(corpus);
    const CpModel model = build_cp_model(tree, 3, compressed);
    const MilpModel milp = build_milp_model(tree, 3, compressed);
    for (int k = 0; k < 100; ++k) {
      const RewardMachine rm = sample_random_rm(tree.observations(), 3, rng, compressed);
      const SubstitutionResult res = substitute_and_score(model, rm);
      CHECK(res.feasible);
      CHECK(std::fabs(res.objective - evaluate(rm, tree).total) < 1e-6);
      CHECK(std::fabs(res.objective - substitute_and_score(milp, rm).objective) < 1e-9);
    }
  }
}

TEST_CASE("closure violators trip the implication rows only when compressed") {
  auto a = letters(2);
  const HighLevelObs oa = obs_of(a, {"a"});

  RewardMachine swap;
  swap.num_states = 2;
  swap.transitions[{0, oa}] = 1;
  swap.transitions[{1, oa}] = 0;

  TraceSet raw = make_corpus(a, {{{"a"}, {"b"}, {"a"}, {"a"}}});
  TraceSet packed = raw;
  for (auto& tr : packed.traces) tr = compress(tr);

  const SubstitutionResult ok =
      substitute_and_score(build_cp_model(build_prefix_tree(raw), 2, false), swap);
  CHECK(ok.feasible);

  const SubstitutionResult bad =
      substitute_and_score(build_cp_model(build_prefix_tree(packed), 2, true), swap);
  CHECK(!bad.feasible);
  CHECK(bad.violated.rfind("c29_", 0) == 0);
}

TEST_CASE("scanning every assignment through the cp model reproduces the optimum") {
  auto a = letters(2);
  TraceSet corpus = make_corpus(a, {{{"a"}, {"b"}, {"a"}, {"a"}, {"b"}},
                                    {{"b"}, {"b"}, {"a"}}});
  for (auto& tr : corpus.traces) tr = compress(tr);
  const PrefixTree tree = build_prefix_tree(corpus);
  SearchConfig cfg;
  cfg.u_max = 2;
  cfg.compressed_mode = true;
  const double exact_cost = exact_enumerate(tree, cfg).second;

  const CpModel model = build_cp_model(tree, 2, true);
  const int S = tree.observations().size();
  double best = std::numeric_limits<double>::infinity();
  TransitionTable t = TransitionTable::empty(2, S);
  for (;;) {
    const SubstitutionResult res =
        substitute_and_score(model, to_machine(t, tree.observations()));
    if (res.feasible) best = std::min(best, res.objective);
    int i = static_cast<int>(t.next.size()) - 1;
    while (i >= 0 && t.next[static_cast<std::size_t>(i)] + 1 >= 2) {
      t.next[static_cast<std::size_t>(i)] = -1;
      --i;
    }
    if (i < 0) break;
    t.next[static_cast<std::size_t>(i)] =
        static_cast<std::int16_t>(t.next[static_cast<std::size_t>(i)] + 1);
  }
  CHECK(std::fabs(best - exact_cost) < 1e-9);
}

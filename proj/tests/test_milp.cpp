#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "doctest.h"

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

int count_prefix(const std::vector<MilpConstraint>& cs, const std::string& prefix) {
  int n = 0;
  for (const auto& c : cs)
    if (c.name.rfind(prefix, 0) == 0) ++n;
  return n;
}

}  // namespace

TEST_CASE("the variable and row counts follow the instance dimensions") {
  const PrefixTree tree = build_prefix_tree(toy_corpus());
  const int N = tree.num_nodes();
  const int S = tree.observations().size();
  const int u = 2;
  const MilpModel model = build_milp_model(tree, u, false);

  CHECK(model.m_cap == S);
  CHECK(model.big_m == doctest::Approx(3.0 * std::log(2.0)));
  const int expected_vars = N * u + u * S * u + u * S * S + u * S * S + (N - 1);
  CHECK(static_cast<int>(model.vars.size()) == expected_vars);

  int depth1 = 0, children = 0;
  for (int n = 1; n < N; ++n) {
    if (tree.node(n).parent == 0) ++depth1;
    children += static_cast<int>(tree.node(n).children.size());
  }
  CHECK(count_prefix(model.constraints, "c11_") == (N - 1) * u);
  CHECK(count_prefix(model.constraints, "c12_") == u * S);
  CHECK(count_prefix(model.constraints, "c13_") == u * S);
  CHECK(count_prefix(model.constraints, "c14_") == children * u);
  CHECK(count_prefix(model.constraints, "c15_") == u * S);
  CHECK(count_prefix(model.constraints, "c16_") == N);
  CHECK(count_prefix(model.constraints, "c17_") == 1 + depth1);
  CHECK(count_prefix(model.constraints, "c18_") == (N - 1 - depth1) * u * u);
  CHECK(count_prefix(model.constraints, "c19_") == 0);

  // only weighted nodes pay into the objective
  int weighted = 0;
  for (int n = 1; n < N; ++n)
    if (tree.node(n).weight > 0) ++weighted;
  CHECK(static_cast<int>(model.objective.size()) == weighted);
}

TEST_CASE("compressed corpora add the pinning rows") {
  TraceSet corpus = toy_corpus();
  for (auto& tr : corpus.traces) tr = compress(tr);
  const PrefixTree tree = build_prefix_tree(corpus);
  const int S = tree.observations().size();
  const MilpModel model = build_milp_model(tree, 3, true);
  CHECK(count_prefix(model.constraints, "c19_") == 3 * S * 2);

  CHECK_THROWS_AS(build_milp_model(tree, 3, false), ConfigError);
  CHECK_THROWS_AS(build_milp_model(build_prefix_tree(toy_corpus()), 3, true), ConfigError);
}

TEST_CASE("the lp text is stable and survives its own parser") {
  const PrefixTree tree = build_prefix_tree(toy_corpus());
  const MilpModel model = build_milp_model(tree, 2, false);
  const std::string text = write_lp(model, {{"seed", "1"}});
  CHECK(text == write_lp(model, {{"seed", "1"}}));
  CHECK(text.rfind("\\ rm-milp-model v1", 0) == 0);
  CHECK(text.find("Minimize") != std::string::npos);
  CHECK(text.find("Subject To") != std::string::npos);
  CHECK(text.find("Binaries") != std::string::npos);
  CHECK(text.find("End") != std::string::npos);

  const ParsedLp parsed = parse_lp(text);
  CHECK(parsed.var_names.size() == model.vars.size());
  REQUIRE(parsed.constraints.size() == model.constraints.size());
  CHECK(parsed.objective.size() == model.objective.size());

  for (std::size_t i = 0; i < parsed.constraints.size(); ++i) {
    const auto& got = parsed.constraints[i];
    const auto& want = model.constraints[i];
    CHECK(got.name == want.name);
    CHECK(got.sense == want.sense);
    CHECK(got.rhs == doctest::Approx(want.rhs).epsilon(1e-12));
    REQUIRE(got.terms.size() == want.terms.size());
    std::map<std::string, double> got_terms, want_terms;
    for (const auto& t : got.terms) got_terms[parsed.var_names[static_cast<std::size_t>(t.var)]] += t.coef;
    for (const auto& t : want.terms) want_terms[model.vars[static_cast<std::size_t>(t.var)].name] += t.coef;
    CHECK(got_terms.size() == want_terms.size());
    for (const auto& [name, coef] : want_terms) {
      REQUIRE(got_terms.count(name) == 1);
      CHECK(got_terms[name] == doctest::Approx(coef).epsilon(1e-12));
    }
  }
}

TEST_CASE("substituted machines score exactly like the evaluator") {
  Rng rng(606);
  for (int round = 0; round < 8; ++round) {
    const bool compressed = round % 2 == 1;
    const TraceSet corpus =
        testutil::random_corpus(rng, 2, 3, 2, 10, compressed);
    const PrefixTree tree = build_prefix_tree(corpus);
    const MilpModel model = build_milp_model(tree, 3, compressed);
    for (int k = 0; k < 100; ++k) {
      const RewardMachine rm = sample_random_rm(tree.observations(), 3, rng, compressed);
      const SubstitutionResult res = substitute_and_score(model, rm);
      CHECK(res.feasible);
      CHECK(res.violated.empty());
      CHECK(std::fabs(res.objective - evaluate(rm, tree).total) < 1e-6);
    }
  }
}

TEST_CASE("closure violators surface as violated pinning rows") {
  auto a = letters(2);
  TraceSet corpus = make_corpus(a, {{{"a"}, {"b"}, {"a"}, {"a"}}});
  for (auto& tr : corpus.traces) tr = compress(tr);
  const PrefixTree tree = build_prefix_tree(corpus);
  const MilpModel model = build_milp_model(tree, 2, true);

  RewardMachine swap;
  swap.num_states = 2;
  const HighLevelObs oa = obs_of(a, {"a"});
  swap.transitions[{0, oa}] = 1;
  swap.transitions[{1, oa}] = 0;

  const SubstitutionResult res = substitute_and_score(model, swap);
  CHECK(!res.feasible);
  CHECK(res.violated.rfind("c19_", 0) == 0);
}

TEST_CASE("scanning every assignment through the model reproduces the optimum") {
  auto a = letters(2);
  const TraceSet corpus = make_corpus(a, {{{"a"}, {"b"}, {"a"}, {"a"}, {"b"}},
                                          {{"b"}, {"b"}, {"a"}}});
  const PrefixTree tree = build_prefix_tree(corpus);
  SearchConfig cfg;
  cfg.u_max = 2;
  const double exact_cost = exact_enumerate(tree, cfg).second;

  const MilpModel model = build_milp_model(tree, 2, false);
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

TEST_CASE("variable budgets refuse oversized instances") {
  const PrefixTree tree = build_prefix_tree(toy_corpus());
  MilpOptions opts;
  opts.var_budget = 10;
  CHECK_THROWS_AS(build_milp_model(tree, 2, false, opts), BudgetError);
}

TEST_CASE("the uncapped size index covers every subset of propositions") {
  const PrefixTree tree = build_prefix_tree(toy_corpus());
  MilpOptions opts;
  opts.cap_m_to_sigma = false;
  const MilpModel model = build_milp_model(tree, 2, false, opts);
  CHECK(model.m_cap == 8);  // 2^3 propositions
}

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "rmlearn/agent.hpp"
#include "rmlearn/cp_model.hpp"
#include "rmlearn/env.hpp"
#include "rmlearn/errors.hpp"
#include "rmlearn/meta.hpp"
#include "rmlearn/milp_model.hpp"
#include "rmlearn/objective.hpp"
#include "rmlearn/prefix_tree.hpp"
#include "rmlearn/search.hpp"
#include "rmlearn/trace_io.hpp"

namespace {

using namespace rmlearn;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  os << text;
  if (!os) throw IoError("write failed for '" + path + "'");
}

std::vector<std::pair<std::string, std::string>> meta_vec(
    const std::map<std::string, std::string>& m) {
  return {m.begin(), m.end()};
}

// shared meta block: every artifact records tool version, settings and a
// hash of them
std::map<std::string, std::string> finish_meta(std::map<std::string, std::string> m) {
  m["tool"] = "rmlearn";
  m["version"] = kToolVersion;
  m["config_hash"] = config_hash(m);
  return m;
}

struct CollectArgs {
  std::string domain = "cookie";
  long long steps = 200000;
  std::uint64_t seed = 1;
  bool compress = false;
  std::string out;
};

struct LearnArgs {
  std::string traces;
  std::string method = "ts";
  int u_max = 10;
  long long t_max = 100;
  int tabu_size = 100;
  std::uint64_t seed = 1;
  bool compress = false;
  long long enum_budget = 2'000'000;
  double time_limit = 0.0;
  std::string out;
};

struct ExportArgs {
  std::string traces;
  std::string format = "milp";
  int u_max = 10;
  bool compress = false;
  long long var_budget = 500'000;
  bool uncapped_m = false;
  std::string out;
};

struct RlArgs {
  std::string domain = "cookie";
  std::uint64_t seed = 1;
  long long t_w = 200000;
  long long t_train = 200000;
  double epsilon = 0.1;
  double epsilon_start = 1.0;
  long long anneal_steps = 0;
  double gamma = 0.9;
  double alpha = 0.1;
  std::string method = "ts";
  int u_max = 10;
  long long t_max = 100;
  int tabu_size = 100;
  bool compress = false;
  bool qrm = false;
  long long relearn_budget = -1;
  bool inject_reference = false;
  long long log_every = 10000;
  std::string out;
};

// loads a corpus and reconciles its stored compression state with the
// --compress flag; returns the effective mode
bool load_corpus(const std::string& path, bool compress_flag, TraceSet* out) {
  *out = load_trace_set(path);
  bool file_compressed = !out->traces.empty() && out->traces.front().compressed;
  if (compress_flag && !file_compressed && !out->traces.empty()) {
    for (auto& tr : out->traces) tr = compress(tr);
    file_compressed = true;
  }
  return file_compressed || compress_flag;
}

SearchResult dispatch_search(const PrefixTree& tree, const SearchConfig& sc,
                             const std::string& method) {
  if (method == "ls") return local_search(tree, sc);
  if (method == "ts") return tabu_search(tree, sc);
  if (method == "exact") {
    auto [rm, cost] = exact_enumerate(tree, sc);
    SearchResult r;
    r.best_rm = std::move(rm);
    r.best_cost = cost;
    return r;
  }
  throw ConfigError("unknown method '" + method + "' (want ls, ts or exact)");
}

int run_collect(const CollectArgs& a) {
  const Domain dom = domain_from_name(a.domain);
  GridPomdp env(dom, Rng::mix(a.seed, 0));
  Rng policy(Rng::mix(a.seed, 1));
  TraceSet ts = collect_random_traces(env, a.steps, policy, a.compress);
  auto meta = finish_meta({{"command", "collect"},
                           {"domain", a.domain},
                           {"steps", std::to_string(a.steps)},
                           {"seed", std::to_string(a.seed)},
                           {"compress", a.compress ? "1" : "0"}});
  save_trace_set(a.out, ts, meta);
  long long steps = 0;
  for (const auto& tr : ts.traces) steps += static_cast<long long>(tr.rewards.size());
  std::cout << "traces " << ts.traces.size() << "\nsteps " << steps << "\nout "
            << a.out << "\n";
  return 0;
}

int run_learn(const LearnArgs& a) {
  TraceSet ts;
  const bool compressed = load_corpus(a.traces, a.compress, &ts);
  if (ts.traces.empty()) throw ConfigError("corpus '" + a.traces + "' has no traces");
  const PrefixTree tree = build_prefix_tree(ts);
  SearchConfig sc;
  sc.u_max = a.u_max;
  sc.t_max = a.t_max;
  sc.tabu_size = a.tabu_size;
  sc.seed = a.seed;
  sc.compressed_mode = compressed;
  sc.enum_budget = a.enum_budget;
  sc.wall_clock_limit_sec = a.time_limit;
  const SearchResult r = dispatch_search(tree, sc, a.method);

  auto meta = finish_meta({{"command", "learn"},
                           {"traces", a.traces},
                           {"method", a.method},
                           {"u_max", std::to_string(a.u_max)},
                           {"t_max", std::to_string(a.t_max)},
                           {"tabu_size", std::to_string(a.tabu_size)},
                           {"seed", std::to_string(a.seed)},
                           {"compressed", compressed ? "1" : "0"},
                           {"cost", fmt(r.best_cost)}});
  write_text_file(a.out + ".json", rm_to_json(r.best_rm, ts.alphabet, meta_vec(meta)));
  write_text_file(a.out + ".dot", to_dot(r.best_rm, ts.alphabet, meta_vec(meta)));
  {
    std::ofstream os(a.out + ".search.csv", std::ios::binary);
    if (!os) throw IoError("cannot open '" + a.out + ".search.csv' for writing");
    write_search_csv(os, r, meta_vec(meta));
  }
  std::cout << "cost " << fmt(r.best_cost) << "\nstates " << r.best_rm.num_states
            << "\niterations " << r.iterations << "\nrestarts " << r.restarts
            << "\n";
  return 0;
}

int run_export(const ExportArgs& a) {
  TraceSet ts;
  const bool compressed = load_corpus(a.traces, a.compress, &ts);
  if (ts.traces.empty()) throw ConfigError("corpus '" + a.traces + "' has no traces");
  const PrefixTree tree = build_prefix_tree(ts);
  auto meta = finish_meta({{"command", "export"},
                           {"traces", a.traces},
                           {"format", a.format},
                           {"u_max", std::to_string(a.u_max)},
                           {"compressed", compressed ? "1" : "0"}});
  if (a.format == "milp") {
    MilpOptions opt;
    opt.cap_m_to_sigma = !a.uncapped_m;
    opt.var_budget = a.var_budget;
    const MilpModel model = build_milp_model(tree, a.u_max, compressed, opt);
    write_text_file(a.out, write_lp(model, meta_vec(meta)));
    std::cout << "format milp\nvariables " << model.vars.size() << "\nconstraints "
              << model.constraints.size() << "\nout " << a.out << "\n";
  } else if (a.format == "cp") {
    const CpModel model = build_cp_model(tree, a.u_max, compressed);
    write_text_file(a.out, write_cp_model(model, meta_vec(meta)));
    std::cout << "format cp\nnodes " << tree.num_nodes() << "\nout " << a.out << "\n";
  } else {
    throw ConfigError("unknown export format '" + a.format + "' (want milp or cp)");
  }
  return 0;
}

int run_rl(const RlArgs& a) {
  const Domain dom = domain_from_name(a.domain);
  LoopConfig lc;
  lc.seed = a.seed;
  lc.t_w = a.t_w;
  lc.t_train = a.t_train;
  lc.epsilon = a.epsilon;
  lc.epsilon_start = a.epsilon_start;
  lc.anneal_steps = a.anneal_steps;
  lc.gamma = a.gamma;
  lc.alpha = a.alpha;
  lc.method = a.method;
  lc.search.u_max = a.u_max;
  lc.search.t_max = a.t_max;
  lc.search.tabu_size = a.tabu_size;
  lc.search.compressed_mode = a.compress;
  lc.qrm_enabled = a.qrm;
  lc.relearn_budget = a.relearn_budget;
  lc.inject_reference = a.inject_reference;
  lc.log_every = a.log_every;
  const JointLoopResult res = run_joint_loop(dom, lc);

  auto meta = finish_meta({{"command", "rl"},
                           {"domain", a.domain},
                           {"seed", std::to_string(a.seed)},
                           {"t_w", std::to_string(a.t_w)},
                           {"t_train", std::to_string(a.t_train)},
                           {"epsilon", fmt(a.epsilon)},
                           {"epsilon_start", fmt(a.epsilon_start)},
                           {"anneal_steps", std::to_string(a.anneal_steps)},
                           {"gamma", fmt(a.gamma)},
                           {"alpha", fmt(a.alpha)},
                           {"method", a.method},
                           {"u_max", std::to_string(a.u_max)},
                           {"compressed", a.compress ? "1" : "0"},
                           {"qrm", a.qrm ? "1" : "0"},
                           {"inject_reference", a.inject_reference ? "1" : "0"}});
  {
    std::ofstream os(a.out + ".rewards.csv", std::ios::binary);
    if (!os) throw IoError("cannot open '" + a.out + ".rewards.csv' for writing");
    write_reward_log_csv(os, res.reward_log, meta);
  }
  write_text_file(a.out + ".rm.json",
                  rm_to_json(res.rm, res.corpus.alphabet, meta_vec(meta)));
  write_text_file(a.out + ".rm.dot",
                  to_dot(res.rm, res.corpus.alphabet, meta_vec(meta)));
  for (const auto& w : res.warnings) std::cerr << "warning: " << w << "\n";
  long long adopted = 0;
  for (const auto& ev : res.relearn_events) adopted += ev.adopted ? 1 : 0;
  std::cout << "total_reward " << fmt(res.total_reward) << "\nepisodes "
            << res.episodes << "\nrelearns " << res.relearn_events.size()
            << "\nadopted " << adopted << "\nstates " << res.rm.num_states
            << "\ncost " << fmt(res.rm_cost) << "\nout " << a.out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"learn reward machines from traces and use them as RL memory"};
  app.require_subcommand(1);
  // config files carry one [section] per subcommand; unmatched options inside
  // a subcommand bubble up so --config may follow the subcommand name
  app.fallthrough();
  app.set_config("--config", "",
                 "read options from an INI/TOML file with one [section] per subcommand");
  app.allow_config_extras(CLI::config_extras_mode::error);

  CollectArgs ca;
  auto* collect = app.add_subcommand("collect", "record random-policy traces");
  collect->add_option("--domain", ca.domain, "cookie | symbol | 2-keys | gravity");
  collect->add_option("--steps", ca.steps)->check(CLI::NonNegativeNumber);
  collect->add_option("--seed", ca.seed);
  collect->add_flag("--compress", ca.compress, "collapse repeated observations");
  collect->add_option("--out", ca.out)->required();

  LearnArgs la;
  auto* learn = app.add_subcommand("learn", "fit a reward machine to a corpus");
  learn->add_option("--traces", la.traces)->required();
  learn->add_option("--method", la.method, "ls | ts | exact");
  learn->add_option("--u-max", la.u_max)->check(CLI::PositiveNumber);
  learn->add_option("--t-max", la.t_max)->check(CLI::PositiveNumber);
  learn->add_option("--tabu-size", la.tabu_size)->check(CLI::PositiveNumber);
  learn->add_option("--seed", la.seed);
  learn->add_flag("--compress", la.compress);
  learn->add_option("--enum-budget", la.enum_budget)->check(CLI::PositiveNumber);
  learn->add_option("--time-limit", la.time_limit, "wall clock seconds, 0 = off");
  learn->add_option("--out", la.out, "output prefix (.json/.dot/.search.csv)")->required();

  ExportArgs ea;
  auto* exp = app.add_subcommand("export", "emit a MILP or CP encoding of a corpus");
  exp->add_option("--traces", ea.traces)->required();
  exp->add_option("--format", ea.format, "milp | cp");
  exp->add_option("--u-max", ea.u_max)->check(CLI::PositiveNumber);
  exp->add_flag("--compress", ea.compress);
  exp->add_option("--var-budget", ea.var_budget)->check(CLI::PositiveNumber);
  exp->add_flag("--uncapped-m", ea.uncapped_m,
                "size prediction-set counters by 2^|propositions|");
  exp->add_option("--out", ea.out)->required();

  RlArgs ra;
  auto* rl = app.add_subcommand("rl", "learn a machine and a policy together");
  rl->add_option("--domain", ra.domain, "cookie | symbol | 2-keys | gravity");
  rl->add_option("--seed", ra.seed);
  rl->add_option("--t-w", ra.t_w, "warmup steps")->check(CLI::NonNegativeNumber);
  rl->add_option("--t-train", ra.t_train)->check(CLI::NonNegativeNumber);
  rl->add_option("--epsilon", ra.epsilon)->check(CLI::Range(0.0, 1.0));
  rl->add_option("--epsilon-start", ra.epsilon_start,
                 "exploration rate at step 0 when annealing")
      ->check(CLI::Range(0.0, 1.0));
  rl->add_option("--anneal-steps", ra.anneal_steps,
                 "linearly anneal epsilon-start down to epsilon over this many steps")
      ->check(CLI::NonNegativeNumber);
  rl->add_option("--gamma", ra.gamma);
  rl->add_option("--alpha", ra.alpha);
  rl->add_option("--method", ra.method, "ls | ts | exact");
  rl->add_option("--u-max", ra.u_max)->check(CLI::PositiveNumber);
  rl->add_option("--t-max", ra.t_max)->check(CLI::PositiveNumber);
  rl->add_option("--tabu-size", ra.tabu_size)->check(CLI::PositiveNumber);
  rl->add_flag("--compress", ra.compress);
  rl->add_flag("--qrm", ra.qrm, "counterfactual updates across machine states");
  rl->add_option("--relearn-budget", ra.relearn_budget, "-1 = unlimited");
  rl->add_flag("--inject-reference", ra.inject_reference,
               "use the hand-built machine for the domain and skip searching");
  rl->add_option("--log-every", ra.log_every)->check(CLI::PositiveNumber);
  rl->add_option("--out", ra.out, "output prefix (.rewards.csv/.rm.json/.rm.dot)")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (collect->parsed()) return run_collect(ca);
    if (learn->parsed()) return run_learn(la);
    if (exp->parsed()) return run_export(ea);
    if (rl->parsed()) return run_rl(ra);
    std::cerr << "no subcommand given\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const BudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

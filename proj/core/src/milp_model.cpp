#include "rmlearn/milp_model.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "model_common.hpp"
#include "rmlearn/errors.hpp"

namespace rmlearn {

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

constexpr double kTol = 1e-9;

}  // namespace

int MilpModel::x_index(int node, int u) const { return node * u_max + u; }

int MilpModel::d_index(int u, int s, int v) const {
  int base = tree.num_nodes() * u_max;
  int S = tree.observations().size();
  return base + (u * S + s) * u_max + v;
}

int MilpModel::p_index(int u, int s, int s2) const {
  int S = tree.observations().size();
  int base = tree.num_nodes() * u_max + u_max * S * u_max;
  return base + (u * S + s) * S + s2;
}

int MilpModel::y_index(int u, int s, int m) const {
  int S = tree.observations().size();
  int base = tree.num_nodes() * u_max + u_max * S * u_max + u_max * S * S;
  return base + (u * S + s) * m_cap + (m - 1);
}

int MilpModel::z_index(int node) const {
  int S = tree.observations().size();
  int base = tree.num_nodes() * u_max + u_max * S * u_max + u_max * S * S +
             u_max * S * m_cap;
  return base + (node - 1);
}

MilpModel build_milp_model(const PrefixTree& tree, int u_max, bool compressed,
                           const MilpOptions& options) {
  if (u_max < 1) throw ConfigError("u_max must be at least 1");
  if (compressed != tree.compressed())
    throw ConfigError("compressed flag does not match the corpus compression");
  const int N = tree.num_nodes();
  const int S = tree.observations().size();
  const int P = tree.alphabet().size();
  if (S == 0) throw ConfigError("cannot build a model from an empty corpus");

  const double m_cap_d = options.cap_m_to_sigma ? static_cast<double>(S) : std::exp2(P);
  const double var_count = static_cast<double>(N) * u_max +
                           static_cast<double>(u_max) * S * u_max +
                           static_cast<double>(u_max) * S * S +
                           static_cast<double>(u_max) * S * m_cap_d +
                           static_cast<double>(N - 1);
  if (!(var_count <= static_cast<double>(options.var_budget))) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "model needs %.6g variables, budget is %lld",
                  var_count, options.var_budget);
    throw BudgetError(buf);
  }

  MilpModel m;
  m.tree = tree;
  m.u_max = u_max;
  m.compressed = compressed;
  m.m_cap = static_cast<int>(m_cap_d);
  m.big_m = static_cast<double>(P) * std::log(2.0);

  char nb[96];
  for (int n = 0; n < N; ++n)
    for (int u = 0; u < u_max; ++u) {
      std::snprintf(nb, sizeof nb, "x_n%d_u%d", n, u);
      m.vars.push_back({nb, true});
    }
  for (int u = 0; u < u_max; ++u)
    for (int s = 0; s < S; ++s)
      for (int v = 0; v < u_max; ++v) {
        std::snprintf(nb, sizeof nb, "d_u%d_s%d_u%d", u, s, v);
        m.vars.push_back({nb, true});
      }
  for (int u = 0; u < u_max; ++u)
    for (int s = 0; s < S; ++s)
      for (int s2 = 0; s2 < S; ++s2) {
        std::snprintf(nb, sizeof nb, "p_u%d_s%d_s%d", u, s, s2);
        m.vars.push_back({nb, true});
      }
  for (int u = 0; u < u_max; ++u)
    for (int s = 0; s < S; ++s)
      for (int k = 1; k <= m.m_cap; ++k) {
        std::snprintf(nb, sizeof nb, "y_u%d_s%d_m%d", u, s, k);
        m.vars.push_back({nb, true});
      }
  for (int n = 1; n < N; ++n) {
    std::snprintf(nb, sizeof nb, "z_n%d", n);
    m.vars.push_back({nb, false});
  }

  for (int n = 1; n < N; ++n) {
    long long w = tree.node(n).weight;
    if (w > 0) m.objective.push_back({static_cast<double>(w), m.z_index(n)});
  }

  // set size lower bound on the node cost, active only at the node's state
  for (int n = 1; n < N; ++n) {
    int s = tree.node(n).obs;
    for (int u = 0; u < u_max; ++u) {
      MilpConstraint c;
      std::snprintf(nb, sizeof nb, "c11_n%d_u%d", n, u);
      c.name = nb;
      c.terms.push_back({1.0, m.z_index(n)});
      for (int k = 2; k <= m.m_cap; ++k)
        c.terms.push_back({-std::log(static_cast<double>(k)), m.y_index(u, s, k)});
      if (m.big_m != 0.0) c.terms.push_back({-m.big_m, m.x_index(n, u)});
      c.sense = 'G';
      c.rhs = -m.big_m;
      m.constraints.push_back(std::move(c));
    }
  }
  // exactly one set size
  for (int u = 0; u < u_max; ++u)
    for (int s = 0; s < S; ++s) {
      MilpConstraint c;
      std::snprintf(nb, sizeof nb, "c12_u%d_s%d", u, s);
      c.name = nb;
      for (int k = 1; k <= m.m_cap; ++k) c.terms.push_back({1.0, m.y_index(u, s, k)});
      c.sense = 'E';
      c.rhs = 1.0;
      m.constraints.push_back(std::move(c));
    }
  // the chosen size counts the successor indicators
  for (int u = 0; u < u_max; ++u)
    for (int s = 0; s < S; ++s) {
      MilpConstraint c;
      std::snprintf(nb, sizeof nb, "c13_u%d_s%d", u, s);
      c.name = nb;
      for (int s2 = 0; s2 < S; ++s2) c.terms.push_back({1.0, m.p_index(u, s, s2)});
      for (int k = 1; k <= m.m_cap; ++k)
        c.terms.push_back({-static_cast<double>(k), m.y_index(u, s, k)});
      c.sense = 'E';
      c.rhs = 0.0;
      m.constraints.push_back(std::move(c));
    }
  // witnessed successors force their indicator at the witnessing state
  for (int u = 0; u < u_max; ++u)
    for (int n = 1; n < N; ++n) {
      const auto& node = tree.node(n);
      if (node.children.empty()) continue;
      for (const auto& [s2, child] : node.children) {
        (void)child;
        MilpConstraint c;
        std::snprintf(nb, sizeof nb, "c14_u%d_n%d_s%d", u, n, s2);
        c.name = nb;
        c.terms.push_back({1.0, m.p_index(u, node.obs, s2)});
        c.terms.push_back({-1.0, m.x_index(n, u)});
        c.sense = 'G';
        c.rhs = 0.0;
        m.constraints.push_back(std::move(c));
      }
    }
  // the transition map is a function
  for (int u = 0; u < u_max; ++u)
    for (int s = 0; s < S; ++s) {
      MilpConstraint c;
      std::snprintf(nb, sizeof nb, "c15_u%d_s%d", u, s);
      c.name = nb;
      for (int v = 0; v < u_max; ++v) c.terms.push_back({1.0, m.d_index(u, s, v)});
      c.sense = 'E';
      c.rhs = 1.0;
      m.constraints.push_back(std::move(c));
    }
  // each node sits in exactly one state
  for (int n = 0; n < N; ++n) {
    MilpConstraint c;
    std::snprintf(nb, sizeof nb, "c16_n%d", n);
    c.name = nb;
    for (int u = 0; u < u_max; ++u) c.terms.push_back({1.0, m.x_index(n, u)});
    c.sense = 'E';
    c.rhs = 1.0;
    m.constraints.push_back(std::move(c));
  }
  // the root and its children are pinned to the initial state: a trace's
  // first observation never drives a transition
  {
    MilpConstraint c;
    c.name = "c17_root";
    c.terms.push_back({1.0, m.x_index(0, 0)});
    c.sense = 'E';
    c.rhs = 1.0;
    m.constraints.push_back(std::move(c));
  }
  for (int n = 1; n < N; ++n) {
    if (tree.node(n).parent != 0) continue;
    MilpConstraint c;
    std::snprintf(nb, sizeof nb, "c17_n%d", n);
    c.name = nb;
    c.terms.push_back({1.0, m.x_index(n, 0)});
    c.sense = 'E';
    c.rhs = 1.0;
    m.constraints.push_back(std::move(c));
  }
  // deeper nodes follow the transition picked for (parent state, edge obs)
  for (int n = 1; n < N; ++n) {
    const auto& node = tree.node(n);
    if (node.parent == 0) continue;
    for (int u = 0; u < u_max; ++u)
      for (int v = 0; v < u_max; ++v) {
        MilpConstraint c;
        std::snprintf(nb, sizeof nb, "c18_n%d_u%d_u%d", n, u, v);
        c.name = nb;
        c.terms.push_back({1.0, m.x_index(node.parent, u)});
        c.terms.push_back({1.0, m.x_index(n, v)});
        c.terms.push_back({-1.0, m.d_index(u, node.obs, v)});
        c.sense = 'L';
        c.rhs = 1.0;
        m.constraints.push_back(std::move(c));
      }
  }
  // self loop closure for compressed corpora
  if (compressed) {
    for (int u = 0; u < u_max; ++u)
      for (int s = 0; s < S; ++s)
        for (int v = 0; v < u_max; ++v) {
          if (u == v) continue;
          MilpConstraint c;
          std::snprintf(nb, sizeof nb, "c19_u%d_s%d_u%d", u, s, v);
          c.name = nb;
          c.terms.push_back({1.0, m.d_index(u, s, v)});
          c.terms.push_back({-1.0, m.d_index(v, s, v)});
          c.sense = 'L';
          c.rhs = 0.0;
          m.constraints.push_back(std::move(c));
        }
  }
  return m;
}

std::string write_lp(const MilpModel& model,
                     const std::vector<std::pair<std::string, std::string>>& meta) {
  std::ostringstream os;
  os << "\\ rm-milp-model v1\n";
  for (const auto& [k, v] : meta) os << "\\ " << k << ": " << v << "\n";
  os << "\\ u_max: " << model.u_max << "\n";
  os << "\\ nodes: " << model.tree.num_nodes() << "\n";
  os << "\\ observations: " << model.tree.observations().size() << "\n";
  os << "\\ compressed: " << (model.compressed ? 1 : 0) << "\n";
  os << "\\ m_cap: " << model.m_cap << "\n";
  os << "\\ big_m: " << num(model.big_m) << "\n";
  for (int s = 0; s < model.tree.observations().size(); ++s)
    os << "\\ s" << s << " = "
       << model.tree.observations().obs(s).to_string(model.tree.alphabet()) << "\n";

  auto write_terms = [&](const std::vector<LinearTerm>& terms) {
    int on_line = 0;
    for (const auto& t : terms) {
      if (on_line == 8) {
        os << "\n   ";
        on_line = 0;
      }
      os << (t.coef < 0 ? " - " : " + ") << num(std::abs(t.coef)) << " "
         << model.vars[static_cast<std::size_t>(t.var)].name;
      ++on_line;
    }
  };

  os << "Minimize\n obj:";
  write_terms(model.objective);
  os << "\nSubject To\n";
  for (const auto& c : model.constraints) {
    os << " " << c.name << ":";
    write_terms(c.terms);
    os << (c.sense == 'L' ? " <= " : c.sense == 'G' ? " >= " : " = ") << num(c.rhs) << "\n";
  }
  os << "Binaries\n";
  int on_line = 0;
  for (const auto& v : model.vars) {
    if (!v.binary) continue;
    if (on_line == 10) {
      os << "\n";
      on_line = 0;
    }
    os << " " << v.name;
    ++on_line;
  }
  os << "\nEnd\n";
  return os.str();
}

namespace {

struct Tokenizer {
  std::vector<std::string> tokens;
  std::size_t pos = 0;
  bool done() const { return pos >= tokens.size(); }
  const std::string& peek() const { return tokens[pos]; }
  std::string take() { return tokens[pos++]; }
};

bool is_number(const std::string& t) {
  return !t.empty() && (std::isdigit(static_cast<unsigned char>(t[0])) || t[0] == '.' ||
                        ((t[0] == '-' || t[0] == '+') && t.size() > 1));
}

}  // namespace

ParsedLp parse_lp(const std::string& text) {
  ParsedLp out;
  auto var_id = [&](const std::string& name) {
    auto it = out.var_ids.find(name);
    if (it != out.var_ids.end()) return it->second;
    int id = static_cast<int>(out.var_names.size());
    out.var_names.push_back(name);
    out.var_ids[name] = id;
    return id;
  };

  enum class Section { none, objective, constraints, bounds, binaries, generals };
  Section section = Section::none;

  // strip comments, join into a token stream per section switches
  std::istringstream is(text);
  std::string line;
  std::vector<std::string> raw;
  while (std::getline(is, line)) {
    if (!line.empty() && line[0] == '\\') continue;
    raw.push_back(line);
  }

  MilpConstraint* current = nullptr;
  std::vector<LinearTerm>* terms = nullptr;
  double sign = 1.0;
  bool expect_rhs = false;

  auto flush_sense = [&](char sense) {
    if (!current) throw ConfigError("lp parse: sense outside a constraint");
    current->sense = sense;
    expect_rhs = true;
  };

  for (const auto& l : raw) {
    std::istringstream ls(l);
    std::string tok;
    while (ls >> tok) {
      std::string low = tok;
      for (auto& ch : low) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
      if (low == "minimize" || low == "minimise") {
        section = Section::objective;
        terms = &out.objective;
        continue;
      }
      if (low == "subject") {
        section = Section::constraints;
        terms = nullptr;
        continue;
      }
      if (low == "to" && section == Section::constraints) continue;
      if (low == "bounds") {
        section = Section::bounds;
        continue;
      }
      if (low == "binaries" || low == "binary") {
        section = Section::binaries;
        continue;
      }
      if (low == "generals" || low == "general") {
        section = Section::generals;
        continue;
      }
      if (low == "end") {
        section = Section::none;
        continue;
      }

      switch (section) {
        case Section::objective:
        case Section::constraints: {
          if (!tok.empty() && tok.back() == ':') {
            std::string name = tok.substr(0, tok.size() - 1);
            if (section == Section::constraints) {
              out.constraints.push_back({});
              current = &out.constraints.back();
              current->name = name;
              terms = &current->terms;
              expect_rhs = false;
            }
            sign = 1.0;
            continue;
          }
          if (tok == "+") {
            sign = 1.0;
            continue;
          }
          if (tok == "-") {
            sign = -1.0;
            continue;
          }
          if (tok == "<=" || tok == "=<") {
            flush_sense('L');
            continue;
          }
          if (tok == ">=" || tok == "=>") {
            flush_sense('G');
            continue;
          }
          if (tok == "=") {
            flush_sense('E');
            continue;
          }
          if (expect_rhs) {
            current->rhs = std::stod(tok);
            expect_rhs = false;
            current = nullptr;
            terms = nullptr;
            continue;
          }
          if (is_number(tok)) {
            if (!terms) throw ConfigError("lp parse: coefficient outside any section");
            double coef = sign * std::stod(tok);
            std::string var;
            if (!(ls >> var)) throw ConfigError("lp parse: coefficient without a variable");
            terms->push_back({coef, var_id(var)});
            sign = 1.0;
            continue;
          }
          // bare variable, implicit coefficient 1
          if (!terms) throw ConfigError("lp parse: variable outside any section");
          terms->push_back({sign, var_id(tok)});
          sign = 1.0;
          break;
        }
        case Section::binaries:
        case Section::generals:
          var_id(tok);
          break;
        case Section::bounds:
        case Section::none:
          break;
      }
    }
  }
  return out;
}

SubstitutionResult substitute_and_score(const MilpModel& model, const RewardMachine& rm) {
  const PrefixTree& tree = model.tree;
  const int S = tree.observations().size();
  auto table = detail::padded_table(rm, tree.observations(), model.u_max);
  auto states = detail::node_states(tree, table);
  auto sets = detail::pair_sets(tree, states, model.u_max);

  std::vector<double> val(model.vars.size(), 0.0);
  for (int n = 0; n < tree.num_nodes(); ++n)
    val[static_cast<std::size_t>(model.x_index(n, states[static_cast<std::size_t>(n)]))] = 1.0;
  for (int u = 0; u < model.u_max; ++u)
    for (int s = 0; s < S; ++s)
      val[static_cast<std::size_t>(model.d_index(u, s, table.step(u, s)))] = 1.0;
  for (int u = 0; u < model.u_max; ++u)
    for (int s = 0; s < S; ++s) {
      const auto& set = sets[static_cast<std::size_t>(u) * S + s];
      if (set.empty()) {
        // unwitnessed pair: one arbitrary successor keeps the counting row
        // consistent with the mandatory set size of one
        val[static_cast<std::size_t>(model.p_index(u, s, 0))] = 1.0;
      } else {
        for (int s2 : set) val[static_cast<std::size_t>(model.p_index(u, s, s2))] = 1.0;
      }
      int m_eff = set.empty() ? 1 : static_cast<int>(set.size());
      val[static_cast<std::size_t>(model.y_index(u, s, m_eff))] = 1.0;
    }
  for (int n = 1; n < tree.num_nodes(); ++n) {
    const auto& set = sets[static_cast<std::size_t>(states[static_cast<std::size_t>(n)]) * S +
                           tree.node(n).obs];
    double card = set.empty() ? 1.0 : static_cast<double>(set.size());
    val[static_cast<std::size_t>(model.z_index(n))] = std::log(card);
  }

  SubstitutionResult res;
  for (const auto& c : model.constraints) {
    double lhs = 0.0;
    for (const auto& t : c.terms) lhs += t.coef * val[static_cast<std::size_t>(t.var)];
    bool ok = c.sense == 'L'   ? lhs <= c.rhs + kTol
              : c.sense == 'G' ? lhs >= c.rhs - kTol
                               : std::abs(lhs - c.rhs) <= kTol;
    if (!ok) {
      res.feasible = false;
      res.violated = c.name;
      break;
    }
  }
  for (const auto& t : model.objective)
    res.objective += t.coef * val[static_cast<std::size_t>(t.var)];
  return res;
}

}  // namespace rmlearn

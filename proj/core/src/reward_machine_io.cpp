#include <cstdio>
#include <set>
#include <sstream>

#include "json.hpp"
#include "rmlearn/errors.hpp"
#include "rmlearn/reward_machine.hpp"

namespace rmlearn {

namespace {

std::string short_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

std::string to_dot(const RewardMachine& rm, const PropositionAlphabet& alphabet,
                   const std::vector<std::pair<std::string, std::string>>& meta) {
  std::ostringstream os;
  os << "digraph reward_machine {\n";
  for (const auto& [k, v] : meta) os << "  // " << k << ": " << v << "\n";
  os << "  rankdir=LR;\n";
  os << "  __start [shape=point];\n";
  os << "  __start -> u" << rm.initial << ";\n";
  for (int u = 0; u < rm.num_states; ++u)
    os << "  u" << u << " [shape=circle];\n";
  // reward-only entries still draw their (self loop) edge
  std::set<RewardMachine::Key> keys;
  for (const auto& [key, target] : rm.transitions) keys.insert(key);
  for (const auto& [key, value] : rm.rewards) keys.insert(key);
  for (const auto& key : keys) {
    std::string label;
    for (const auto& n : key.second.names(alphabet)) {
      if (!label.empty()) label += ",";
      label += n;
    }
    if (label.empty()) label = "{}";
    double r = edge_reward(rm, key.first, key.second);
    os << "  u" << key.first << " -> u" << transition(rm, key.first, key.second)
       << " [label=\"" << label << " / " << short_num(r) << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

std::string rm_to_json(const RewardMachine& rm, const PropositionAlphabet& alphabet,
                       const std::vector<std::pair<std::string, std::string>>& meta) {
  nlohmann::ordered_json doc;
  doc["format"] = "reward-machine-v1";
  if (!meta.empty()) {
    nlohmann::ordered_json m;
    for (const auto& [k, v] : meta) m[k] = v;
    doc["meta"] = m;
  }
  doc["propositions"] = alphabet.names();
  doc["num_states"] = rm.num_states;
  doc["initial"] = rm.initial;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& [key, target] : rm.transitions) {
    nlohmann::ordered_json e;
    e["from"] = key.first;
    e["obs"] = key.second.names(alphabet);
    e["to"] = target;
    arr.push_back(e);
  }
  doc["transitions"] = arr;
  auto rew = nlohmann::ordered_json::array();
  for (const auto& [key, value] : rm.rewards) {
    nlohmann::ordered_json e;
    e["from"] = key.first;
    e["obs"] = key.second.names(alphabet);
    e["value"] = value;
    rew.push_back(e);
  }
  doc["rewards"] = rew;
  return doc.dump(2) + "\n";
}

RewardMachine rm_from_json(const std::string& text, PropositionAlphabet* alphabet_out) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid reward machine JSON: ") + e.what());
  }
  try {
    if (doc.at("format") != "reward-machine-v1")
      throw ConfigError("unsupported reward machine format");
    PropositionAlphabet alphabet(doc.at("propositions").get<std::vector<std::string>>());
    RewardMachine rm;
    rm.num_states = doc.at("num_states").get<int>();
    rm.initial = doc.at("initial").get<int>();
    if (rm.num_states < 1 || rm.initial < 0 || rm.initial >= rm.num_states)
      throw ConfigError("invalid reward machine state count or initial state");
    for (const auto& e : doc.at("transitions")) {
      auto obs = HighLevelObs::from_names(alphabet, e.at("obs").get<std::vector<std::string>>());
      int from = e.at("from").get<int>();
      int to = e.at("to").get<int>();
      if (from < 0 || from >= rm.num_states || to < 0 || to >= rm.num_states)
        throw ConfigError("reward machine transition state out of range");
      rm.transitions[{from, obs}] = to;
    }
    for (const auto& e : doc.at("rewards")) {
      auto obs = HighLevelObs::from_names(alphabet, e.at("obs").get<std::vector<std::string>>());
      rm.rewards[{e.at("from").get<int>(), obs}] = e.at("value").get<double>();
    }
    if (alphabet_out) *alphabet_out = alphabet;
    return rm;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid reward machine JSON: ") + e.what());
  }
}

}  // namespace rmlearn

#include "rmlearn/prediction.hpp"

namespace rmlearn {

PredictionSets prediction_sets(const RewardMachine& rm, const TraceSet& corpus) {
  PredictionSets out;
  for (const auto& tr : corpus.traces) {
    auto states = run_trace(rm, tr);
    for (std::size_t t = 0; t + 1 < tr.obs.size(); ++t) {
      PredictionSets::Key key{states[t], tr.obs[t]};
      out.entries[key].insert(tr.obs[t + 1]);
      out.counts[key] += 1;
    }
  }
  return out;
}

std::map<RewardMachine::Key, double> estimate_delta_r(const RewardMachine& rm,
                                                      const TraceSet& corpus,
                                                      double eps) {
  std::map<RewardMachine::Key, double> numer;
  std::map<RewardMachine::Key, long long> denom;
  for (const auto& tr : corpus.traces) {
    auto states = run_trace(rm, tr);
    for (std::size_t t = 0; t + 1 < tr.obs.size(); ++t) {
      // the edge is identified by the state before the step and the
      // observation that drives it
      RewardMachine::Key key{states[t], tr.obs[t + 1]};
      numer[key] += tr.rewards[t];
      denom[key] += 1;
    }
  }
  std::map<RewardMachine::Key, double> out;
  for (const auto& [key, total] : numer)
    out[key] = total / (static_cast<double>(denom[key]) + eps);
  return out;
}

}  // namespace rmlearn

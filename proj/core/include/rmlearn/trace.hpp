#pragma once

#include <utility>
#include <vector>

#include "rmlearn/alphabet.hpp"

namespace rmlearn {

// One recorded environment step: the action taken from the previous
// observation, the reward received, and the resulting observation.
template <class Obs>
struct RawStep {
  Obs obs;
  int action = 0;
  double reward = 0.0;
};

// High-level trace: obs[0] is the label of the initial observation and
// rewards[t] arrives together with obs[t+1].
struct LabelledTrace {
  std::vector<HighLevelObs> obs;
  std::vector<double> rewards;
  bool compressed = false;

  bool operator==(const LabelledTrace& other) const = default;
};

struct TraceSet {
  PropositionAlphabet alphabet;
  std::vector<LabelledTrace> traces;
};

// Applies a labelling function to a raw rollout. init(o0) labels the initial
// observation, step(prev, action, next) labels each transition.
template <class Obs, class InitLabel, class StepLabel>
LabelledTrace label_trace(const Obs& o0, const std::vector<RawStep<Obs>>& steps,
                          InitLabel&& init, StepLabel&& step) {
  LabelledTrace out;
  out.obs.reserve(steps.size() + 1);
  out.rewards.reserve(steps.size());
  out.obs.push_back(init(o0));
  const Obs* prev = &o0;
  for (const auto& s : steps) {
    out.obs.push_back(step(*prev, s.action, s.obs));
    out.rewards.push_back(s.reward);
    prev = &s.obs;
  }
  return out;
}

// Collapses each maximal run of equal observations to a single step, keeping
// the first observation verbatim; rewards inside a collapsed run are summed
// onto the surviving step. Total reward is conserved and the result is a
// fixed point of another compression pass.
LabelledTrace compress(const LabelledTrace& trace);

}  // namespace rmlearn

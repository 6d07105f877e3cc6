#include "rmlearn/trace.hpp"

#include <stdexcept>

namespace rmlearn {

LabelledTrace compress(const LabelledTrace& trace) {
  if (trace.compressed) throw std::invalid_argument("trace is already compressed");
  if (trace.obs.empty()) throw std::invalid_argument("trace has no observations");
  if (trace.rewards.size() + 1 != trace.obs.size())
    throw std::invalid_argument("trace rewards misaligned with observations");

  LabelledTrace out;
  out.compressed = true;
  out.obs.push_back(trace.obs[0]);
  for (std::size_t t = 1; t < trace.obs.size(); ++t) {
    // runs are only merged from the second kept step onward, so a repeated
    // initial observation survives as a pair
    if (out.obs.size() >= 2 && trace.obs[t] == out.obs.back()) {
      out.rewards.back() += trace.rewards[t - 1];
    } else {
      out.obs.push_back(trace.obs[t]);
      out.rewards.push_back(trace.rewards[t - 1]);
    }
  }
  return out;
}

}  // namespace rmlearn

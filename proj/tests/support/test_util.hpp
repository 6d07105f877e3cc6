#pragma once

#include <string>
#include <vector>

#include "rmlearn/alphabet.hpp"
#include "rmlearn/reward_machine.hpp"
#include "rmlearn/rng.hpp"
#include "rmlearn/trace.hpp"

namespace rmlearn::testutil {

PropositionAlphabet letters(int n);  // "a", "b", "c", ...

HighLevelObs obs_of(const PropositionAlphabet& a,
                    const std::vector<std::string>& names);

// one observation per entry; rewards default to zero
LabelledTrace make_trace(const PropositionAlphabet& a,
                         const std::vector<std::vector<std::string>>& obs,
                         std::vector<double> rewards = {});

TraceSet make_corpus(const PropositionAlphabet& a,
                     const std::vector<std::vector<std::vector<std::string>>>& traces);

// Direct trace-walk objective: runs the machine over every trace and sums
// ln |N| using corpus-wide prediction sets. Independent of the prefix-tree
// evaluator, so the two can cross-check each other.
double flat_cost(const RewardMachine& rm, const TraceSet& corpus);

// Random corpus: num_traces traces with [min_len, max_len] observations
// each, every observation a uniform subset of an alphabet_size-letter
// alphabet, rewards uniform in {0, 1}. Compressed on request.
TraceSet random_corpus(Rng& rng, int alphabet_size, int num_traces, int min_len,
                       int max_len, bool compressed);

}  // namespace rmlearn::testutil

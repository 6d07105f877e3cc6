#pragma once

#include "rmlearn/alphabet.hpp"
#include "rmlearn/reward_machine.hpp"

namespace rmlearn {

// Hand-built machines used as ground-truth fixtures and injection targets.

// Four states tracking what is known about the cookie:
//   u0 no cookie exists yet, u1 cookie somewhere unknown,
//   u2 cookie in the green room, u3 cookie in the blue room.
// Pressing the button ({R3,BP}) always leads to u1; seeing one room decides
// between u2/u3; eating ({R0,CE} / {R2,CE}, reward 1) returns to u0.
RewardMachine cookie_reference_machine(const PropositionAlphabet& alphabet);

// Two states toggled by the button ({BP}); eating ({CE}) rewards 1 in both.
// Tracks the gravity switch, which never changes what can be observed next,
// so under the trace-prediction objective it scores no better than a single
// state.
RewardMachine gravity_reference_machine(const PropositionAlphabet& alphabet);

// One state, no stored transitions: everything self-loops.
RewardMachine single_state_machine();

}  // namespace rmlearn

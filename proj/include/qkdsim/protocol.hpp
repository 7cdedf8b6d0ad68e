#pragma once

#include "qkdsim/attack.hpp"
#include "qkdsim/record.hpp"
#include "qkdsim/rng.hpp"

namespace qkdsim {

/**
 * One LM05 round. Bob prepares one of the four Z/X eigenstates uniformly and
 * sends it; Alice either encodes (message mode, Identity/iY) and returns the
 * qubit, or measures in a random basis, announces (basis, outcome) and
 * resubmits the observed eigenstate (control mode). Bob decodes in his
 * preparation basis. The control check compares Alice's announcement with
 * Bob's preparation on matched bases; the backward leg of a control round is
 * recorded as a diagnostic only.
 *
 * Draws are consumed from `rng` in a fixed order, so a round is a pure
 * function of (rng key, control_prob, attack).
 */
RoundRecord run_round_lm05(RoundRng& rng, double control_prob, const AttackStrategy& attack);

/**
 * One Ping-Pong round. Bob prepares the PsiPlus pair, keeps wire 0 and sends
 * wire 1. Message mode: Alice applies Identity/PauliZ to the traveling qubit
 * and returns it; Bob decodes by Bell measurement (PsiPlus -> 0,
 * PsiMinus -> 1; Phi outcomes are counted as errors with a fair-coin decoded
 * bit). Control mode: Alice measures the traveling qubit in Z and announces;
 * Bob measures his home qubit in Z; the check fails when the outcomes are
 * not anti-correlated.
 */
RoundRecord run_round_pingpong(RoundRng& rng, double control_prob, const AttackStrategy& attack);

/**
 * One BB84 baseline round: Alice prepares a uniform BB84 state, the forward
 * channel passes through the attack, Bob measures in a uniform basis. The
 * record carries the sifted flag and, on sifted rounds, the error flag.
 */
RoundRecord run_round_bb84(RoundRng& rng, const AttackStrategy& attack);

} // namespace qkdsim

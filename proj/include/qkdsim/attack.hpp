#pragma once

#include <optional>

#include "qkdsim/qubit.hpp"
#include "qkdsim/rng.hpp"

namespace qkdsim {

// Per-round private state of the eavesdropper. Created fresh for every round
// and destroyed with it; nothing leaks across rounds.
struct EveContext {
    bool attacked = false;

    // QMM: Bob's withheld qubit and the probe handed to Alice.
    std::optional<PureState> stored_qubit;
    std::optional<PureState> probe_sent;

    // Intercept-resend bookkeeping.
    std::optional<Basis> forward_basis;
    std::optional<int> forward_outcome;

    std::optional<int> inferred_bit;
};

/**
 * Behavioral contract of an eavesdropper.
 *
 * The engine draws the per-round attack decision through decide() and routes
 * the traveling state through the intercept hooks. Hooks see only the
 * traveling state, never Alice's mode choice or Bob's preparation record,
 * and are exact identities when the round is not attacked.
 */
class AttackStrategy {
public:
    explicit AttackStrategy(double fraction = 0.0) : fraction_(fraction) {}
    virtual ~AttackStrategy() = default;

    // Bernoulli(f) on the supplied uniform draw.
    bool decide(double round_rand) const { return round_rand < fraction_; }

    double fraction() const { return fraction_; }

    // Single-qubit channels (LM05 forward/backward, BB84 forward).
    virtual PureState forward_intercept(const PureState& travel, EveContext&, RoundRng&) const {
        return travel;
    }
    virtual PureState backward_intercept(const PureState& returned, EveContext&, RoundRng&) const {
        return returned;
    }

    // Ping-Pong forward channel. The joint state is (home, travel); a
    // strategy may collapse the travel wire in place, or detach it entirely
    // by returning the qubit Alice will hold instead (the swap case).
    virtual std::optional<PureState> pingpong_forward(TwoQubitState&, EveContext&, RoundRng&) const {
        return std::nullopt;
    }

    // Ping-Pong backward channel; `returned_probe` is engaged iff the
    // forward hook detached the travel wire.
    virtual void pingpong_backward(TwoQubitState&, const std::optional<PureState>&, EveContext&,
                                   RoundRng&) const {}

private:
    double fraction_;
};

class NoAttack final : public AttackStrategy {
public:
    NoAttack() : AttackStrategy(0.0) {}
};

/**
 * Measure-and-resend in a uniformly random basis on the forward channel;
 * optionally also on the backward channel. Eve records her outcomes and
 * guesses the key bit from them (forward outcome alone when only the forward
 * path is attacked, XOR of the two outcomes otherwise).
 */
class InterceptResend final : public AttackStrategy {
public:
    InterceptResend(double fraction, bool both_paths = false)
        : AttackStrategy(fraction), both_paths_(both_paths) {}

    bool both_paths() const { return both_paths_; }

    PureState forward_intercept(const PureState& travel, EveContext& ctx, RoundRng& rng) const override;
    PureState backward_intercept(const PureState& returned, EveContext& ctx, RoundRng& rng) const override;
    std::optional<PureState> pingpong_forward(TwoQubitState& joint, EveContext& ctx,
                                              RoundRng& rng) const override;
    void pingpong_backward(TwoQubitState& joint, const std::optional<PureState>& returned_probe,
                           EveContext& ctx, RoundRng& rng) const override;

private:
    bool both_paths_;
};

// Probe Eve submits to Alice in the Ping-Pong variant of the attack.
enum class QmmProbe : std::uint8_t { Zero, Plus };

/**
 * Qubit-substitution attack, expressed through the two-qubit SWAP gate.
 *
 * Forward: Eve swaps the traveling qubit with her own probe and keeps Bob's
 * qubit. Backward: she reads the returned probe out, infers Alice's encoding
 * operation, duplicates it onto the withheld qubit and forwards that to Bob.
 * For LM05 the probe is |0> read out in Z, which makes the inference
 * deterministic. For Ping-Pong the probe is configurable: |0> (read in Z,
 * which reveals nothing about a phase encoding) or |+> (read in X, which
 * reveals it exactly).
 */
class QmmAttack final : public AttackStrategy {
public:
    explicit QmmAttack(double fraction, QmmProbe pingpong_probe = QmmProbe::Zero)
        : AttackStrategy(fraction), pingpong_probe_(pingpong_probe) {}

    QmmProbe pingpong_probe() const { return pingpong_probe_; }

    PureState forward_intercept(const PureState& travel, EveContext& ctx, RoundRng& rng) const override;
    PureState backward_intercept(const PureState& returned, EveContext& ctx, RoundRng& rng) const override;
    std::optional<PureState> pingpong_forward(TwoQubitState& joint, EveContext& ctx,
                                              RoundRng& rng) const override;
    void pingpong_backward(TwoQubitState& joint, const std::optional<PureState>& returned_probe,
                           EveContext& ctx, RoundRng& rng) const override;

private:
    QmmProbe pingpong_probe_;
};

} // namespace qkdsim

#include "qkdsim/attack.hpp"

namespace qkdsim {

namespace {
Basis draw_basis(RoundRng& rng) { return rng.next_below(2) ? Basis::X : Basis::Z; }
} // namespace

// ---------------------------------------------------------------------------
// InterceptResend

PureState InterceptResend::forward_intercept(const PureState& travel, EveContext& ctx,
                                             RoundRng& rng) const {
    if (!ctx.attacked) return travel;
    const Basis b = draw_basis(rng);
    const MeasureResult m = measure(travel, b, rng.next_double());
    ctx.forward_basis = b;
    ctx.forward_outcome = m.bit;
    ctx.inferred_bit = m.bit; // best available guess with the forward path only
    return m.collapsed;
}

PureState InterceptResend::backward_intercept(const PureState& returned, EveContext& ctx,
                                              RoundRng& rng) const {
    if (!ctx.attacked || !both_paths_) return returned;
    const Basis b = draw_basis(rng);
    const MeasureResult m = measure(returned, b, rng.next_double());
    if (ctx.forward_outcome) ctx.inferred_bit = *ctx.forward_outcome ^ m.bit;
    return m.collapsed;
}

std::optional<PureState> InterceptResend::pingpong_forward(TwoQubitState& joint, EveContext& ctx,
                                                           RoundRng& rng) const {
    if (!ctx.attacked) return std::nullopt;
    const Basis b = draw_basis(rng);
    const WireMeasureResult m = measure_wire(joint, 1, b, rng.next_double());
    joint = m.collapsed;
    ctx.forward_basis = b;
    ctx.forward_outcome = m.bit;
    ctx.inferred_bit = m.bit;
    return std::nullopt;
}

void InterceptResend::pingpong_backward(TwoQubitState& joint,
                                        const std::optional<PureState>& returned_probe,
                                        EveContext& ctx, RoundRng& rng) const {
    if (!ctx.attacked || !both_paths_ || returned_probe) return;
    const Basis b = draw_basis(rng);
    const WireMeasureResult m = measure_wire(joint, 1, b, rng.next_double());
    joint = m.collapsed;
    if (ctx.forward_outcome) ctx.inferred_bit = *ctx.forward_outcome ^ m.bit;
}

// ---------------------------------------------------------------------------
// QmmAttack

PureState QmmAttack::forward_intercept(const PureState& travel, EveContext& ctx,
                                       RoundRng&) const {
    if (!ctx.attacked) return travel;
    const PureState probe = prepare(Basis::Z, 0);
    // (travel (x) probe), then the SWAP gate: wire 0 ends up holding the
    // probe, wire 1 Bob's qubit.
    TwoQubitState joint;
    joint.amps = {travel.amp0 * probe.amp0, travel.amp0 * probe.amp1,
                  travel.amp1 * probe.amp0, travel.amp1 * probe.amp1};
    joint = swap_gate(joint);
    ctx.stored_qubit = PureState{joint.amps[0], joint.amps[1]};
    ctx.probe_sent = probe;
    return probe;
}

PureState QmmAttack::backward_intercept(const PureState& returned, EveContext& ctx,
                                        RoundRng& rng) const {
    if (!ctx.attacked || !ctx.stored_qubit) return returned;
    // The probe was |0>, so in a message round the Z readout reveals
    // Pass (0) vs Flip (1) with certainty.
    const MeasureResult m = measure(returned, Basis::Z, rng.next_double());
    ctx.inferred_bit = m.bit;
    return m.bit ? apply_single(kIPauliY, *ctx.stored_qubit) : *ctx.stored_qubit;
}

std::optional<PureState> QmmAttack::pingpong_forward(TwoQubitState&, EveContext& ctx,
                                                     RoundRng&) const {
    if (!ctx.attacked) return std::nullopt;
    // Eve keeps the traveling wire of the joint state unmeasured and hands
    // Alice her probe instead.
    const PureState probe =
        pingpong_probe_ == QmmProbe::Zero ? prepare(Basis::Z, 0) : prepare(Basis::X, 0);
    ctx.probe_sent = probe;
    return probe;
}

void QmmAttack::pingpong_backward(TwoQubitState& joint,
                                  const std::optional<PureState>& returned_probe, EveContext& ctx,
                                  RoundRng& rng) const {
    if (!ctx.attacked || !returned_probe) return;
    // A |0> probe read in Z gains nothing from a PauliZ encoding; the |+>
    // probe read in X distinguishes Pass/Flip exactly.
    const Basis readout = pingpong_probe_ == QmmProbe::Zero ? Basis::Z : Basis::X;
    const MeasureResult m = measure(*returned_probe, readout, rng.next_double());
    ctx.inferred_bit = m.bit;
    if (m.bit) joint = apply_on_wire(kPauliZ, 1, joint);
}

} // namespace qkdsim

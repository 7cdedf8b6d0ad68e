#include "qkdsim/protocol.hpp"

#include <stdexcept>
#include <string>

namespace qkdsim {

void validate_record(const RoundRecord& rec) {
    auto fail = [](const char* msg) {
        throw std::logic_error(std::string("RoundRecord: ") + msg);
    };
    if (rec.eve_inferred_bit && !(rec.attacked && rec.mode == RoundMode::Message)) {
        fail("eve inference recorded outside an attacked message round");
    }
    if (rec.protocol == Protocol::Bb84) {
        if (rec.mode != RoundMode::Message || !rec.sifted) fail("bb84 round must carry a sifted flag");
        if (rec.mm_error.has_value() != *rec.sifted) fail("bb84 error flag must follow sifting");
        if (rec.cm_basis_matched || rec.cm_error || rec.cm_backward_error || rec.alice_op ||
            rec.alice_cm_basis || rec.alice_cm_outcome || rec.prep_bell) {
            fail("bb84 round carries two-way fields");
        }
        return;
    }
    if (rec.sifted) fail("sifted flag is bb84-only");
    if (rec.mode == RoundMode::Message) {
        if (!rec.mm_error || !rec.alice_op) fail("message round missing encoding or error flag");
        if (rec.cm_basis_matched || rec.cm_error || rec.cm_backward_error || rec.alice_cm_basis ||
            rec.alice_cm_outcome) {
            fail("message round carries control fields");
        }
    } else {
        if (rec.mm_error || rec.alice_op) fail("control round carries message fields");
        if (!rec.cm_basis_matched || !rec.alice_cm_basis || !rec.alice_cm_outcome) {
            fail("control round missing check fields");
        }
        if (rec.cm_error.has_value() != *rec.cm_basis_matched) {
            fail("cm_error must be populated iff the bases matched");
        }
    }
}

namespace {
Basis draw_basis(RoundRng& rng) { return rng.next_below(2) ? Basis::X : Basis::Z; }
EncodingOp draw_op(RoundRng& rng) { return rng.next_below(2) ? EncodingOp::Flip : EncodingOp::Pass; }
} // namespace

RoundRecord run_round_lm05(RoundRng& rng, double control_prob, const AttackStrategy& attack) {
    RoundRecord rec;
    rec.protocol = Protocol::Lm05;

    const int prep = rng.next_below(4);
    rec.prep_basis = prep < 2 ? Basis::Z : Basis::X;
    rec.prep_bit = prep & 1;
    const PureState prepared = prepare(rec.prep_basis, rec.prep_bit);

    EveContext ctx;
    ctx.attacked = attack.decide(rng.next_double());
    rec.attacked = ctx.attacked;

    const PureState at_alice = attack.forward_intercept(prepared, ctx, rng);

    // Alice draws the mode only after the forward channel: Eve never knows it.
    rec.mode = rng.next_double() < control_prob ? RoundMode::Control : RoundMode::Message;

    if (rec.mode == RoundMode::Message) {
        const EncodingOp op = draw_op(rng);
        rec.alice_op = op;
        const PureState encoded =
            op == EncodingOp::Flip ? apply_single(kIPauliY, at_alice) : at_alice;
        const PureState at_bob = attack.backward_intercept(encoded, ctx, rng);
        const MeasureResult m = measure(at_bob, rec.prep_basis, rng.next_double());
        const int decoded = m.bit ^ rec.prep_bit;
        rec.bob_outcome = decoded;
        rec.mm_error = decoded != key_bit(op);
        if (ctx.attacked) rec.eve_inferred_bit = ctx.inferred_bit;
    } else {
        const Basis alice_basis = draw_basis(rng);
        const MeasureResult m = measure(at_alice, alice_basis, rng.next_double());
        rec.alice_cm_basis = alice_basis;
        rec.alice_cm_outcome = m.bit;
        rec.bob_outcome = m.bit;
        rec.cm_basis_matched = alice_basis == rec.prep_basis;
        if (*rec.cm_basis_matched) rec.cm_error = m.bit != rec.prep_bit;
        // Alice resubmits the observed eigenstate; the backward leg is checked
        // against her announcement and recorded as a diagnostic only.
        const PureState at_bob = attack.backward_intercept(m.collapsed, ctx, rng);
        const MeasureResult back = measure(at_bob, alice_basis, rng.next_double());
        rec.cm_backward_error = back.bit != m.bit;
    }
    validate_record(rec);
    return rec;
}

RoundRecord run_round_pingpong(RoundRng& rng, double control_prob, const AttackStrategy& attack) {
    RoundRecord rec;
    rec.protocol = Protocol::PingPong;
    rec.prep_bell = BellKind::PsiPlus;
    TwoQubitState joint = bell_state(BellKind::PsiPlus);

    EveContext ctx;
    ctx.attacked = attack.decide(rng.next_double());
    rec.attacked = ctx.attacked;

    // Either Alice still holds the traveling wire of `joint`, or Eve detached
    // it and Alice holds the returned probe.
    std::optional<PureState> detached = attack.pingpong_forward(joint, ctx, rng);

    rec.mode = rng.next_double() < control_prob ? RoundMode::Control : RoundMode::Message;

    if (rec.mode == RoundMode::Message) {
        const EncodingOp op = draw_op(rng);
        rec.alice_op = op;
        if (op == EncodingOp::Flip) {
            if (detached) {
                *detached = apply_single(kPauliZ, *detached);
            } else {
                joint = apply_on_wire(kPauliZ, 1, joint);
            }
        }
        attack.pingpong_backward(joint, detached, ctx, rng);
        const BellKind outcome = bell_measure(joint, rng.next_double());
        int decoded;
        bool decode_failed = false;
        switch (outcome) {
            case BellKind::PsiPlus: decoded = 0; break;
            case BellKind::PsiMinus: decoded = 1; break;
            default:
                // Phi outcomes cannot decode; assign the bit by fair coin and
                // flag the round as an error.
                decoded = rng.next_below(2);
                decode_failed = true;
                break;
        }
        rec.bob_outcome = decoded;
        rec.mm_error = decode_failed || decoded != key_bit(op);
        if (ctx.attacked) rec.eve_inferred_bit = ctx.inferred_bit;
    } else {
        int alice_out;
        if (detached) {
            alice_out = measure(*detached, Basis::Z, rng.next_double()).bit;
        } else {
            const WireMeasureResult m = measure_wire(joint, 1, Basis::Z, rng.next_double());
            alice_out = m.bit;
            joint = m.collapsed;
        }
        rec.alice_cm_basis = Basis::Z;
        rec.alice_cm_outcome = alice_out;
        const WireMeasureResult home = measure_wire(joint, 0, Basis::Z, rng.next_double());
        rec.bob_outcome = home.bit;
        rec.cm_basis_matched = true; // single check basis
        rec.cm_error = home.bit == alice_out; // anti-correlation failed
    }
    validate_record(rec);
    return rec;
}

RoundRecord run_round_bb84(RoundRng& rng, const AttackStrategy& attack) {
    RoundRecord rec;
    rec.protocol = Protocol::Bb84;
    rec.mode = RoundMode::Message;

    const int prep = rng.next_below(4);
    rec.prep_basis = prep < 2 ? Basis::Z : Basis::X;
    rec.prep_bit = prep & 1;
    const PureState prepared = prepare(rec.prep_basis, rec.prep_bit);

    EveContext ctx;
    ctx.attacked = attack.decide(rng.next_double());
    rec.attacked = ctx.attacked;

    const PureState at_bob = attack.forward_intercept(prepared, ctx, rng);

    const Basis bob_basis = draw_basis(rng);
    const MeasureResult m = measure(at_bob, bob_basis, rng.next_double());
    rec.bob_outcome = m.bit;
    rec.sifted = bob_basis == rec.prep_basis;
    if (*rec.sifted) rec.mm_error = m.bit != rec.prep_bit;
    if (ctx.attacked) rec.eve_inferred_bit = ctx.inferred_bit;

    validate_record(rec);
    return rec;
}

} // namespace qkdsim

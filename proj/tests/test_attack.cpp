#include <doctest.h>

#include <cmath>

#include "qkdsim/attack.hpp"
#include "qkdsim/protocol.hpp"

using namespace qkdsim;

namespace {
bool amp_eq(Cx a, Cx b, double tol = 1e-12) { return std::abs(a - b) <= tol; }
} // namespace

TEST_CASE("qmm forward swaps the traveling qubit for the |0> probe") {
    const QmmAttack qmm(1.0);
    RoundRng rng(1, 0);
    for (int prep = 0; prep < 4; ++prep) {
        const Basis b = prep < 2 ? Basis::Z : Basis::X;
        const PureState travel = prepare(b, prep & 1);
        EveContext ctx;
        ctx.attacked = true;
        const PureState delivered = qmm.forward_intercept(travel, ctx, rng);
        CHECK(amp_eq(delivered.amp0, Cx{1, 0}));
        CHECK(amp_eq(delivered.amp1, Cx{0, 0}));
        REQUIRE(ctx.stored_qubit.has_value());
        CHECK(ctx.stored_qubit->amp0 == travel.amp0); // exact amplitude exchange
        CHECK(ctx.stored_qubit->amp1 == travel.amp1);
        REQUIRE(ctx.probe_sent.has_value());
    }
}

TEST_CASE("hooks are exact identities when the round is not attacked") {
    const QmmAttack qmm(1.0);
    const InterceptResend ir(1.0, true);
    RoundRng rng(2, 0);
    const PureState s = prepare(Basis::X, 1);
    EveContext ctx; // attacked = false
    for (const AttackStrategy* a : {static_cast<const AttackStrategy*>(&qmm),
                                    static_cast<const AttackStrategy*>(&ir)}) {
        const PureState fwd = a->forward_intercept(s, ctx, rng);
        CHECK(fwd.amp0 == s.amp0);
        CHECK(fwd.amp1 == s.amp1);
        const PureState bwd = a->backward_intercept(s, ctx, rng);
        CHECK(bwd.amp0 == s.amp0);
        CHECK(bwd.amp1 == s.amp1);
        TwoQubitState joint = bell_state(BellKind::PsiPlus);
        const TwoQubitState before = joint;
        CHECK_FALSE(a->pingpong_forward(joint, ctx, rng).has_value());
        a->pingpong_backward(joint, std::nullopt, ctx, rng);
        for (int k = 0; k < 4; ++k) CHECK(joint.amps[k] == before.amps[k]);
        CHECK(rng.draws_consumed() == 0); // identities burn no randomness
    }
}

TEST_CASE("qmm duplicates the learned operation: exhaustive over all eight pairs") {
    const QmmAttack qmm(1.0);
    for (int prep = 0; prep < 4; ++prep) {
        const Basis b = prep < 2 ? Basis::Z : Basis::X;
        const int v = prep & 1;
        for (int op = 0; op < 2; ++op) {
            RoundRng rng(3, prep * 2 + op);
            EveContext ctx;
            ctx.attacked = true;
            const PureState to_alice = qmm.forward_intercept(prepare(b, v), ctx, rng);
            const PureState returned =
                op == 1 ? apply_single(kIPauliY, to_alice) : to_alice;
            // her Z readout of the returned probe is deterministic
            CHECK(std::abs(prob0(returned, Basis::Z) - (op == 1 ? 0.0 : 1.0)) <= 1e-12);
            const PureState to_bob = qmm.backward_intercept(returned, ctx, rng);
            REQUIRE(ctx.inferred_bit.has_value());
            CHECK(*ctx.inferred_bit == op);
            // Bob's decode matches Alice's bit with certainty
            const double p_right =
                (op ^ v) ? 1.0 - prob0(to_bob, b) : prob0(to_bob, b);
            CHECK(p_right >= 1.0 - 1e-12);
        }
    }
}

TEST_CASE("intercept-resend forwards an eigenstate of a random basis") {
    const InterceptResend ir(1.0);
    int z_rounds = 0, x_rounds = 0;
    for (int i = 0; i < 400; ++i) {
        RoundRng rng(5, i);
        EveContext ctx;
        ctx.attacked = true;
        const PureState delivered = ir.forward_intercept(prepare(Basis::Z, 0), ctx, rng);
        REQUIRE(ctx.forward_basis.has_value());
        if (*ctx.forward_basis == Basis::Z) {
            ++z_rounds;
            // measuring |0> in Z is invisible
            CHECK(*ctx.forward_outcome == 0);
            CHECK(amp_eq(delivered.amp0, Cx{1, 0}));
        } else {
            ++x_rounds;
            // |0> collapses to |+> or |->
            const PureState expect = prepare(Basis::X, *ctx.forward_outcome);
            CHECK(amp_eq(delivered.amp0, expect.amp0));
            CHECK(amp_eq(delivered.amp1, expect.amp1));
        }
    }
    CHECK(z_rounds > 100);
    CHECK(x_rounds > 100);
}

TEST_CASE("intercept-resend X-branch outcomes on |0> are near-equiprobable") {
    const InterceptResend ir(1.0);
    int plus = 0, minus = 0;
    for (int i = 0; i < 4000; ++i) {
        RoundRng rng(6, i);
        EveContext ctx;
        ctx.attacked = true;
        ir.forward_intercept(prepare(Basis::Z, 0), ctx, rng);
        if (*ctx.forward_basis != Basis::X) continue;
        (*ctx.forward_outcome == 0 ? plus : minus)++;
    }
    const int n = plus + minus;
    const double band = 6.0 * std::sqrt(0.25 / n);
    CHECK(std::abs(static_cast<double>(plus) / n - 0.5) < band);
}

TEST_CASE("qmm on pingpong: zero probe reveals nothing, plus probe reveals the phase") {
    TwoQubitState joint = bell_state(BellKind::PsiPlus);
    EveContext ctx;
    ctx.attacked = true;
    RoundRng rng(7, 0);

    const QmmAttack zero_probe(1.0, QmmProbe::Zero);
    std::optional<PureState> probe = zero_probe.pingpong_forward(joint, ctx, rng);
    REQUIRE(probe.has_value());
    // PauliZ on |0> is |0> up to phase: the readout cannot distinguish the ops
    const PureState encoded = apply_single(kPauliZ, *probe);
    CHECK(std::abs(prob0(encoded, Basis::Z) - 1.0) <= 1e-12);

    const QmmAttack plus_probe(1.0, QmmProbe::Plus);
    EveContext ctx2;
    ctx2.attacked = true;
    std::optional<PureState> probe2 = plus_probe.pingpong_forward(joint, ctx2, rng);
    REQUIRE(probe2.has_value());
    for (int op = 0; op < 2; ++op) {
        const PureState ret = op ? apply_single(kPauliZ, *probe2) : *probe2;
        CHECK(std::abs(prob0(ret, Basis::X) - (op ? 0.0 : 1.0)) <= 1e-12);
        TwoQubitState j2 = bell_state(BellKind::PsiPlus);
        if (op) j2 = apply_on_wire(kPauliZ, 1, j2); // what Alice would have encoded
        EveContext ctx3;
        ctx3.attacked = true;
        RoundRng rng3(8, op);
        TwoQubitState held = bell_state(BellKind::PsiPlus);
        plus_probe.pingpong_backward(held, ret, ctx3, rng3);
        CHECK(*ctx3.inferred_bit == op);
        CHECK(equal_up_to_phase(held, j2)); // duplicated onto the withheld wire
    }
}

TEST_CASE("decide is Bernoulli in the supplied draw") {
    const QmmAttack qmm(0.3);
    CHECK(qmm.decide(0.0));
    CHECK(qmm.decide(0.29999));
    CHECK_FALSE(qmm.decide(0.3));
    CHECK_FALSE(qmm.decide(0.9));
    const NoAttack none;
    CHECK_FALSE(none.decide(0.0));
}

#include "qkdsim/qubit.hpp"

#include <cmath>
#include <stdexcept>

namespace qkdsim {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
} // namespace

double TwoQubitState::norm_sq() const {
    double n = 0.0;
    for (const Cx& a : amps) n += std::norm(a);
    return n;
}

double Unitary2::unitarity_residual() const {
    // U^dagger U entries
    const Cx g00 = std::conj(m[0]) * m[0] + std::conj(m[2]) * m[2];
    const Cx g01 = std::conj(m[0]) * m[1] + std::conj(m[2]) * m[3];
    const Cx g10 = std::conj(m[1]) * m[0] + std::conj(m[3]) * m[2];
    const Cx g11 = std::conj(m[1]) * m[1] + std::conj(m[3]) * m[3];
    double r = std::abs(g00 - Cx{1.0, 0.0});
    r = std::max(r, std::abs(g01));
    r = std::max(r, std::abs(g10));
    r = std::max(r, std::abs(g11 - Cx{1.0, 0.0}));
    return r;
}

const Unitary2 kIdentity{{Cx{1, 0}, Cx{0, 0}, Cx{0, 0}, Cx{1, 0}}};
const Unitary2 kPauliX{{Cx{0, 0}, Cx{1, 0}, Cx{1, 0}, Cx{0, 0}}};
const Unitary2 kPauliZ{{Cx{1, 0}, Cx{0, 0}, Cx{0, 0}, Cx{-1, 0}}};
const Unitary2 kIPauliY{{Cx{0, 0}, Cx{1, 0}, Cx{-1, 0}, Cx{0, 0}}};

double prob0(const PureState& s, Basis basis) {
    if (basis == Basis::Z) return std::norm(s.amp0);
    return std::norm((s.amp0 + s.amp1) * kInvSqrt2);
}

PureState prepare(Basis basis, int bit) {
    if (bit != 0 && bit != 1) throw std::invalid_argument("prepare: bit must be 0 or 1");
    if (basis == Basis::Z) {
        return bit == 0 ? PureState{Cx{1, 0}, Cx{0, 0}} : PureState{Cx{0, 0}, Cx{1, 0}};
    }
    return bit == 0 ? PureState{Cx{kInvSqrt2, 0}, Cx{kInvSqrt2, 0}}
                    : PureState{Cx{kInvSqrt2, 0}, Cx{-kInvSqrt2, 0}};
}

namespace {
void require_unitary(const Unitary2& u, const char* where) {
    if (u.unitarity_residual() > kGateRejectTol) {
        throw std::invalid_argument(std::string(where) + ": matrix is not unitary");
    }
}
} // namespace

PureState apply_single(const Unitary2& u, const PureState& s) {
    require_unitary(u, "apply_single");
    return PureState{u.m[0] * s.amp0 + u.m[1] * s.amp1,
                     u.m[2] * s.amp0 + u.m[3] * s.amp1};
}

TwoQubitState apply_on_wire(const Unitary2& u, int wire, const TwoQubitState& s) {
    require_unitary(u, "apply_on_wire");
    if (wire != 0 && wire != 1) throw std::invalid_argument("apply_on_wire: wire must be 0 or 1");
    TwoQubitState out;
    if (wire == 0) {
        // pairs (|0b>, |1b>) for the other wire's bit b
        for (int b = 0; b < 2; ++b) {
            const Cx a0 = s.amps[b];
            const Cx a1 = s.amps[2 + b];
            out.amps[b] = u.m[0] * a0 + u.m[1] * a1;
            out.amps[2 + b] = u.m[2] * a0 + u.m[3] * a1;
        }
    } else {
        for (int b = 0; b < 2; ++b) {
            const Cx a0 = s.amps[2 * b];
            const Cx a1 = s.amps[2 * b + 1];
            out.amps[2 * b] = u.m[0] * a0 + u.m[1] * a1;
            out.amps[2 * b + 1] = u.m[2] * a0 + u.m[3] * a1;
        }
    }
    return out;
}

TwoQubitState swap_gate(const TwoQubitState& s) {
    TwoQubitState out = s;
    std::swap(out.amps[1], out.amps[2]);
    return out;
}

MeasureResult measure(const PureState& s, Basis basis, double rand) {
    const double p0 = prob0(s, basis);
    int bit = (rand < p0) ? 0 : 1;
    const double branch = (bit == 0) ? p0 : 1.0 - p0;
    if (branch < kZeroBranch) bit ^= 1;
    return MeasureResult{bit, prepare(basis, bit)};
}

namespace {
// Amplitudes of the remaining wire after projecting `wire` onto the
// eigenstate (e0, e1), plus the branch probability.
struct Projection {
    Cx c0, c1;
    double prob;
};

Projection project_wire(const TwoQubitState& s, int wire, Cx e0, Cx e1) {
    Projection p{};
    if (wire == 1) {
        p.c0 = std::conj(e0) * s.amps[0] + std::conj(e1) * s.amps[1];
        p.c1 = std::conj(e0) * s.amps[2] + std::conj(e1) * s.amps[3];
    } else {
        p.c0 = std::conj(e0) * s.amps[0] + std::conj(e1) * s.amps[2];
        p.c1 = std::conj(e0) * s.amps[1] + std::conj(e1) * s.amps[3];
    }
    p.prob = std::norm(p.c0) + std::norm(p.c1);
    return p;
}
} // namespace

WireMeasureResult measure_wire(const TwoQubitState& s, int wire, Basis basis, double rand) {
    if (wire != 0 && wire != 1) throw std::invalid_argument("measure_wire: wire must be 0 or 1");
    const PureState eig0 = prepare(basis, 0);
    const PureState eig1 = prepare(basis, 1);
    const Projection pr0 = project_wire(s, wire, eig0.amp0, eig0.amp1);
    const Projection pr1 = project_wire(s, wire, eig1.amp0, eig1.amp1);

    int bit = (rand < pr0.prob) ? 0 : 1;
    if ((bit == 0 ? pr0.prob : pr1.prob) < kZeroBranch) bit ^= 1;
    const Projection& pr = (bit == 0) ? pr0 : pr1;
    const PureState& eig = (bit == 0) ? eig0 : eig1;

    const double inv = 1.0 / std::sqrt(pr.prob);
    const Cx c0 = pr.c0 * inv;
    const Cx c1 = pr.c1 * inv;

    TwoQubitState out;
    if (wire == 1) {
        out.amps = {c0 * eig.amp0, c0 * eig.amp1, c1 * eig.amp0, c1 * eig.amp1};
    } else {
        out.amps = {eig.amp0 * c0, eig.amp0 * c1, eig.amp1 * c0, eig.amp1 * c1};
    }
    return WireMeasureResult{bit, out};
}

TwoQubitState bell_state(BellKind kind) {
    TwoQubitState s;
    switch (kind) {
        case BellKind::PhiPlus:  s.amps = {Cx{kInvSqrt2, 0}, Cx{}, Cx{}, Cx{kInvSqrt2, 0}}; break;
        case BellKind::PhiMinus: s.amps = {Cx{kInvSqrt2, 0}, Cx{}, Cx{}, Cx{-kInvSqrt2, 0}}; break;
        case BellKind::PsiPlus:  s.amps = {Cx{}, Cx{kInvSqrt2, 0}, Cx{kInvSqrt2, 0}, Cx{}}; break;
        case BellKind::PsiMinus: s.amps = {Cx{}, Cx{kInvSqrt2, 0}, Cx{-kInvSqrt2, 0}, Cx{}}; break;
    }
    return s;
}

std::array<double, 4> bell_probabilities(const TwoQubitState& s) {
    std::array<double, 4> p{};
    for (int k = 0; k < 4; ++k) {
        const TwoQubitState b = bell_state(static_cast<BellKind>(k));
        Cx inner{};
        for (int i = 0; i < 4; ++i) inner += std::conj(b.amps[i]) * s.amps[i];
        p[k] = std::norm(inner);
    }
    return p;
}

BellKind bell_measure(const TwoQubitState& s, double rand) {
    const std::array<double, 4> p = bell_probabilities(s);
    double cum = 0.0;
    int last_nonzero = 0;
    for (int k = 0; k < 4; ++k) {
        if (p[k] > kZeroBranch) last_nonzero = k;
    }
    for (int k = 0; k < 4; ++k) {
        cum += p[k];
        if (rand < cum && p[k] > kZeroBranch) return static_cast<BellKind>(k);
    }
    return static_cast<BellKind>(last_nonzero);
}

bool equal_up_to_phase(const PureState& a, const PureState& b, double tol) {
    const Cx inner = std::conj(a.amp0) * b.amp0 + std::conj(a.amp1) * b.amp1;
    return std::abs(inner) >= 1.0 - tol;
}

bool equal_up_to_phase(const TwoQubitState& a, const TwoQubitState& b, double tol) {
    Cx inner{};
    for (int i = 0; i < 4; ++i) inner += std::conj(a.amps[i]) * b.amps[i];
    return std::abs(inner) >= 1.0 - tol;
}

} // namespace qkdsim

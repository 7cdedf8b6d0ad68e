#pragma once

#include <array>
#include <complex>
#include <cstdint>

namespace qkdsim {

using Cx = std::complex<double>;

// Tolerances: assertions on normalization/unitarity use kNormTol; operation
// boundaries reject malformed gates at the looser kGateRejectTol.
inline constexpr double kNormTol = 1e-9;
inline constexpr double kGateRejectTol = 1e-6;
// A measurement branch below this probability is treated as measure-zero and
// resolved toward the other outcome.
inline constexpr double kZeroBranch = 1e-15;

enum class Basis : std::uint8_t { Z, X };
enum class BellKind : std::uint8_t { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

// Single-qubit pure state; amplitudes of |0>, |1> in the computational basis.
struct PureState {
    Cx amp0{1.0, 0.0};
    Cx amp1{0.0, 0.0};

    double norm_sq() const { return std::norm(amp0) + std::norm(amp1); }
};

// Two-qubit pure state; amplitudes ordered |00>, |01>, |10>, |11>.
// Wire 0 is the first (home) qubit, wire 1 the second (travel) qubit.
struct TwoQubitState {
    std::array<Cx, 4> amps{Cx{1.0, 0.0}, Cx{}, Cx{}, Cx{}};

    double norm_sq() const;
};

// 2x2 matrix, row-major: m[0]=u00, m[1]=u01, m[2]=u10, m[3]=u11.
struct Unitary2 {
    std::array<Cx, 4> m;

    // max_ij |(U^dagger U - I)_ij|
    double unitarity_residual() const;
};

extern const Unitary2 kIdentity;
extern const Unitary2 kPauliX;
extern const Unitary2 kPauliZ;
extern const Unitary2 kIPauliY; // i*Y = Z*X; flips the bit in both Z and X bases

// Born probability of outcome 0 when measuring `s` in `basis`.
double prob0(const PureState& s, Basis basis);

// The `bit` eigenstate of `basis`; |+> = (|0>+|1>)/sqrt2, |-> = (|0>-|1>)/sqrt2.
PureState prepare(Basis basis, int bit);

// u*s. Throws std::invalid_argument if u fails the unitarity check.
PureState apply_single(const Unitary2& u, const PureState& s);

// (u (x) I) or (I (x) u) per wire. Throws on bad wire index or non-unitary u.
TwoQubitState apply_on_wire(const Unitary2& u, int wire, const TwoQubitState& s);

// Exchanges the |01> and |10> amplitudes; exact involution.
TwoQubitState swap_gate(const TwoQubitState& s);

struct MeasureResult {
    int bit;
    PureState collapsed;
};

// Projective measurement driven by an externally supplied uniform draw in
// [0,1): outcome 0 iff rand < prob0. Pure function of (state, basis, rand).
MeasureResult measure(const PureState& s, Basis basis, double rand);

struct WireMeasureResult {
    int bit;
    TwoQubitState collapsed;
};

// Partial measurement of one wire; the collapsed joint state is renormalized.
WireMeasureResult measure_wire(const TwoQubitState& s, int wire, Basis basis, double rand);

TwoQubitState bell_state(BellKind kind);

// Probabilities |<Bell_k|s>|^2 in BellKind order.
std::array<double, 4> bell_probabilities(const TwoQubitState& s);

// Projects onto the Bell basis; deterministic when s is a Bell state up to phase.
BellKind bell_measure(const TwoQubitState& s, double rand);

// Equality up to global phase: |<a|b>| >= 1 - tol for normalized inputs.
bool equal_up_to_phase(const PureState& a, const PureState& b, double tol = kNormTol);
bool equal_up_to_phase(const TwoQubitState& a, const TwoQubitState& b, double tol = kNormTol);

} // namespace qkdsim

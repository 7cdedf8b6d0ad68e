#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "qkdsim/attack.hpp"
#include "qkdsim/record.hpp"

namespace qkdsim {

enum class AttackKind : std::uint8_t { None, InterceptResend, Qmm };

// Closed-form per-round outcome probabilities, derived by exhaustive
// enumeration of every discrete branch (preparations, bases, operations,
// eavesdropper choices, Born branches). No sampling is involved; the attack
// fraction enters as an analytic Bernoulli(f) mixture of the attacked and
// clean sectors.
struct ExactDistribution {
    std::optional<double> e_cm_exact; // matched-basis CM error rate; absent for BB84
    double qber_mm_exact = 0.0;       // MM error rate (BB84: over sifted rounds)
    double eve_accuracy_exact = 0.0;  // P(inferred bit == key bit) per attacked MM round
    std::uint32_t branch_count = 0;   // enumerated leaves
    std::string method;
};

struct OracleConfig {
    Protocol protocol = Protocol::Lm05;
    AttackKind attack = AttackKind::None;
    double fraction = 1.0;
    bool ir_both_paths = false;
    QmmProbe pingpong_probe = QmmProbe::Zero;
};

ExactDistribution exact_round_distribution(const OracleConfig& cfg);

} // namespace qkdsim

#pragma once

#include <cstdint>
#include <optional>

#include "qkdsim/qubit.hpp"

namespace qkdsim {

enum class Protocol : std::uint8_t { Lm05, PingPong, Bb84 };
enum class RoundMode : std::uint8_t { Message, Control };

// Key-bit encoding chosen by Alice in message mode. Pass maps to bit 0,
// Flip to bit 1. Realization: LM05 Pass=Identity, Flip=iY; Ping-Pong
// Pass=Identity, Flip=PauliZ on the travel wire.
enum class EncodingOp : std::uint8_t { Pass, Flip };

inline int key_bit(EncodingOp op) { return op == EncodingOp::Flip ? 1 : 0; }

// Complete transcript of one protocol round: the idealized public
// announcements plus the private values needed for error accounting.
struct RoundRecord {
    Protocol protocol{};
    RoundMode mode{};

    // Preparation: Bob's state for the two-way protocols, Alice's for BB84.
    Basis prep_basis{};
    int prep_bit{};
    std::optional<BellKind> prep_bell; // Ping-Pong source pair

    std::optional<EncodingOp> alice_op;   // message mode
    std::optional<Basis> alice_cm_basis;  // control-mode announcement
    std::optional<int> alice_cm_outcome;  // control-mode announcement

    bool attacked{};
    std::optional<int> eve_inferred_bit; // populated only on attacked MM rounds

    // Decoded key bit in MM; the check-relevant outcome in CM
    // (Alice's announced outcome for LM05, Bob's home outcome for Ping-Pong).
    int bob_outcome{};

    std::optional<bool> sifted;            // BB84 only: bases matched
    std::optional<bool> cm_basis_matched;
    std::optional<bool> cm_error;
    std::optional<bool> cm_backward_error; // LM05 backward-leg diagnostic
    std::optional<bool> mm_error;

    // Alice's key bit for this round, when one exists.
    std::optional<int> alice_key_bit() const {
        if (protocol == Protocol::Bb84) return prep_bit;
        if (alice_op) return key_bit(*alice_op);
        return std::nullopt;
    }

    bool operator==(const RoundRecord&) const = default;
};

// Structural population invariants; throws std::logic_error on violation.
void validate_record(const RoundRecord& rec);

} // namespace qkdsim

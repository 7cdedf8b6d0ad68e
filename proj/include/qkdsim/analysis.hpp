#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>

#include "qkdsim/record.hpp"

namespace qkdsim {

// Raised when an estimator has an empty denominator; callers should increase
// the round count or the control-mode probability.
struct InsufficientSamplesError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// h(p) = -p log2 p - (1-p) log2(1-p), with h(0) = h(1) = 0.
// Throws std::invalid_argument outside [0,1].
double binary_entropy(double p);

// I_AB = 1 - h(qber): binary symmetric channel between Alice's encoded bit
// and Bob's decoded bit. Throws outside [0, 0.5] (a rate above one half
// signals a sign or decoding defect upstream).
double mutual_information_ab(double qber);

struct QmmBound {
    double f_hat; // min(1, 2 e_cm): inverts the one-half error signature per attacked round
    double i_e;   // Eve learns the key bit with certainty on attacked message rounds
};
QmmBound eve_bound_qmm(double e_cm);

// R = max(0, i_ab - i_e), bits per message-mode round.
double key_rate(double i_ab, double i_e);

// Asymptotic one-way baseline R = max(0, 1 - 2 h(qber)); zero crossing near 0.11.
double bb84_rate(double qber);

// Binomial rate with 95% Wilson score interval and a 95% Hoeffding bound.
struct RateEstimate {
    std::uint64_t successes = 0;
    std::uint64_t trials = 0;
    double rate = 0.0;
    double wilson_lo = 0.0;
    double wilson_hi = 0.0;
    double ci95_half = 0.0;       // Wilson interval half-width
    double hoeffding95_half = 0.0;
};
RateEstimate estimate_rate(std::uint64_t successes, std::uint64_t trials, const char* what);

// Commutative, associative fold over RoundRecords; partial tallies from
// concurrent workers merge deterministically.
struct RoundTally {
    std::uint64_t rounds_total = 0;
    std::uint64_t rounds_mm = 0;
    std::uint64_t rounds_cm = 0;
    std::uint64_t rounds_cm_matched = 0;
    std::uint64_t mm_counted = 0; // MM rounds carrying an error flag (BB84: sifted)
    std::uint64_t mm_errors = 0;
    std::uint64_t cm_errors = 0;
    std::uint64_t cm_backward_rounds = 0;
    std::uint64_t cm_backward_errors = 0;
    std::uint64_t attacked = 0;
    std::uint64_t eve_guesses = 0;
    std::uint64_t eve_correct = 0;

    void add(const RoundRecord& rec);
    void merge(const RoundTally& other);
};

// rate = (# matched-basis CM rounds with error) / (# matched-basis CM rounds).
RateEstimate estimate_cm_error(const RoundTally& tally);
RateEstimate estimate_cm_error(std::span<const RoundRecord> records);

// rate = (# error-flagged MM rounds) / (# counted MM rounds).
RateEstimate estimate_mm_qber(const RoundTally& tally);
RateEstimate estimate_mm_qber(std::span<const RoundRecord> records);

// Fraction of attacked MM rounds where Eve's inferred bit equals Alice's key bit.
double empirical_eve_accuracy(const RoundTally& tally);
double empirical_eve_accuracy(std::span<const RoundRecord> records);

// Per-attack inputs for the Eve-information model, taken from the exact
// enumeration at f = 1 (an artifact convention, echoed in output metadata).
struct EveModel {
    std::string name;               // "none", "qmm_fhat", "ir_binary_channel", ...
    // Exact detectable disturbance per attacked round: matched-basis CM error
    // for the two-way protocols, sifted QBER for BB84.
    double disturbance_per_attacked = 0.0;
    double accuracy_per_attacked = 0.0;
    bool bb84 = false;              // use I_E = h(qber) instead
};

// Aggregated security quantities of one run.
struct RunStatistics {
    std::uint64_t rounds_total = 0;
    std::uint64_t rounds_mm = 0;
    std::uint64_t rounds_cm = 0;
    std::uint64_t rounds_cm_matched = 0;

    std::optional<RateEstimate> e_cm;          // absent for BB84
    RateEstimate qber_mm;                      // BB84: over sifted rounds
    std::optional<RateEstimate> e_cm_backward; // diagnostic

    double i_ab = 0.0;
    double i_e = 0.0;
    double f_hat = 0.0;
    double key_rate = 0.0;
    bool abort = false; // i_ab - i_e was negative before clamping

    std::optional<double> eve_accuracy;
    std::string ie_model;
};

RunStatistics compute_statistics(const RoundTally& tally, const EveModel& model);

} // namespace qkdsim

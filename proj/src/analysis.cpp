#include "qkdsim/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace qkdsim {

namespace {
constexpr double kZ95 = 1.959963984540054; // 97.5% normal quantile
constexpr double kHoeffdingLn = 3.6888794541139363; // ln(2 / 0.05)
} // namespace

double binary_entropy(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("binary_entropy: p outside [0,1]");
    if (p == 0.0 || p == 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double mutual_information_ab(double qber) {
    if (!(qber >= 0.0 && qber <= 0.5)) {
        throw std::invalid_argument("mutual_information_ab: qber outside [0, 0.5]");
    }
    return 1.0 - binary_entropy(qber);
}

QmmBound eve_bound_qmm(double e_cm) {
    if (!(e_cm >= 0.0 && e_cm <= 1.0)) throw std::invalid_argument("eve_bound_qmm: e_cm outside [0,1]");
    const double f_hat = std::min(1.0, 2.0 * e_cm);
    return QmmBound{f_hat, f_hat};
}

double key_rate(double i_ab, double i_e) {
    return std::max(0.0, i_ab - i_e);
}

double bb84_rate(double qber) {
    if (!(qber >= 0.0 && qber <= 0.5)) throw std::invalid_argument("bb84_rate: qber outside [0, 0.5]");
    return std::max(0.0, 1.0 - 2.0 * binary_entropy(qber));
}

RateEstimate estimate_rate(std::uint64_t successes, std::uint64_t trials, const char* what) {
    if (trials == 0) {
        throw InsufficientSamplesError(std::string(what) +
                                       ": no samples; increase the round count or control probability");
    }
    RateEstimate est;
    est.successes = successes;
    est.trials = trials;
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    est.rate = p;

    const double z2 = kZ95 * kZ95;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = kZ95 * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    est.wilson_lo = std::max(0.0, center - half);
    est.wilson_hi = std::min(1.0, center + half);
    est.ci95_half = half;
    est.hoeffding95_half = std::sqrt(kHoeffdingLn / (2.0 * n));
    return est;
}

void RoundTally::add(const RoundRecord& rec) {
    ++rounds_total;
    if (rec.attacked) ++attacked;
    if (rec.mode == RoundMode::Message) {
        ++rounds_mm;
        if (rec.mm_error) {
            ++mm_counted;
            if (*rec.mm_error) ++mm_errors;
        }
        if (rec.eve_inferred_bit) {
            const std::optional<int> key = rec.alice_key_bit();
            if (key) {
                ++eve_guesses;
                if (*rec.eve_inferred_bit == *key) ++eve_correct;
            }
        }
    } else {
        ++rounds_cm;
        if (rec.cm_basis_matched && *rec.cm_basis_matched) {
            ++rounds_cm_matched;
            if (rec.cm_error && *rec.cm_error) ++cm_errors;
        }
        if (rec.cm_backward_error) {
            ++cm_backward_rounds;
            if (*rec.cm_backward_error) ++cm_backward_errors;
        }
    }
}

void RoundTally::merge(const RoundTally& other) {
    rounds_total += other.rounds_total;
    rounds_mm += other.rounds_mm;
    rounds_cm += other.rounds_cm;
    rounds_cm_matched += other.rounds_cm_matched;
    mm_counted += other.mm_counted;
    mm_errors += other.mm_errors;
    cm_errors += other.cm_errors;
    cm_backward_rounds += other.cm_backward_rounds;
    cm_backward_errors += other.cm_backward_errors;
    attacked += other.attacked;
    eve_guesses += other.eve_guesses;
    eve_correct += other.eve_correct;
}

namespace {
RoundTally tally_of(std::span<const RoundRecord> records) {
    RoundTally t;
    for (const RoundRecord& r : records) t.add(r);
    return t;
}
} // namespace

RateEstimate estimate_cm_error(const RoundTally& tally) {
    return estimate_rate(tally.cm_errors, tally.rounds_cm_matched, "estimate_cm_error");
}
RateEstimate estimate_cm_error(std::span<const RoundRecord> records) {
    return estimate_cm_error(tally_of(records));
}

RateEstimate estimate_mm_qber(const RoundTally& tally) {
    return estimate_rate(tally.mm_errors, tally.mm_counted, "estimate_mm_qber");
}
RateEstimate estimate_mm_qber(std::span<const RoundRecord> records) {
    return estimate_mm_qber(tally_of(records));
}

double empirical_eve_accuracy(const RoundTally& tally) {
    if (tally.eve_guesses == 0) {
        throw InsufficientSamplesError("empirical_eve_accuracy: no attacked message rounds");
    }
    return static_cast<double>(tally.eve_correct) / static_cast<double>(tally.eve_guesses);
}
double empirical_eve_accuracy(std::span<const RoundRecord> records) {
    return empirical_eve_accuracy(tally_of(records));
}

RunStatistics compute_statistics(const RoundTally& tally, const EveModel& model) {
    RunStatistics st;
    st.rounds_total = tally.rounds_total;
    st.rounds_mm = tally.rounds_mm;
    st.rounds_cm = tally.rounds_cm;
    st.rounds_cm_matched = tally.rounds_cm_matched;
    st.ie_model = model.name;

    st.qber_mm = estimate_mm_qber(tally);
    if (!model.bb84) st.e_cm = estimate_cm_error(tally);
    if (tally.cm_backward_rounds > 0) {
        st.e_cm_backward =
            estimate_rate(tally.cm_backward_errors, tally.cm_backward_rounds, "e_cm_backward");
    }
    if (tally.eve_guesses > 0) st.eve_accuracy = empirical_eve_accuracy(tally);

    // Sampling noise can push an estimate of a rate that sits exactly at the
    // one-half ceiling slightly above it; clamp before the channel formulas.
    const double qber = std::min(st.qber_mm.rate, 0.5);
    st.i_ab = mutual_information_ab(qber);

    if (model.bb84) {
        st.f_hat = model.disturbance_per_attacked > 0.0
                       ? std::min(1.0, st.qber_mm.rate / model.disturbance_per_attacked)
                       : 0.0;
        st.i_e = binary_entropy(qber);
    } else {
        st.f_hat = eve_bound_qmm(st.e_cm->rate).f_hat;
        if (model.disturbance_per_attacked > 0.0) {
            const double attacked_fraction = std::min(1.0, st.e_cm->rate / model.disturbance_per_attacked);
            const double per_round_info =
                1.0 - binary_entropy(std::clamp(model.accuracy_per_attacked, 0.0, 1.0));
            st.i_e = attacked_fraction * per_round_info;
        } else {
            st.i_e = 0.0;
        }
    }

    st.abort = st.i_ab - st.i_e < 0.0;
    st.key_rate = key_rate(st.i_ab, st.i_e);
    return st;
}

} // namespace qkdsim

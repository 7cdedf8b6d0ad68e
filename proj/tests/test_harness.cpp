#include <doctest.h>

#include <chrono>
#include <cmath>

#include "qkdsim/emit.hpp"
#include "qkdsim/simulate.hpp"

using namespace qkdsim;

namespace {

RunConfig make_cfg(Protocol p, AttackKind a, double f, std::uint64_t rounds,
                   std::uint64_t seed = 1) {
    RunConfig cfg;
    cfg.protocol = p;
    cfg.attack = a;
    cfg.fraction = f;
    cfg.rounds = rounds;
    cfg.master_seed = seed;
    return cfg;
}

double six_sigma(double p, std::uint64_t n) {
    return 6.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

} // namespace

TEST_CASE("identical seeds give byte-identical output for any worker count") {
    RunConfig cfg = make_cfg(Protocol::Lm05, AttackKind::Qmm, 0.7, 20000, 12345);
    std::string reference;
    for (unsigned workers : {1u, 4u, 8u}) {
        cfg.workers = workers;
        SweepResult result;
        result.config = cfg;
        result.points.push_back(run_simulation(cfg));
        const std::string json = emit_json(result, true);
        if (reference.empty()) {
            reference = json;
        } else {
            CHECK(json == reference); // the worker count never shows in the output
        }
    }
}

TEST_CASE("retained record streams are identical across worker counts") {
    RunConfig cfg = make_cfg(Protocol::PingPong, AttackKind::InterceptResend, 0.5, 4000, 7);
    cfg.workers = 1;
    const RunResult a = run_simulation(cfg);
    cfg.workers = 5;
    const RunResult b = run_simulation(cfg);
    REQUIRE(a.records.size() == 4000);
    CHECK(a.records == b.records);
}

TEST_CASE("records are retained only up to the retention limit") {
    RunConfig cfg = make_cfg(Protocol::Lm05, AttackKind::None, 0.0, 2000);
    CHECK(run_simulation(cfg).records.size() == 2000);
    CHECK(run_simulation(cfg, 1000).records.empty());
}

TEST_CASE("monte carlo estimates agree with the enumeration oracle (six sigma)") {
    struct Case {
        Protocol p;
        AttackKind a;
        double f;
        bool both = false;
        QmmProbe probe = QmmProbe::Zero;
    };
    const Case cases[] = {
        {Protocol::Lm05, AttackKind::None, 0.0},
        {Protocol::Lm05, AttackKind::InterceptResend, 1.0},
        {Protocol::Lm05, AttackKind::InterceptResend, 1.0, true},
        {Protocol::Lm05, AttackKind::InterceptResend, 0.5},
        {Protocol::Lm05, AttackKind::Qmm, 1.0},
        {Protocol::Lm05, AttackKind::Qmm, 0.4},
        {Protocol::PingPong, AttackKind::None, 0.0},
        {Protocol::PingPong, AttackKind::InterceptResend, 1.0},
        {Protocol::PingPong, AttackKind::Qmm, 1.0},
        {Protocol::PingPong, AttackKind::Qmm, 1.0, false, QmmProbe::Plus},
        {Protocol::Bb84, AttackKind::None, 0.0},
        {Protocol::Bb84, AttackKind::InterceptResend, 1.0},
    };
    for (const Case& c : cases) {
        RunConfig cfg = make_cfg(c.p, c.a, c.f, 20000, 2024);
        cfg.ir_both_paths = c.both;
        cfg.pingpong_probe = c.probe;
        CAPTURE(static_cast<int>(c.p));
        CAPTURE(static_cast<int>(c.a));
        CAPTURE(c.f);
        const RunResult run = run_simulation(cfg);
        REQUIRE(run.stats.has_value());
        const RunStatistics& st = *run.stats;

        const double q_exact = run.oracle.qber_mm_exact;
        if (q_exact == 0.0) {
            CHECK(st.qber_mm.successes == 0);
        } else {
            CHECK(std::abs(st.qber_mm.rate - q_exact) < six_sigma(q_exact, st.qber_mm.trials));
        }
        if (run.oracle.e_cm_exact) {
            const double e_exact = *run.oracle.e_cm_exact;
            REQUIRE(st.e_cm.has_value());
            if (e_exact == 0.0) {
                CHECK(st.e_cm->successes == 0);
            } else {
                CHECK(std::abs(st.e_cm->rate - e_exact) < six_sigma(e_exact, st.e_cm->trials));
            }
        }
        if (st.eve_accuracy) {
            const double a_exact = run.oracle.eve_accuracy_exact;
            const double band =
                a_exact == 1.0 ? 0.0 : six_sigma(a_exact, st.rounds_mm);
            CHECK(std::abs(*st.eve_accuracy - a_exact) <= band);
        }
    }
}

TEST_CASE("wilson intervals cover the exact rate in at least 95 percent of runs") {
    int covered = 0;
    const int trials = 200;
    for (int t = 0; t < trials; ++t) {
        RunConfig cfg = make_cfg(Protocol::Lm05, AttackKind::Qmm, 1.0, 10000,
                                 derive_subseed(777, static_cast<std::uint64_t>(t)));
        const RunResult run = run_simulation(cfg, 0);
        const RateEstimate& e = run.stats->e_cm.value();
        if (e.wilson_lo <= 0.5 && 0.5 <= e.wilson_hi) ++covered;
    }
    CHECK(covered >= 190);
}

TEST_CASE("insufficient sampling surfaces as the dedicated error") {
    RunConfig cfg = make_cfg(Protocol::Lm05, AttackKind::None, 0.0, 1);
    CHECK_THROWS_AS(run_simulation(cfg), InsufficientSamplesError);
}

TEST_CASE("sweep reproduces the linear key-rate law and derives sub-seeds") {
    RunConfig base = make_cfg(Protocol::Lm05, AttackKind::Qmm, 0.0, 20000, 31337);
    const double grid[] = {0.0, 0.5, 1.0};
    const SweepResult result = sweep(base, grid);
    REQUIRE(result.points.size() == 3);
    CHECK(result.points[0].seed != result.points[1].seed);
    for (int i = 0; i < 3; ++i) {
        REQUIRE(result.points[i].stats.has_value());
        CHECK(std::abs(result.points[i].stats->key_rate - (1.0 - grid[i])) < 0.05);
    }
    // estimated R never increases with f beyond the summed interval slack
    for (int i = 1; i < 3; ++i) {
        const double slack = result.points[i - 1].stats->e_cm->ci95_half * 2 +
                             result.points[i].stats->e_cm->ci95_half * 2;
        CHECK(result.points[i].stats->key_rate <=
              result.points[i - 1].stats->key_rate + slack);
    }
}

TEST_CASE("a failing sweep point is reported in place without aborting the sweep") {
    RunConfig base = make_cfg(Protocol::Lm05, AttackKind::Qmm, 0.0, 5000);
    const double grid[] = {0.2, 1.5, 0.8}; // middle point is invalid
    const SweepResult result = sweep(base, grid);
    REQUIRE(result.points.size() == 3);
    CHECK_FALSE(result.points[0].error.has_value());
    CHECK(result.points[1].error.has_value());
    CHECK_FALSE(result.points[1].stats.has_value());
    CHECK_FALSE(result.points[2].error.has_value());
}

TEST_CASE("bb84 statistics use the entropy bound and flag the abort region") {
    RunConfig ir = make_cfg(Protocol::Bb84, AttackKind::InterceptResend, 1.0, 20000);
    const RunResult attacked = run_simulation(ir);
    const RunStatistics& st = *attacked.stats;
    CHECK_FALSE(st.e_cm.has_value());
    CHECK(st.ie_model == "bb84_entropy_bound");
    CHECK(std::abs(st.qber_mm.rate - 0.25) < six_sigma(0.25, st.qber_mm.trials));
    // at a quarter error rate 1 - 2h(q) is negative: zero rate, abort flagged
    CHECK(st.key_rate == 0.0);
    CHECK(st.abort);

    RunConfig clean = make_cfg(Protocol::Bb84, AttackKind::None, 0.0, 20000);
    const RunResult quiet = run_simulation(clean);
    CHECK(quiet.stats->qber_mm.successes == 0);
    CHECK(quiet.stats->i_ab == 1.0);
    CHECK(quiet.stats->key_rate == 1.0);
}

TEST_CASE("statistics invariants hold across a mixed bag of runs") {
    const Protocol protocols[] = {Protocol::Lm05, Protocol::PingPong};
    const AttackKind attacks[] = {AttackKind::None, AttackKind::InterceptResend, AttackKind::Qmm};
    for (Protocol p : protocols) {
        for (AttackKind a : attacks) {
            RunConfig cfg = make_cfg(p, a, 0.6, 10000, 555);
            const RunResult run = run_simulation(cfg);
            const RunStatistics& st = *run.stats;
            CHECK(st.key_rate >= 0.0);
            CHECK(st.key_rate <= st.i_ab);
            CHECK(st.i_ab <= 1.0);
            CHECK(st.i_e >= 0.0);
            CHECK(st.i_e <= 1.0);
            CHECK(st.f_hat == std::min(1.0, 2.0 * st.e_cm->rate));
            CHECK(st.rounds_mm + st.rounds_cm == st.rounds_total);
        }
    }
}

TEST_CASE("eve model inputs come from the enumeration at full fraction") {
    const EveModel qmm = eve_model_for(make_cfg(Protocol::Lm05, AttackKind::Qmm, 0.3, 100));
    CHECK(qmm.name == "qmm_fhat");
    CHECK(qmm.disturbance_per_attacked == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(qmm.accuracy_per_attacked == doctest::Approx(1.0).epsilon(1e-12));

    const EveModel none = eve_model_for(make_cfg(Protocol::PingPong, AttackKind::None, 0.0, 100));
    CHECK(none.name == "none");
    CHECK(none.disturbance_per_attacked == 0.0);

    const EveModel bb = eve_model_for(make_cfg(Protocol::Bb84, AttackKind::InterceptResend, 1.0, 100));
    CHECK(bb.bb84);
    CHECK(bb.disturbance_per_attacked == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("throughput stays above the sanity floor") {
    RunConfig cfg = make_cfg(Protocol::Lm05, AttackKind::Qmm, 1.0, 200000, 99);
    const auto start = std::chrono::steady_clock::now();
    run_simulation(cfg, 0);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    CHECK(secs < 2.0); // >= 1e5 rounds per second per worker
}

TEST_CASE("pingpong zero-probe substitution yields zero usable information") {
    RunConfig cfg = make_cfg(Protocol::PingPong, AttackKind::Qmm, 1.0, 20000, 8);
    const RunResult run = run_simulation(cfg);
    const RunStatistics& st = *run.stats;
    // the detectable signature is there...
    CHECK(std::abs(st.e_cm->rate - 0.5) < six_sigma(0.5, st.e_cm->trials));
    // ...but the modeled leak is nil and the message channel is ruined
    CHECK(st.i_e == 0.0);
    CHECK(st.ie_model == "qmm_probe_channel");
    CHECK(std::abs(st.qber_mm.rate - 0.5) < six_sigma(0.5, st.qber_mm.trials));
}

TEST_CASE("a bb84 fraction sweep traces the rate curve across its threshold") {
    RunConfig base = make_cfg(Protocol::Bb84, AttackKind::InterceptResend, 0.0, 20000, 404);
    // intercept-resend on a fraction f induces a sifted error rate of f/4
    const double grid[] = {0.2, 0.8};
    const SweepResult result = sweep(base, grid);
    const RunStatistics& low = *result.points[0].stats;  // qber ~ 0.05
    const RunStatistics& high = *result.points[1].stats; // qber ~ 0.20
    CHECK(std::abs(low.qber_mm.rate - 0.05) < six_sigma(0.05, low.qber_mm.trials));
    CHECK(low.key_rate > 0.3);
    CHECK(std::abs(high.qber_mm.rate - 0.20) < six_sigma(0.20, high.qber_mm.trials));
    CHECK(high.key_rate == 0.0);
    // the zero crossing sits between those operating points
    CHECK(bb84_rate(0.105) > 0.0);
    CHECK(bb84_rate(0.115) == 0.0);
}

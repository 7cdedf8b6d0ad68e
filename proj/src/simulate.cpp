#include "qkdsim/simulate.hpp"

#include <memory>
#include <thread>

#include "qkdsim/attack.hpp"
#include "qkdsim/protocol.hpp"

namespace qkdsim {

namespace {

std::unique_ptr<AttackStrategy> make_strategy(const RunConfig& cfg, double fraction) {
    switch (cfg.attack) {
        case AttackKind::None: return std::make_unique<NoAttack>();
        case AttackKind::InterceptResend:
            return std::make_unique<InterceptResend>(fraction, cfg.ir_both_paths);
        case AttackKind::Qmm: return std::make_unique<QmmAttack>(fraction, cfg.pingpong_probe);
    }
    return std::make_unique<NoAttack>();
}

RoundRecord run_one(const RunConfig& cfg, const AttackStrategy& attack, std::uint64_t seed,
                    std::uint64_t round) {
    RoundRng rng(seed, round);
    switch (cfg.protocol) {
        case Protocol::Lm05: return run_round_lm05(rng, cfg.control_prob, attack);
        case Protocol::PingPong: return run_round_pingpong(rng, cfg.control_prob, attack);
        case Protocol::Bb84: return run_round_bb84(rng, attack);
    }
    throw std::logic_error("unreachable protocol");
}

OracleConfig oracle_config(const RunConfig& cfg, double fraction) {
    OracleConfig oc;
    oc.protocol = cfg.protocol;
    oc.attack = cfg.attack;
    oc.fraction = fraction;
    oc.ir_both_paths = cfg.ir_both_paths;
    oc.pingpong_probe = cfg.pingpong_probe;
    return oc;
}

RunResult run_point(const RunConfig& cfg, double fraction, std::uint64_t seed,
                    std::uint64_t retain_limit) {
    const std::unique_ptr<AttackStrategy> attack = make_strategy(cfg, fraction);

    const std::uint64_t n = cfg.rounds;
    const bool retain = n <= retain_limit;
    const unsigned workers = static_cast<unsigned>(
        std::min<std::uint64_t>(cfg.workers, std::max<std::uint64_t>(n, 1)));

    RunResult result;
    result.fraction = fraction;
    result.seed = seed;
    if (retain) result.records.resize(n);

    std::vector<RoundTally> partials(workers);
    auto worker_body = [&](unsigned w) {
        const std::uint64_t lo = n * w / workers;
        const std::uint64_t hi = n * (w + 1) / workers;
        RoundTally tally;
        for (std::uint64_t i = lo; i < hi; ++i) {
            RoundRecord rec = run_one(cfg, *attack, seed, i);
            tally.add(rec);
            if (retain) result.records[i] = std::move(rec);
        }
        partials[w] = tally;
    };

    if (workers == 1) {
        worker_body(0);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) threads.emplace_back(worker_body, w);
        for (std::thread& t : threads) t.join();
    }

    RoundTally tally;
    for (const RoundTally& part : partials) tally.merge(part);

    result.stats = compute_statistics(tally, eve_model_for(cfg));
    result.oracle = exact_round_distribution(oracle_config(cfg, fraction));
    return result;
}

} // namespace

EveModel eve_model_for(const RunConfig& cfg) {
    EveModel model;
    model.bb84 = cfg.protocol == Protocol::Bb84;
    const ExactDistribution at_full = exact_round_distribution(oracle_config(cfg, 1.0));
    model.disturbance_per_attacked =
        model.bb84 ? at_full.qber_mm_exact : at_full.e_cm_exact.value_or(0.0);
    model.accuracy_per_attacked = at_full.eve_accuracy_exact;

    switch (cfg.attack) {
        case AttackKind::None: model.name = model.bb84 ? "bb84_entropy_bound" : "none"; break;
        case AttackKind::InterceptResend:
            model.name = model.bb84 ? "bb84_entropy_bound" : "ir_binary_channel";
            break;
        case AttackKind::Qmm:
            model.name = cfg.protocol == Protocol::PingPong ? "qmm_probe_channel" : "qmm_fhat";
            break;
    }
    return model;
}

RunResult run_simulation(const RunConfig& cfg, std::uint64_t retain_limit) {
    validate_config(cfg);
    return run_point(cfg, cfg.fraction, cfg.master_seed, retain_limit);
}

SweepResult sweep(const RunConfig& base, std::span<const double> f_grid,
                  std::uint64_t retain_limit) {
    if (f_grid.empty()) throw ConfigError("sweep grid must not be empty");
    SweepResult out;
    out.config = base;
    out.points.reserve(f_grid.size());
    for (std::size_t i = 0; i < f_grid.size(); ++i) {
        RunConfig point = base;
        point.fraction = f_grid[i];
        point.master_seed = derive_subseed(base.master_seed, i);
        // A failing grid point is reported in place; the sweep continues.
        try {
            validate_config(point);
            out.points.push_back(run_point(point, point.fraction, point.master_seed, retain_limit));
        } catch (const std::exception& e) {
            RunResult failed;
            failed.fraction = point.fraction;
            failed.seed = point.master_seed;
            failed.error = e.what();
            out.points.push_back(std::move(failed));
        }
    }
    return out;
}

} // namespace qkdsim

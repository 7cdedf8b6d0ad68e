#pragma once

#include <span>
#include <vector>

#include "qkdsim/analysis.hpp"
#include "qkdsim/config.hpp"
#include "qkdsim/oracle.hpp"

namespace qkdsim {

// Full round transcripts are retained only for runs of at most this many
// rounds; larger runs aggregate in a streaming fashion.
inline constexpr std::uint64_t kDefaultRetainLimit = 10000;

struct RunResult {
    double fraction = 0.0;      // f actually used at this point
    std::uint64_t seed = 0;     // seed actually used at this point
    std::optional<RunStatistics> stats; // absent when the point failed
    ExactDistribution oracle;   // exact values at this point's f
    std::vector<RoundRecord> records; // empty when rounds > retain limit
    std::optional<std::string> error;  // failure reason for this point
};

struct SweepResult {
    RunConfig config;           // base configuration (echoed in output)
    std::vector<RunResult> points;
};

/**
 * Executes cfg.rounds rounds. Per-round randomness is derived from
 * (master_seed, round_index) by the counter-based generator, so the outcome
 * is bit-identical for any worker count; worker partials merge in index
 * order. Throws InsufficientSamplesError when a run produced no usable
 * control-mode (or message-mode) sample.
 */
RunResult run_simulation(const RunConfig& cfg, std::uint64_t retain_limit = kDefaultRetainLimit);

// One run per grid point, each with a sub-seed derived from the master seed
// and the point index. A failing point carries over the error.
SweepResult sweep(const RunConfig& base, std::span<const double> f_grid,
                  std::uint64_t retain_limit = kDefaultRetainLimit);

// Eve-information model inputs for this configuration (exact per-attacked
// values from the enumeration oracle at f = 1).
EveModel eve_model_for(const RunConfig& cfg);

} // namespace qkdsim

#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qkdsim/emit.hpp"
#include "qkdsim/simulate.hpp"

namespace {

// Exit codes: 0 success, 2 invalid configuration, 3 insufficient samples,
// 4 I/O failure.
constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitSamples = 3;
constexpr int kExitIo = 4;

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monte Carlo simulator and analysis toolkit for two-way QKD "
                 "(LM05, Ping-Pong) with a BB84 baseline"};

    std::string protocol = "lm05";
    std::string attack = "none";
    double fraction = 1.0;
    double control_prob = 0.25;
    std::uint64_t rounds = 100000;
    std::uint64_t seed = 1;
    unsigned workers = 1;
    std::vector<double> sweep_grid;
    bool with_oracle = false;
    std::string format = "json";
    std::string out_path;
    std::string probe = "zero";
    bool ir_both_paths = false;

    app.add_option("--protocol", protocol, "Protocol to simulate")
        ->check(CLI::IsMember({"lm05", "pingpong", "bb84"}))
        ->capture_default_str();
    app.add_option("--attack", attack, "Eavesdropping strategy")
        ->check(CLI::IsMember({"none", "ir", "qmm"}))
        ->capture_default_str();
    app.add_option("--fraction", fraction, "Attacked fraction f in [0,1]")
        ->capture_default_str();
    app.add_option("--control-prob", control_prob, "Control-mode probability c in (0,1)")
        ->capture_default_str();
    app.add_option("--rounds", rounds, "Number of protocol rounds N")->capture_default_str();
    app.add_option("--seed", seed, "Master seed (64-bit)")->capture_default_str();
    app.add_option("--workers", workers, "Worker thread count")->capture_default_str();
    app.add_option("--sweep", sweep_grid,
                   "Comma-separated f grid; one run per point with derived sub-seeds")
        ->delimiter(',');
    app.add_flag("--oracle", with_oracle, "Emit exact enumeration values alongside estimates");
    app.add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    app.add_option("--out", out_path, "Output path (default: standard output)");
    app.add_option("--pingpong-probe", probe, "Probe Eve submits in the Ping-Pong qmm attack")
        ->check(CLI::IsMember({"zero", "plus"}))
        ->capture_default_str();
    app.add_flag("--ir-both-paths", ir_both_paths,
                 "Intercept-resend measures the backward path as well");
    app.set_config("--config", "", "Flat key=value file mirroring these flags; "
                                   "command-line flags take precedence");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::FileError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }

    qkdsim::RunConfig cfg;
    try {
        cfg.protocol = qkdsim::protocol_from_string(protocol);
        cfg.attack = qkdsim::attack_from_string(attack);
        cfg.fraction = fraction;
        cfg.control_prob = control_prob;
        cfg.rounds = rounds;
        cfg.master_seed = seed;
        cfg.workers = workers;
        cfg.pingpong_probe = qkdsim::probe_from_string(probe);
        cfg.ir_both_paths = ir_both_paths;
        qkdsim::validate_config(cfg);
    } catch (const qkdsim::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }

    try {
        qkdsim::SweepResult result;
        if (sweep_grid.empty()) {
            result.config = cfg;
            result.points.push_back(qkdsim::run_simulation(cfg));
        } else {
            result = qkdsim::sweep(cfg, sweep_grid);
        }

        const std::string text = format == "csv" ? qkdsim::emit_csv(result, with_oracle)
                                                 : qkdsim::emit_json(result, with_oracle);
        qkdsim::write_output(text, out_path);

        // Sweep points report their own failures inline; surface the worst one.
        for (const qkdsim::RunResult& point : result.points) {
            if (point.error) return kExitSamples;
        }
        return kExitOk;
    } catch (const qkdsim::InsufficientSamplesError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSamples;
    } catch (const qkdsim::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const qkdsim::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}

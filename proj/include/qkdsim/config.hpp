#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "qkdsim/oracle.hpp"
#include "qkdsim/record.hpp"

namespace qkdsim {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class OutputFormat : std::uint8_t { Json, Csv };

// Simulation parameters. Mirrors the CLI flags one to one and round-trips
// losslessly through the flat key=value config file.
struct RunConfig {
    Protocol protocol = Protocol::Lm05;
    AttackKind attack = AttackKind::None;
    double fraction = 1.0;       // attacked fraction f, Bernoulli per round
    double control_prob = 0.25;  // c; ignored by BB84
    std::uint64_t rounds = 100000;
    std::uint64_t master_seed = 1;
    unsigned workers = 1;
    QmmProbe pingpong_probe = QmmProbe::Zero;
    bool ir_both_paths = false;
};

// Throws ConfigError on out-of-range values or unsupported combinations.
void validate_config(const RunConfig& cfg);

std::string to_string(Protocol p);
std::string to_string(AttackKind a);
std::string to_string(QmmProbe p);
std::string to_string(OutputFormat f);

Protocol protocol_from_string(const std::string& s);
AttackKind attack_from_string(const std::string& s);
QmmProbe probe_from_string(const std::string& s);
OutputFormat format_from_string(const std::string& s);

} // namespace qkdsim

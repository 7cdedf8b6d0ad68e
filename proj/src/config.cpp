#include "qkdsim/config.hpp"

namespace qkdsim {

void validate_config(const RunConfig& cfg) {
    if (!(cfg.fraction >= 0.0 && cfg.fraction <= 1.0)) {
        throw ConfigError("fraction must lie in [0, 1]");
    }
    if (cfg.protocol != Protocol::Bb84 && !(cfg.control_prob > 0.0 && cfg.control_prob < 1.0)) {
        throw ConfigError("control-prob must lie in the open interval (0, 1)");
    }
    if (cfg.rounds < 1) throw ConfigError("rounds must be at least 1");
    if (cfg.workers < 1) throw ConfigError("workers must be at least 1");
    if (cfg.protocol == Protocol::Bb84 && cfg.attack == AttackKind::Qmm) {
        throw ConfigError("the qmm attack needs a two-way protocol; bb84 supports none|ir");
    }
}

std::string to_string(Protocol p) {
    switch (p) {
        case Protocol::Lm05: return "lm05";
        case Protocol::PingPong: return "pingpong";
        case Protocol::Bb84: return "bb84";
    }
    return "?";
}

std::string to_string(AttackKind a) {
    switch (a) {
        case AttackKind::None: return "none";
        case AttackKind::InterceptResend: return "ir";
        case AttackKind::Qmm: return "qmm";
    }
    return "?";
}

std::string to_string(QmmProbe p) { return p == QmmProbe::Zero ? "zero" : "plus"; }

std::string to_string(OutputFormat f) { return f == OutputFormat::Json ? "json" : "csv"; }

Protocol protocol_from_string(const std::string& s) {
    if (s == "lm05") return Protocol::Lm05;
    if (s == "pingpong") return Protocol::PingPong;
    if (s == "bb84") return Protocol::Bb84;
    throw ConfigError("unknown protocol '" + s + "' (expected lm05|pingpong|bb84)");
}

AttackKind attack_from_string(const std::string& s) {
    if (s == "none") return AttackKind::None;
    if (s == "ir") return AttackKind::InterceptResend;
    if (s == "qmm") return AttackKind::Qmm;
    throw ConfigError("unknown attack '" + s + "' (expected none|ir|qmm)");
}

QmmProbe probe_from_string(const std::string& s) {
    if (s == "zero") return QmmProbe::Zero;
    if (s == "plus") return QmmProbe::Plus;
    throw ConfigError("unknown probe '" + s + "' (expected zero|plus)");
}

OutputFormat format_from_string(const std::string& s) {
    if (s == "json") return OutputFormat::Json;
    if (s == "csv") return OutputFormat::Csv;
    throw ConfigError("unknown format '" + s + "' (expected json|csv)");
}

} // namespace qkdsim

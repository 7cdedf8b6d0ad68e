#include "qkdsim/emit.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

namespace qkdsim {

namespace {

using ordered_json = nlohmann::ordered_json;

// Quantize to 12 significant digits so emitted numbers are stable under a
// parse/serialize round trip.
double round_sig12(double x) {
    if (x == 0.0 || !std::isfinite(x)) return x;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

ordered_json rate_json(const RateEstimate& est) {
    ordered_json j;
    j["rate"] = round_sig12(est.rate);
    j["ci95_half"] = round_sig12(est.ci95_half);
    j["hoeffding95_half"] = round_sig12(est.hoeffding95_half);
    j["successes"] = est.successes;
    j["trials"] = est.trials;
    return j;
}

ordered_json config_json(const RunConfig& cfg) {
    ordered_json j;
    j["protocol"] = to_string(cfg.protocol);
    j["attack"] = to_string(cfg.attack);
    j["fraction"] = round_sig12(cfg.fraction);
    j["control_prob"] = round_sig12(cfg.control_prob);
    j["rounds"] = cfg.rounds;
    j["seed"] = cfg.master_seed;
    j["pingpong_probe"] = to_string(cfg.pingpong_probe);
    j["ir_both_paths"] = cfg.ir_both_paths;
    return j;
}

ordered_json oracle_json(const ExactDistribution& dist) {
    ordered_json j;
    if (dist.e_cm_exact) {
        j["e_cm"] = round_sig12(*dist.e_cm_exact);
    } else {
        j["e_cm"] = nullptr;
    }
    j["qber_mm"] = round_sig12(dist.qber_mm_exact);
    j["eve_accuracy"] = round_sig12(dist.eve_accuracy_exact);
    j["branch_count"] = dist.branch_count;
    j["method"] = dist.method;
    return j;
}

ordered_json run_json(const RunResult& run, bool include_oracle) {
    ordered_json j;
    j["fraction"] = round_sig12(run.fraction);
    j["seed"] = run.seed;
    j["error"] = run.error ? ordered_json(*run.error) : ordered_json(nullptr);
    if (run.stats) {
        const RunStatistics& st = *run.stats;
        ordered_json counts;
        counts["rounds_total"] = st.rounds_total;
        counts["rounds_mm"] = st.rounds_mm;
        counts["rounds_cm"] = st.rounds_cm;
        counts["rounds_cm_matched"] = st.rounds_cm_matched;
        j["counts"] = counts;
        j["e_cm"] = st.e_cm ? rate_json(*st.e_cm) : ordered_json(nullptr);
        j["qber_mm"] = rate_json(st.qber_mm);
        j["e_cm_backward"] = st.e_cm_backward ? rate_json(*st.e_cm_backward) : ordered_json(nullptr);
        j["i_ab"] = round_sig12(st.i_ab);
        j["i_e"] = round_sig12(st.i_e);
        j["f_hat"] = round_sig12(st.f_hat);
        j["key_rate"] = round_sig12(st.key_rate);
        j["abort"] = st.abort;
        j["eve_accuracy"] =
            st.eve_accuracy ? ordered_json(round_sig12(*st.eve_accuracy)) : ordered_json(nullptr);
        j["ie_model"] = st.ie_model;
    } else {
        for (const char* key : {"counts", "e_cm", "qber_mm", "e_cm_backward"}) j[key] = nullptr;
        for (const char* key : {"i_ab", "i_e", "f_hat", "key_rate"}) j[key] = nullptr;
        j["abort"] = nullptr;
        j["eve_accuracy"] = nullptr;
        j["ie_model"] = nullptr;
    }
    j["oracle"] = include_oracle && !run.error ? oracle_json(run.oracle) : ordered_json(nullptr);
    return j;
}

} // namespace

const char* const kCsvHeader =
    "protocol,attack,fraction,control_prob,rounds,seed,pingpong_probe,ir_both_paths,"
    "error,rounds_total,rounds_mm,rounds_cm,rounds_cm_matched,"
    "e_cm,e_cm_ci95,e_cm_hoeffding95,qber_mm,qber_mm_ci95,qber_mm_hoeffding95,e_cm_backward,"
    "i_ab,i_e,f_hat,key_rate,abort,eve_accuracy,ie_model,"
    "oracle_e_cm,oracle_qber_mm,oracle_eve_accuracy";

std::string emit_json(const SweepResult& result, bool include_oracle) {
    ordered_json doc;
    doc["schema"] = 1;
    doc["config"] = config_json(result.config);
    ordered_json runs = ordered_json::array();
    for (const RunResult& run : result.points) runs.push_back(run_json(run, include_oracle));
    doc["runs"] = runs;
    return doc.dump(2) + "\n";
}

std::string emit_csv(const SweepResult& result, bool include_oracle) {
    std::ostringstream out;
    out << kCsvHeader << "\n";
    const RunConfig& cfg = result.config;
    for (const RunResult& run : result.points) {
        out << to_string(cfg.protocol) << ',' << to_string(cfg.attack) << ','
            << fmt_double(run.fraction) << ',' << fmt_double(cfg.control_prob) << ','
            << cfg.rounds << ',' << run.seed << ','
            << to_string(cfg.pingpong_probe) << ',' << (cfg.ir_both_paths ? "true" : "false")
            << ',';
        out << (run.error ? csv_escape(*run.error) : "") << ',';
        if (run.stats) {
            const RunStatistics& st = *run.stats;
            out << st.rounds_total << ',' << st.rounds_mm << ',' << st.rounds_cm << ','
                << st.rounds_cm_matched << ',';
            if (st.e_cm) {
                out << fmt_double(st.e_cm->rate) << ',' << fmt_double(st.e_cm->ci95_half) << ','
                    << fmt_double(st.e_cm->hoeffding95_half) << ',';
            } else {
                out << ",,,";
            }
            out << fmt_double(st.qber_mm.rate) << ',' << fmt_double(st.qber_mm.ci95_half) << ','
                << fmt_double(st.qber_mm.hoeffding95_half) << ',';
            out << (st.e_cm_backward ? fmt_double(st.e_cm_backward->rate) : "") << ',';
            out << fmt_double(st.i_ab) << ',' << fmt_double(st.i_e) << ','
                << fmt_double(st.f_hat) << ',' << fmt_double(st.key_rate) << ','
                << (st.abort ? "true" : "false") << ','
                << (st.eve_accuracy ? fmt_double(*st.eve_accuracy) : "") << ',' << st.ie_model
                << ',';
        } else {
            out << ",,,,,,,,,,,,,,,,,,";
        }
        if (include_oracle && !run.error) {
            out << (run.oracle.e_cm_exact ? fmt_double(*run.oracle.e_cm_exact) : "") << ','
                << fmt_double(run.oracle.qber_mm_exact) << ','
                << fmt_double(run.oracle.eve_accuracy_exact);
        } else {
            out << ",,";
        }
        out << "\n";
    }
    return out.str();
}

void write_output(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        if (!std::cout) throw IoError("failed writing to standard output");
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw IoError("cannot open output file '" + path + "'");
    file << text;
    file.flush();
    if (!file) throw IoError("failed writing output file '" + path + "'");
}

} // namespace qkdsim

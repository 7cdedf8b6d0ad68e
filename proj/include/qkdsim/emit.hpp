#pragma once

#include <string>

#include "qkdsim/simulate.hpp"

namespace qkdsim {

// Documented CSV column list, in order.
extern const char* const kCsvHeader;

// One JSON document: schema version, config echo, one entry per run/sweep
// point. Field order is canonical and floating-point values carry at most 12
// significant digits, so parsing and re-serializing reproduces the bytes.
std::string emit_json(const SweepResult& result, bool include_oracle);

// One row per run/sweep point under the fixed header; inapplicable fields
// are left empty.
std::string emit_csv(const SweepResult& result, bool include_oracle);

// Writes to `path`, or to stdout when path is empty or "-". Throws IoError.
void write_output(const std::string& text, const std::string& path);

} // namespace qkdsim

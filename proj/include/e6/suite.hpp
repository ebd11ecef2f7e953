// The verification suite behind `e6cli selftest`, `e6cli correspond` and the
// acceptance binary, plus the run configuration they share.
#pragma once

#include "e6/correspondence.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace e6 {

struct RunConfig {
    Params params;
    int precision = 256;
    int truncation = 200;
    std::uint64_t seed = 20240611;
    std::optional<Real> tol;  // replaces every per-check tolerance when set
    bool timing = false;
};

// key -> raw value, section names joined with '.', e.g. "params.q" -> "1/2".
using ConfigMap = std::map<std::string, std::string>;

// Reads a TOML-style file. Throws ConfigError.
ConfigMap read_config_file(const std::string& path);
// Sets the working precision first, then parses every number at that precision.
// Unknown keys and malformed values throw ConfigError naming the key; parameter
// constraint failures throw ConfigError carrying the InvalidParams message.
RunConfig make_run_config(const ConfigMap& kv);

struct CheckRecord {
    std::string id;
    int criterion = 0;
    Real residual = 0;
    Real tol = 0;
    bool pass = false;
    std::string note;  // error text when the check threw
    double seconds = 0;
};

struct Report {
    std::uint64_t seed = 0;
    int precision = 0;
    int truncation = 0;
    std::string params;
    std::vector<CheckRecord> checks;

    bool pass() const;
    bool criterion_present(int c) const;
    bool criterion_pass(int c) const;
    // Worst residual/tol ratio within a criterion.
    Real criterion_margin(int c) const;
    std::string json(bool with_timing = false) const;
};

// Criteria 1..9; criterion 10 (determinism) is checked by callers comparing json().
Report run_suite(const RunConfig& cfg, const std::vector<int>& criteria);

std::vector<int> all_criteria();
const char* criterion_title(int c);

}  // namespace e6

#pragma once

#include <map>
#include <string>
#include <vector>

#include "integrax/boundary.hpp"

namespace integrax {

struct SuiteConfig {
    ModelParams params;
    int N = 2;
    int sample_count = 20;
    unsigned long long seed = 1;
    int order = 80;
    std::map<std::string, double> tolerances;  // overrides of the defaults
    std::vector<std::string> checks;           // empty = every applicable check

    void validate() const;
};

struct CheckResult {
    std::string name;
    double tolerance = 0.0;
    double max_residual = 0.0;
    bool pass = true;
    bool skipped = false;
    std::string note;
    nlohmann::json samples = nlohmann::json::array();
};

struct SuiteReport {
    std::vector<CheckResult> results;
    bool pass = true;
    double wall_time_ms = 0.0;
    nlohmann::json config_echo;

    nlohmann::json to_json() const;
};

const std::vector<std::string>& suite_check_names();
double suite_default_tolerance(const std::string& check);

SuiteReport run_suite(const SuiteConfig& config);

// Seeded spectral-parameter draws on the annulus 0.5 <= |zeta| <= 1.5,
// rejecting points too close to the entry poles of R.
std::vector<Complex> sample_zetas(const ModelParams& params, int count,
                                  unsigned long long seed);

}  // namespace integrax

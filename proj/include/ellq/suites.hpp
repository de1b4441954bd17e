#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ellq/report.hpp"

namespace ellq {

struct SuiteConfig {
    double q = 0.5;
    std::optional<double> r;  // unset: each suite uses its own default
    int trunc_N = 64;
    double tol = 1e-8;
    int samples = 20;
    std::uint64_t seed = 7;
};

struct UnknownSuite : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// theta, series, rmatrix, rll, halfcurrents, hopf, cg, lemmas, submodule, limits
const std::vector<std::string>& suite_names();

// r used when SuiteConfig::r is unset: 3.3 for cg, lemmas and submodule, 3 otherwise.
double default_r(const std::string& suite);

SuiteResult run_suite(const std::string& name, const SuiteConfig& config);

// "all" expands to every suite; unknown names throw UnknownSuite before anything runs.
Report run_suites(const std::vector<std::string>& names, const SuiteConfig& config);

}  // namespace ellq

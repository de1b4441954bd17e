#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ellq {

// One checked identity. Negative controls pass when the residual exceeds the threshold.
struct Case {
    std::string name;
    std::string inputs;
    double residual = 0.0;
    double threshold = 0.0;
    bool negative = false;
    bool pass = false;
    std::string note;  // error text when the case could not be evaluated
};

struct SuiteContext {
    double q = 0.5;
    double r = 3.0;
    int trunc_N = 64;
    double tol = 1e-8;
    int samples = 20;
    std::uint64_t seed = 7;
};

struct SuiteResult {
    std::string name;
    SuiteContext context;
    std::vector<Case> cases;  // sorted by name, then inputs
    bool pass = false;
};

struct Report {
    std::string schema = "1";
    std::vector<SuiteResult> suites;
    bool pass = false;
};

std::string to_json_text(const Report& report);
Report report_from_json_text(const std::string& text);  // throws std::runtime_error on malformed input
std::string to_csv(const Report& report);                // suite,name,residual,threshold,pass
std::string to_table(const Report& report);

// "%.17g", with inf/nan spelled out
std::string format_double(double x);

}  // namespace ellq

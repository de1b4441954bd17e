// Acceptance run: one PASS/FAIL line per criterion at the default configuration
// (q = 0.5, r = 3, or 3.3 for cg/lemmas/submodule, trunc 64, tol 1e-8, 20 samples, seed 7).

#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "ellq/suites.hpp"

using namespace ellq;

namespace {

struct Criterion {
    int id;
    std::string title;
    std::string suite;
    std::function<bool(const Case&)> select;
};

bool is_gauge(const Case& c) { return c.name.rfind("rll.gauge_", 0) == 0; }

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "theta quasi-periodicity, oddness, addition identity", "theta", nullptr},
        {2, "10V9 summation and 12V11 balancing", "series", nullptr},
        {3, "rho relations, zero pattern, dynamical Yang-Baxter", "rmatrix", nullptr},
        {4, "RLL component relations on V(l), l = 1..3", "rll", [](const Case& c) { return !is_gauge(c); }},
        {5, "half-current relations and phi_l product", "halfcurrents", nullptr},
        {6, "antipode, counit, coassociativity", "hopf", nullptr},
        {7, "Clebsch-Gordan closed form, vanishing, annihilation", "cg", nullptr},
        {8, "bracket lemmas, binomial expansion, reduced sum", "lemmas", nullptr},
        {9, "Drinfeld ratio, submodule eigenvalue routes, quotient", "submodule", nullptr},
        {10, "degeneration chains and orthogonal polynomials", "limits", nullptr},
        {11, "l = 1 L-operator gauge-equivalent to R", "rll", is_gauge},
    };

    SuiteConfig cfg;  // defaults
    bool all = true;
    std::string cached_name;
    SuiteResult cached;
    for (const Criterion& cr : criteria) {
        if (cr.suite != cached_name) {
            cached = run_suite(cr.suite, cfg);
            cached_name = cr.suite;
        }
        int total = 0, passed = 0;
        std::vector<const Case*> failed;
        for (const Case& c : cached.cases) {
            if (cr.select && !cr.select(c)) continue;
            ++total;
            if (c.pass) ++passed;
            else failed.push_back(&c);
        }
        bool ok = total > 0 && failed.empty();
        all = all && ok;
        std::printf("criterion %2d %-4s %-56s %d/%d cases\n", cr.id, ok ? "PASS" : "FAIL", cr.title.c_str(), passed,
                    total);
        for (const Case* c : failed)
            std::printf("    failed: %s [%s] residual %s %s %s%s\n", c->name.c_str(), c->inputs.c_str(),
                        format_double(c->residual).c_str(), c->negative ? ">" : "<",
                        format_double(c->threshold).c_str(), c->note.empty() ? "" : ("  " + c->note).c_str());
    }
    std::printf("acceptance: %s\n", all ? "PASS" : "FAIL");
    return all ? 0 : 1;
}

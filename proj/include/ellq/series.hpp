#pragma once

#include <vector>

#include "ellq/params.hpp"

namespace ellq {

// {}_{s+1}V_s(u0; u_1..u_{s-4}); us.size() must equal s-4.
struct VSeriesSpec {
    cplx u0;
    std::vector<cplx> us;
    int s = 0;
};

// Smallest -u_i over the u_i that are nonpositive integers.
int termination_index(const VSeriesSpec& spec);

// Term j of the series (no termination check).
cplx elliptic_V_term(const VSeriesSpec& spec, int j, const ModularParams& mp);

// Finite sum up to the termination index, Neumaier-compensated.
cplx elliptic_V(const VSeriesSpec& spec, const ModularParams& mp);

struct BalanceCheck {
    double residual;
    bool pass;
};

// |sum u_i - ((s-7)/2 + (s-5)/2 u0)|
BalanceCheck check_balanced(const VSeriesSpec& spec, double tol);

// 10V9(beta-gamma-s; -s, alpha-gamma, -alpha-gamma+1-s, beta+delta, beta-delta)
VSeriesSpec frenkel_turaev_spec(cplx alpha, cplx beta, cplx gamma, cplx delta, int s);

// [gamma-beta, gamma+beta, alpha+delta, alpha-delta]_s / [alpha-beta, alpha+beta, gamma+delta, gamma-delta]_s
cplx frenkel_turaev_rhs(cplx alpha, cplx beta, cplx gamma, cplx delta, int s,
                        const ModularParams& mp);

// Terminating r+1 phi r (equal numbers of numerator and denominator
// parameters plus one) summed for j = 0..terms.
struct PhiSeriesSpec {
    std::vector<cplx> num;
    std::vector<cplx> den;
    cplx base;
    cplx z;
    int terms = 0;
};

cplx basic_phi(const PhiSeriesSpec& spec);

// Very-well-poised r+1 W r(a; b_1..; base, z), summed for j = 0..terms.
struct WSeriesSpec {
    cplx a;
    std::vector<cplx> b;
    cplx base;
    cplx z;
    int terms = 0;
};

cplx basic_W(const WSeriesSpec& spec);

}  // namespace ellq

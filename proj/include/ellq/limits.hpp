#pragma once

#include <array>
#include <string>
#include <vector>

#include "ellq/params.hpp"

namespace ellq {

// One stage of a degeneration chain. params[i] is the value of the limit variable
// (p, z or x) at which deviations[i] was measured. Exact stages carry one entry.
struct LimitStage {
    std::string name;
    std::vector<double> params;
    std::vector<double> deviations;
    bool exact = false;

    bool monotone() const;   // strictly decreasing deviations
    double final() const { return deviations.empty() ? 0.0 : deviations.back(); }
};

using Block2 = std::array<std::array<cplx, 2>, 2>;  // middle block of a six-vertex matrix

// Closed trigonometric forms; x = q^{2P}, z = q^{2u}.
Block2 r_trig_block(cplx z, cplx x, cplx q);  // R+_trig(u, P) without rho
Block2 r_nonaffine_dyn_block(cplx x, cplx q);  // R+(P) without q^{1/2}
Block2 r_affine_block(cplx z, cplx q);         // R+(u)
Block2 r_const_block(cplx q);                  // R+
cplx rho_trig(cplx z, cplx q);

// Elliptic middle block with the q^{u^2/r} part of every bracket removed.
Block2 r_stripped_block(cplx u, cplx s, const ModularParams& mp);

struct RChainInput {
    cplx q = 0.5;
    cplx u = cplx(0.4, 0.11);
    cplx P = cplx(1.7, 0.137);
    std::vector<double> sweep{1e-6, 1e-8, 1e-10};
    int trunc_N = 64;
};

// p -> 0 for the entries and for rho+, then z -> 0 and x -> 0 to the non-affine,
// affine and constant matrices, and the commuting square of the last two limits.
std::vector<LimitStage> r_limit_chain(const RChainInput& in);

struct V12ChainInput {
    int l1 = 2, l2 = 2, s = 1, m = 1, k = 1;
    cplx q = 0.5;
    cplx a = cplx(0.23, 0.05);
    cplx u = cplx(0.41, 0.11);
    cplx P = cplx(1.3, 0.137);
    std::vector<double> sweep{1e-6, 1e-8, 1e-10};
    int trunc_N = 64;
};

// 12V11 -> 10W9 (p), 10W9 -> 8W7 (z), 8W7 = prefactor * 4phi3 (exact),
// 8W7 -> prefactor * 3phi2 (x). Requires k <= m.
std::vector<LimitStage> v12_chain(const V12ChainInput& in);

// Only the exact 8W7 = prefactor * 4phi3 transformation; returns the relative deviation.
double w87_transformation_residual(int l1, int l2, int s, int m, int k, cplx P, cplx q);

// Q_n(q^{-x}; alpha, beta, N | q) = 3phi2(q^{-n}, alpha beta q^{n+1}, q^{-x}; alpha q, q^{-N}; q, q)
cplx q_hahn(int n, int x, cplx alpha, cplx beta, int N, cplx q);
// R_n(mu(x); alpha, beta, gamma, delta | q) as the balanced 4phi3
cplx q_racah(int n, int x, cplx alpha, cplx beta, cplx gamma, cplx delta, cplx q);

// Largest |<Q_m, Q_n>| / sqrt(<Q_m,Q_m><Q_n,Q_n>) over m != n in 0..N.
double q_hahn_orthogonality(cplx alpha, cplx beta, int N, cplx q);
// Same for q-Racah with alpha q = q^{-N}.
double q_racah_orthogonality(cplx beta, cplx gamma, cplx delta, int N, cplx q);
// max |R_n(mu(x); a,b,c,d) - R_x(mu(n); c,d,a,b)| / max(1, |R_x(mu(n))|) over n, x in 0..N
double q_racah_duality(cplx alpha, cplx beta, cplx gamma, cplx delta, int N, cplx q);

// The 4phi3 of the chain is balanced (q^2 * prod num = prod den); the 3phi2 of the
// chain equals Q_k(q^{-2s}; alpha, beta, l1 | q^2) with alpha q^2 = q^{-2(s+m)}.
double chain_4phi3_balance(int l1, int l2, int s, int m, int k, cplx P, cplx q);
double chain_3phi2_as_q_hahn(int l1, int l2, int s, int m, int k, cplx q);

}  // namespace ellq

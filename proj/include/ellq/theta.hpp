#pragma once

#include <vector>

#include "ellq/params.hpp"

namespace ellq {

// (z; b_1, ..., b_m)_inf truncated to n_i < N for every index.
// Factors are skipped once |z b^n| drops below 1e-300, which leaves the value unchanged.
cplx qpoch(cplx z, const std::vector<cplx>& bases, int N);
cplx qpoch(cplx z, cplx base, int N);

// Finite (a; base)_n for n >= 0.
cplx qpoch_finite(cplx a, cplx base, int n);

// Theta_p(z) = (z;p)(p/z;p)(p;p); p -> p* when starred.
cplx theta_big(cplx z, const ModularParams& mp, bool starred = false);

// [u] = q^{u^2/r - u} Theta_p(q^{2u}) / (p;p)^3.
cplx bracket(cplx u, const ModularParams& mp, bool starred = false);

// [u] with the q^{u^2/r} factor removed. Its p -> 0 limit is q^{-u}(1 - q^{2u}).
cplx bracket_stripped(cplx u, const ModularParams& mp);

// [u]_m = [u][u+1]...[u+m-1]; for m < 0, [u]_m = 1/[u+m]_{-m}.
cplx bracket_fact(cplx u, int m, const ModularParams& mp);

// exp(2 u a log q), i.e. z^a for z = q^{2u}.
cplx upow(cplx u, cplx a, const ModularParams& mp);

// q^a = exp(a log q).
cplx qpow(cplx a, const ModularParams& mp);

// {x} = (x; p, q^4)_inf. skip_unit drops the n=(0,0) factor 1-x.
cplx dprod(cplx x, const ModularParams& mp, bool starred = false, bool skip_unit = false);

// True when u sits on the real zero lattice n r of [.] (real r only). n receives the index.
bool on_zero_lattice(cplx u, const ModularParams& mp, long* n = nullptr);

}  // namespace ellq

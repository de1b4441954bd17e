#include "ellq/theta.hpp"

#include <cmath>

namespace ellq {

namespace {

constexpr double kNegligible = 1e-300;

cplx qpoch_rec(cplx t, const cplx* b, std::size_t k, int N) {
    if (k == 0) return 1.0 - t;
    cplx res = 1.0;
    for (int n = 0; n < N; ++n) {
        if (std::abs(t) < kNegligible) break;
        res *= qpoch_rec(t, b + 1, k - 1, N);
        t *= b[0];
    }
    return res;
}

void check_base(cplx b) {
    if (!(std::abs(b) < 1.0)) throw DomainError("q-Pochhammer base must satisfy |base| < 1");
}

}  // namespace

cplx qpoch(cplx z, const std::vector<cplx>& bases, int N) {
    if (bases.empty()) throw DomainError("q-Pochhammer needs at least one base");
    if (N < 1) throw DomainError("truncation order must be positive");
    for (cplx b : bases) check_base(b);
    return qpoch_rec(z, bases.data(), bases.size(), N);
}

cplx qpoch(cplx z, cplx base, int N) {
    check_base(base);
    if (N < 1) throw DomainError("truncation order must be positive");
    cplx res = 1.0;
    for (int n = 0; n < N && std::abs(z) >= kNegligible; ++n) {
        res *= 1.0 - z;
        z *= base;
    }
    return res;
}

cplx qpoch_finite(cplx a, cplx base, int n) {
    cplx res = 1.0;
    for (int j = 0; j < n; ++j) {
        res *= 1.0 - a;
        a *= base;
    }
    return res;
}

cplx theta_big(cplx z, const ModularParams& mp, bool starred) {
    if (z == 0.0) throw DomainError("Theta_p(z) needs z != 0");
    cplx p = starred ? mp.p_star : mp.p;
    cplx pp = starred ? mp.pp_star : mp.pp;
    return qpoch(z, p, mp.trunc_N) * qpoch(p / z, p, mp.trunc_N) * pp;
}

cplx bracket(cplx u, const ModularParams& mp, bool starred) {
    cplx r = starred ? mp.r_star : mp.r;
    cplx pp = starred ? mp.pp_star : mp.pp;
    cplx pre = std::exp((u * u / r - u) * mp.logq);
    return pre * theta_big(std::exp(2.0 * u * mp.logq), mp, starred) / (pp * pp * pp);
}

cplx bracket_stripped(cplx u, const ModularParams& mp) {
    return std::exp(-u * mp.logq) * theta_big(std::exp(2.0 * u * mp.logq), mp) /
           (mp.pp * mp.pp * mp.pp);
}

cplx bracket_fact(cplx u, int m, const ModularParams& mp) {
    cplx res = 1.0;
    if (m < 0) {
        for (int j = 1; j <= -m; ++j) res /= bracket(u - double(j), mp);
        return res;
    }
    for (int j = 0; j < m; ++j) res *= bracket(u + double(j), mp);
    return res;
}

cplx upow(cplx u, cplx a, const ModularParams& mp) { return std::exp(2.0 * u * a * mp.logq); }

cplx qpow(cplx a, const ModularParams& mp) { return std::exp(a * mp.logq); }

cplx dprod(cplx x, const ModularParams& mp, bool starred, bool skip_unit) {
    cplx p = starred ? mp.p_star : mp.p;
    cplx q4 = std::exp(4.0 * mp.logq);
    int N = mp.trunc_N;
    cplx res = 1.0;
    cplx t1 = x;
    for (int n1 = 0; n1 < N && std::abs(t1) >= kNegligible; ++n1) {
        cplx t = t1;
        for (int n2 = 0; n2 < N && std::abs(t) >= kNegligible; ++n2) {
            if (!(skip_unit && n1 == 0 && n2 == 0)) res *= 1.0 - t;
            t *= q4;
        }
        t1 *= p;
    }
    return res;
}

bool on_zero_lattice(cplx u, const ModularParams& mp, long* n) {
    if (mp.r.imag() != 0.0) return false;
    double r = mp.r.real();
    double k = std::round(u.real() / r);
    bool hit = std::abs(u - k * r) < 1e-9;
    if (hit && n) *n = long(k);
    return hit;
}

}  // namespace ellq

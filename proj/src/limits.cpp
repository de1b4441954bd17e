#include "ellq/limits.hpp"

#include <algorithm>
#include <cmath>

#include "ellq/rmatrix.hpp"
#include "ellq/series.hpp"
#include "ellq/theta.hpp"

namespace ellq {

bool LimitStage::monotone() const {
    for (std::size_t i = 1; i < deviations.size(); ++i)
        if (!(deviations[i] < deviations[i - 1])) return false;
    return true;
}

namespace {

double block_dev(const Block2& A, const Block2& B) {
    double diff = 0.0, scale = 1e-300;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            diff = worst_of(diff, std::abs(A[i][j] - B[i][j]));
            scale = worst_of(scale, std::abs(B[i][j]));
        }
    return diff / scale;
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Additive variable whose exponential q^{2w} has modulus t.
cplx log_point(double t, cplx q, double imag) { return cplx(std::log(t), 0.0) / (2.0 * std::log(q)) + cplx(0.0, imag); }

cplx q2pow(cplx x, cplx q) { return std::exp(2.0 * x * std::log(q)); }

cplx qp(cplx a, cplx base, int n) { return qpoch_finite(a, base, n); }

}  // namespace

Block2 r_trig_block(cplx z, cplx x, cplx q) {
    cplx q2 = q * q;
    cplx bz = q * (1.0 - z) / (1.0 - q2 * z), cz = (1.0 - q2) / (1.0 - q2 * z);
    Block2 M;
    M[0][0] = (1.0 - q2 * x) * (1.0 - x / q2) / ((1.0 - x) * (1.0 - x)) * bz;
    M[0][1] = (1.0 - x * z) / (1.0 - x) * cz;
    M[1][0] = (z - x) / (1.0 - x) * cz;
    M[1][1] = bz;
    return M;
}

Block2 r_nonaffine_dyn_block(cplx x, cplx q) {
    cplx q2 = q * q;
    Block2 M;
    M[0][0] = q * (1.0 - q2 * x) * (1.0 - x / q2) / ((1.0 - x) * (1.0 - x));
    M[0][1] = (1.0 - q2) / (1.0 - x);
    M[1][0] = -x * (1.0 - q2) / (1.0 - x);
    M[1][1] = q;
    return M;
}

Block2 r_affine_block(cplx z, cplx q) {
    cplx q2 = q * q;
    cplx bz = q * (1.0 - z) / (1.0 - q2 * z), cz = (1.0 - q2) / (1.0 - q2 * z);
    return Block2{{{bz, cz}, {z * cz, bz}}};
}

Block2 r_const_block(cplx q) { return Block2{{{q, 1.0 - q * q}, {0.0, q}}}; }

cplx rho_trig(cplx z, cplx q) {
    cplx q2 = q * q, q4 = q2 * q2;
    const int N = 200;
    cplx den = qpoch(q2 / z, q4, N);
    return std::sqrt(q) * qpoch(1.0 / z, q4, N) * qpoch(q4 / z, q4, N) / (den * den);
}

Block2 r_stripped_block(cplx u, cplx s, const ModularParams& mp) {
    auto br = [&](cplx x) { return bracket_stripped(x, mp); };
    cplx bs = br(s), bu1 = br(1.0 + u);
    if (bs == 0.0 || bu1 == 0.0) throw PoleError("R-matrix entry denominator vanishes");
    cplx bbar = br(u) / bu1;
    Block2 M;
    M[0][0] = br(s + 1.0) * br(s - 1.0) / (bs * bs) * bbar;
    M[0][1] = br(1.0) * br(s + u) / (bs * bu1);
    M[1][0] = br(1.0) * br(s - u) / (bs * bu1);
    M[1][1] = bbar;
    return M;
}

std::vector<LimitStage> r_limit_chain(const RChainInput& in) {
    const cplx q = in.q;
    auto elliptic_at = [&](double p) {
        cplx r = std::log(p) / (2.0 * std::log(q));
        return ModularParams::make(q, r, in.trunc_N);
    };
    cplx z = q2pow(in.u, q), x = q2pow(in.P, q);

    LimitStage entries{"elliptic_to_trig_entries", {}, {}, false};
    LimitStage rho{"elliptic_to_trig_rho", {}, {}, false};
    LimitStage dyn{"trig_to_nonaffine_dynamical", {}, {}, false};
    LimitStage aff{"trig_to_affine", {}, {}, false};
    LimitStage c1{"affine_to_constant", {}, {}, false};
    LimitStage c2{"nonaffine_dynamical_to_constant", {}, {}, false};
    LimitStage square{"commuting_square", {}, {}, false};
    LimitStage diag{"elliptic_joint_to_constant", {}, {}, false};

    for (double t : in.sweep) {
        ModularParams mp = elliptic_at(t);
        entries.params.push_back(t);
        entries.deviations.push_back(block_dev(r_stripped_block(in.u, in.P, mp), r_trig_block(z, x, q)));

        cplx scaled = std::sqrt(q) * upow(in.u, -1.0 / (2.0 * mp.r), mp) * rho_plus(in.u, mp);
        rho.params.push_back(t);
        rho.deviations.push_back(rel(scaled, rho_trig(z, q)));

        cplx zt = q2pow(log_point(t, q, 0.11), q), xt = q2pow(log_point(t, q, 0.137), q);
        dyn.params.push_back(t);
        dyn.deviations.push_back(block_dev(r_trig_block(zt, x, q), r_nonaffine_dyn_block(x, q)));
        aff.params.push_back(t);
        aff.deviations.push_back(block_dev(r_trig_block(z, xt, q), r_affine_block(z, q)));
        c1.params.push_back(t);
        c1.deviations.push_back(block_dev(r_affine_block(zt, q), r_const_block(q)));
        c2.params.push_back(t);
        c2.deviations.push_back(block_dev(r_nonaffine_dyn_block(xt, q), r_const_block(q)));
        square.params.push_back(t);
        square.deviations.push_back(block_dev(r_nonaffine_dyn_block(xt, q), r_affine_block(zt, q)));

        // all three at once with p = t^4, z = t, x = t^2 so that p << xz << x << z
        ModularParams mp3 = elliptic_at(t * t * t * t);
        cplx ut = log_point(t, q, 0.11), Pt = log_point(t * t, q, 0.137);
        diag.params.push_back(t);
        diag.deviations.push_back(block_dev(r_stripped_block(ut, Pt, mp3), r_const_block(q)));
    }
    return {entries, rho, dyn, aff, c1, c2, square, diag};
}

namespace {

VSeriesSpec v12_spec(const V12ChainInput& in, cplx u, cplx P) {
    double l = in.l1 + in.l2 - 2 * in.s;
    double l1 = in.l1, l2 = in.l2, s = in.s, m = in.m, k = in.k;
    return {P + m - 2 * k,
            {cplx(-s), cplx(-k), P - k, cplx(l2 - s + 1), -u + in.a - (l1 - 1) / 2,
             u - in.a - l + (l1 - 1) / 2 + 2 * m - 2 * k + P, P + m - 2 * k + l1 + 1.0},
            11};
}

cplx w109(const VSeriesSpec& v, cplx q, int terms) {
    WSeriesSpec w{q2pow(v.u0, q), {}, q * q, q * q, terms};
    for (cplx x : v.us) w.b.push_back(q2pow(x, q));
    return basic_W(w);
}

cplx w87(int l1, int l2, int s, int m, int k, cplx P, cplx q) {
    int l = l1 + l2 - 2 * s;
    auto Q = [&](cplx e) { return q2pow(e, q); };
    double S = s, K = k, M = m;
    WSeriesSpec w{Q(P + M - 2 * K),
                  {Q(-S), Q(-K), Q(P - K), Q(double(l2 - s + 1)), Q(P + M - 2 * K + double(l1 + 1))},
                  q * q,
                  Q(double(-(l - m))),
                  std::min(s, k)};
    return basic_W(w);
}

cplx w87_via_4phi3(int l1, int l2, int s, int m, int k, cplx P, cplx q) {
    int l = l1 + l2 - 2 * s;
    auto Q = [&](cplx e) { return q2pow(e, q); };
    cplx q2 = q * q;
    double S = s, K = k, M = m;
    auto prod = [&](std::initializer_list<cplx> xs) {
        cplx r = 1.0;
        for (cplx x : xs) r *= qp(x, q2, s);
        return r;
    };
    cplx den = prod({Q(P + M - K + 1.0), Q(double(m - k + 1)), Q(P + M - 2 * K - double(l2) + S), Q(double(-l1))});
    if (std::abs(den) < 1e-14) throw PoleError("4phi3 prefactor denominator vanishes");
    cplx pref = prod({Q(P + M - 2 * K + 1.0), Q(double(m + 1)), Q(P + M - K - double(l2) + S), Q(double(k - l1))}) /
                den * Q(-S * K);
    PhiSeriesSpec f{{Q(-S), Q(-K), Q(-(P + M - K + S)), Q(double(l - m + 1))},
                    {Q(-(S + M)), Q(-(P + M - K + double(l1 - l - 1))), Q(double(l1 + 1 - s - k))},
                    q2,
                    q2,
                    std::min(s, k)};
    return pref * basic_phi(f);
}

cplx limit_3phi2(int l1, int l2, int s, int m, int k, cplx q) {
    int l = l1 + l2 - 2 * s;
    auto Q = [&](double e) { return q2pow(e, q); };
    cplx q2 = q * q;
    PhiSeriesSpec f{{Q(-s), Q(-k), Q(-(s + l + 1))}, {Q(-(s + m)), Q(-l1)}, q2, q2, std::min(s, k)};
    return qp(Q(m + 1), q2, s) / qp(Q(m - k + 1), q2, s) * basic_phi(f);
}

}  // namespace

double w87_transformation_residual(int l1, int l2, int s, int m, int k, cplx P, cplx q) {
    return rel(w87_via_4phi3(l1, l2, s, m, k, P, q), w87(l1, l2, s, m, k, P, q));
}

std::vector<LimitStage> v12_chain(const V12ChainInput& in) {
    if (in.k > in.m) throw DomainError("the series chain needs k <= m");
    const cplx q = in.q;
    const int jm = std::min(in.s, in.k);
    LimitStage st1{"v12_to_w109", {}, {}, false};
    LimitStage st2{"w109_to_w87", {}, {}, false};
    LimitStage st3{"w87_equals_4phi3", {}, {}, true};
    LimitStage st4{"4phi3_to_3phi2", {}, {}, false};

    VSeriesSpec v = v12_spec(in, in.u, in.P);
    cplx W = w109(v, q, jm);
    cplx W8 = w87(in.l1, in.l2, in.s, in.m, in.k, in.P, q);
    cplx lim = limit_3phi2(in.l1, in.l2, in.s, in.m, in.k, q);
    for (double t : in.sweep) {
        cplx r = std::log(t) / (2.0 * std::log(q));
        ModularParams mp = ModularParams::make(q, r, in.trunc_N);
        st1.params.push_back(t);
        st1.deviations.push_back(rel(elliptic_V(v, mp), W));

        cplx ut = log_point(t, q, in.u.imag());
        st2.params.push_back(t);
        st2.deviations.push_back(rel(w109(v12_spec(in, ut, in.P), q, jm), W8));

        cplx Pt = log_point(t, q, in.P.imag());
        st4.params.push_back(t);
        st4.deviations.push_back(rel(w87(in.l1, in.l2, in.s, in.m, in.k, Pt, q), lim));
    }
    st3.params.push_back(0.0);
    st3.deviations.push_back(w87_transformation_residual(in.l1, in.l2, in.s, in.m, in.k, in.P, q));
    return {st1, st2, st3, st4};
}

cplx q_hahn(int n, int x, cplx alpha, cplx beta, int N, cplx q) {
    PhiSeriesSpec f{{std::pow(q, -n), alpha * beta * std::pow(q, n + 1), std::pow(q, -x)},
                    {alpha * q, std::pow(q, -N)},
                    q,
                    q,
                    std::min(n, x)};
    return basic_phi(f);
}

cplx q_racah(int n, int x, cplx alpha, cplx beta, cplx gamma, cplx delta, cplx q) {
    PhiSeriesSpec f{{std::pow(q, -n), alpha * beta * std::pow(q, n + 1), std::pow(q, -x),
                     gamma * delta * std::pow(q, x + 1)},
                    {alpha * q, beta * delta * q, gamma * q},
                    q,
                    q,
                    std::min(n, x)};
    return basic_phi(f);
}

namespace {

template <class Poly>
double orthogonality(const std::vector<cplx>& w, int N, Poly poly) {
    std::vector<std::vector<cplx>> vals(N + 1, std::vector<cplx>(N + 1));
    for (int n = 0; n <= N; ++n)
        for (int x = 0; x <= N; ++x) vals[n][x] = poly(n, x);
    auto inner = [&](int a, int b) {
        cplx s = 0.0;
        for (int x = 0; x <= N; ++x) s += w[x] * vals[a][x] * vals[b][x];
        return s;
    };
    double worst = 0.0;
    for (int a = 0; a <= N; ++a)
        for (int b = a + 1; b <= N; ++b)
            worst = worst_of(worst, std::abs(inner(a, b)) / std::sqrt(std::abs(inner(a, a)) * std::abs(inner(b, b))));
    return worst;
}

}  // namespace

double q_hahn_orthogonality(cplx alpha, cplx beta, int N, cplx q) {
    std::vector<cplx> w;
    cplx qN = std::pow(q, -N);
    for (int x = 0; x <= N; ++x)
        w.push_back(qp(alpha * q, q, x) * qp(qN, q, x) / (qp(q, q, x) * qp(qN / beta, q, x)) *
                    std::pow(alpha * beta * q, -x));
    return orthogonality(w, N, [&](int n, int x) { return q_hahn(n, x, alpha, beta, N, q); });
}

double q_racah_orthogonality(cplx beta, cplx gamma, cplx delta, int N, cplx q) {
    cplx alpha = std::pow(q, -N - 1);
    std::vector<cplx> w;
    cplx gd = gamma * delta;
    for (int x = 0; x <= N; ++x) {
        cplx num = qp(alpha * q, q, x) * qp(beta * delta * q, q, x) * qp(gamma * q, q, x) * qp(gd * q, q, x);
        cplx den = qp(q, q, x) * qp(gd * q / alpha, q, x) * qp(gamma * q / beta, q, x) * qp(delta * q, q, x);
        w.push_back(num / den * (1.0 - gd * std::pow(q, 2 * x + 1)) /
                    (std::pow(alpha * beta * q, x) * (1.0 - gd * q)));
    }
    return orthogonality(w, N, [&](int n, int x) { return q_racah(n, x, alpha, beta, gamma, delta, q); });
}

double q_racah_duality(cplx alpha, cplx beta, cplx gamma, cplx delta, int N, cplx q) {
    double worst = 0.0;
    for (int n = 0; n <= N; ++n)
        for (int x = 0; x <= N; ++x)
        {
            cplx a = q_racah(n, x, alpha, beta, gamma, delta, q), b = q_racah(x, n, gamma, delta, alpha, beta, q);
            worst = worst_of(worst, std::abs(a - b) / std::max(1.0, std::abs(b)));
        }
    return worst;
}

double chain_4phi3_balance(int l1, int l2, int s, int m, int k, cplx P, cplx q) {
    int l = l1 + l2 - 2 * s;
    auto Q = [&](cplx e) { return q2pow(e, q); };
    double S = s, K = k, M = m;
    cplx num = Q(-S) * Q(-K) * Q(-(P + M - K + S)) * Q(double(l - m + 1));
    cplx den = Q(-(S + M)) * Q(-(P + M - K + double(l1 - l - 1))) * Q(double(l1 + 1 - s - k));
    return rel(q * q * num, den);
}

double chain_3phi2_as_q_hahn(int l1, int l2, int s, int m, int k, cplx q) {
    int l = l1 + l2 - 2 * s;
    cplx Q = q * q;
    cplx alpha = std::pow(Q, -(s + m) - 1);
    cplx beta = std::pow(Q, -(s + l + 1)) / (alpha * std::pow(Q, k + 1));
    PhiSeriesSpec f{{std::pow(Q, -s), std::pow(Q, -k), std::pow(Q, -(s + l + 1))},
                    {std::pow(Q, -(s + m)), std::pow(Q, -l1)},
                    Q,
                    Q,
                    std::min(s, k)};
    return rel(q_hahn(k, s, alpha, beta, l1, Q), basic_phi(f));
}

}  // namespace ellq

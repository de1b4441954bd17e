#include "ellq/rmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "ellq/theta.hpp"

namespace ellq {

namespace {

// rho^+ without z^{1/2r}. drop_zero removes the p-independent factors 1 - z^{-1} and
// (1 - q^2 z^{-1})^2, which cancel in rho^{+*}/rho^+ and vanish at u = 0 and u = 1.
cplx rho_core(cplx z, const ModularParams& mp, bool starred, bool drop_zero) {
    cplx p = starred ? mp.p_star : mp.p;
    cplx q2 = qpow(2.0, mp), q4 = qpow(4.0, mp);
    auto D = [&](cplx x, bool skip = false) { return dprod(x, mp, starred, skip); };
    cplx a = D(p * q2 * z);
    cplx first = a * a / (D(p * z) * D(p * q4 * z));
    cplx c = D(q2 / z, drop_zero);
    cplx second = D(1.0 / z, drop_zero) * D(q4 / z) / (c * c);
    return first * second;
}

using Mat8 = std::array<std::array<cplx, 8>, 8>;

Mat8 mul(const Mat8& A, const Mat8& B) {
    Mat8 C{};
    for (int i = 0; i < 8; ++i)
        for (int k = 0; k < 8; ++k) {
            if (A[i][k] == 0.0) continue;
            for (int j = 0; j < 8; ++j) C[i][j] += A[i][k] * B[k][j];
        }
    return C;
}

// R acting on factors (f1, f2) of C^2 x C^2 x C^2; s depends on the weight of the third factor.
Mat8 embed(cplx u, const std::function<cplx(int)>& s_of, int f1, int f2, const ModularParams& mp) {
    int f3 = 3 - f1 - f2;
    Mat4 R[2] = {r_matrix(u, s_of(1), mp), r_matrix(u, s_of(-1), mp)};
    Mat8 out{};
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) {
            int ab[3] = {(a >> 2) & 1, (a >> 1) & 1, a & 1};
            int bb[3] = {(b >> 2) & 1, (b >> 1) & 1, b & 1};
            if (ab[f3] != bb[f3]) continue;
            const Mat4& M = R[ab[f3]];
            out[a][b] = M[ab[f1] * 2 + ab[f2]][bb[f1] * 2 + bb[f2]];
        }
    return out;
}

}  // namespace

cplx rho_plus(cplx u, const ModularParams& mp, bool starred) {
    cplx z = upow(u, 1.0, mp);
    if (z == 0.0) throw DomainError("rho^+ needs z != 0");
    cplx r = starred ? mp.r_star : mp.r;
    return upow(u, 1.0 / (2.0 * r), mp) * rho_core(z, mp, starred, false);
}

cplx rho_ratio(cplx u, const ModularParams& mp) {
    cplx z = upow(u, 1.0, mp);
    cplx den = rho_core(z, mp, false, true);
    if (den == 0.0) throw PoleError("rho^+ vanishes");
    cplx frac = upow(u, 1.0 / (2.0 * mp.r_star) - 1.0 / (2.0 * mp.r), mp);
    return frac * rho_core(z, mp, true, true) / den;
}

REntries r_entries(cplx u, cplx s, const ModularParams& mp) {
    cplx bs = bracket(s, mp), bu1 = bracket(1.0 + u, mp);
    if (bs == 0.0 || bu1 == 0.0) throw PoleError("R-matrix entry denominator vanishes");
    cplx one = bracket(1.0, mp), bu = bracket(u, mp);
    REntries e;
    e.bbar = bu / bu1;
    e.b = bracket(s + 1.0, mp) * bracket(s - 1.0, mp) / (bs * bs) * e.bbar;
    e.c = one / bs * bracket(s + u, mp) / bu1;
    e.cbar = one / bs * bracket(s - u, mp) / bu1;
    return e;
}

Mat4 r_matrix(cplx u, cplx s, const ModularParams& mp, RNorm norm) {
    REntries e = r_entries(u, s, mp);
    Mat4 M{};
    M[0][0] = M[3][3] = 1.0;
    M[1][1] = e.b;
    M[1][2] = e.c;
    M[2][1] = e.cbar;
    M[2][2] = e.bbar;
    if (norm == RNorm::with_rho) {
        cplx rho = rho_plus(u, mp);
        for (auto& row : M)
            for (auto& x : row) x *= rho;
    }
    return M;
}

double dybe_residual(cplx u1, cplx u2, cplx u3, cplx s, const ModularParams& mp, bool wrong_shift) {
    double sg = wrong_shift ? -1.0 : 1.0;
    auto shifted = [&](int h) { return s + sg * double(h); };
    auto fixed = [&](int) { return s; };
    Mat8 L = mul(mul(embed(u1 - u2, shifted, 0, 1, mp), embed(u1 - u3, fixed, 0, 2, mp)),
                 embed(u2 - u3, shifted, 1, 2, mp));
    Mat8 R = mul(mul(embed(u2 - u3, fixed, 1, 2, mp), embed(u1 - u3, shifted, 0, 2, mp)),
                 embed(u1 - u2, fixed, 0, 1, mp));
    double diff = 0.0, scale = 1.0;
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            diff = worst_of(diff, std::abs(L[i][j] - R[i][j]));
            scale = std::max({scale, std::abs(L[i][j]), std::abs(R[i][j])});
        }
    return diff / scale;
}

}  // namespace ellq

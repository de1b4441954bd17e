#pragma once

#include <array>

#include "ellq/params.hpp"

namespace ellq {

// Basis order (++, +-, -+, --); rows are outgoing indices.
using Mat4 = std::array<std::array<cplx, 4>, 4>;

enum class RNorm { with_rho, matrix_only };

// rho^+(u) = z^{1/2r} {pq^2z}^2/({pz}{pq^4z}) {z^-1}{q^4z^-1}/{q^2z^-1}^2
cplx rho_plus(cplx u, const ModularParams& mp, bool starred = false);

// rho(u) = rho^{+*}(u)/rho^+(u); the common zero at z = 1 is cancelled before dividing.
cplx rho_ratio(cplx u, const ModularParams& mp);

struct REntries {
    cplx b, c, bbar, cbar;
};

REntries r_entries(cplx u, cplx s, const ModularParams& mp);

Mat4 r_matrix(cplx u, cplx s, const ModularParams& mp, RNorm norm = RNorm::matrix_only);

// Max-norm residual of
//   R12(u12, s+h3) R13(u13, s) R23(u23, s+h1) = R23(u23, s) R13(u13, s+h2) R12(u12, s)
// relative to max(1, |entries|). h_k = +1 for index +, -1 for -.
// wrong_shift uses s-h instead, which must fail.
double dybe_residual(cplx u1, cplx u2, cplx u3, cplx s, const ModularParams& mp,
                     bool wrong_shift = false);

}  // namespace ellq

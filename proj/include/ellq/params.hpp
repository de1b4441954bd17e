#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

namespace ellq {

using cplx = std::complex<double>;

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// A denominator bracket vanished at the requested point.
struct PoleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonTerminatingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Arithmetic context. p = q^{2r}, p* = q^{2r*}, tau = -2 pi i / log p.
// Construct through make(); the infinite products (p;p) and (p*;p*) are cached.
struct ModularParams {
    cplx q;
    cplx r;
    cplx r_star;
    cplx p;
    cplx p_star;
    cplx tau;
    cplx logq;
    int trunc_N = 64;
    double tol = 1e-8;
    cplx pp;       // (p;p)_inf
    cplx pp_star;  // (p*;p*)_inf

    static ModularParams make(cplx q, cplx r, int trunc_N = 64, double tol = 1e-8,
                              std::optional<cplx> r_star = std::nullopt);

    ModularParams with_r(cplx r_new) const;

    // |p|^N < tol^2 and |q|^{4N} < tol^2
    bool truncation_adequate() const;

    bool elliptic_loop() const { return r_star == r; }
};

std::string format_cplx(cplx z);

// max(a, b) that keeps NaN, so a failed evaluation cannot hide inside a residual
inline double worst_of(double a, double b) { return (a != a || b != b) ? a + b : (a < b ? b : a); }
// Accepts "1.5", "2i", "-0.3+0.137i", "1e-3-2e-2i".
cplx parse_cplx(const std::string& text);

}  // namespace ellq

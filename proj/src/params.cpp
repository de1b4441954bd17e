#include "ellq/params.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "ellq/theta.hpp"

namespace ellq {

ModularParams ModularParams::make(cplx q, cplx r, int trunc_N, double tol,
                                  std::optional<cplx> r_star) {
    if (!(std::abs(q) < 1.0) || std::abs(q) == 0.0)
        throw DomainError("need 0 < |q| < 1");
    if (trunc_N < 1) throw DomainError("truncation order must be positive");
    if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
    ModularParams mp;
    mp.q = q;
    mp.r = r;
    mp.r_star = r_star.value_or(r);
    mp.logq = std::log(q);
    mp.p = std::exp(2.0 * mp.r * mp.logq);
    mp.p_star = std::exp(2.0 * mp.r_star * mp.logq);
    if (!(std::abs(mp.p) < 1.0)) throw DomainError("need |p| = |q^{2r}| < 1");
    if (!(std::abs(mp.p_star) < 1.0)) throw DomainError("need |p*| = |q^{2r*}| < 1");
    mp.tau = cplx(0.0, -2.0 * M_PI) / std::log(mp.p);
    mp.trunc_N = trunc_N;
    mp.tol = tol;
    mp.pp = qpoch(mp.p, mp.p, trunc_N);
    mp.pp_star = qpoch(mp.p_star, mp.p_star, trunc_N);
    return mp;
}

ModularParams ModularParams::with_r(cplx r_new) const {
    bool same = r_star == r;
    return make(q, r_new, trunc_N, tol, same ? std::optional<cplx>() : std::optional<cplx>(r_star));
}

bool ModularParams::truncation_adequate() const {
    double t2 = tol * tol;
    double N = trunc_N;
    return std::pow(std::abs(p), N) < t2 && std::pow(std::abs(p_star), N) < t2 &&
           std::pow(std::abs(q), 4.0 * N) < t2;
}

std::string format_cplx(cplx z) {
    char buf[96];
    if (z.imag() == 0.0) {
        std::snprintf(buf, sizeof buf, "%.17g", z.real());
    } else {
        std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
    }
    return buf;
}

namespace {

double parse_real(const std::string& s, const std::string& whole) {
    if (s.empty()) throw std::invalid_argument("malformed complex literal: " + whole);
    if (s == "+") return 1.0;
    if (s == "-") return -1.0;
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size()) throw std::invalid_argument("malformed complex literal: " + whole);
    return v;
}

}  // namespace

cplx parse_cplx(const std::string& text) {
    std::string s;
    for (char c : text)
        if (c != ' ') s += c;
    if (s.empty()) throw std::invalid_argument("empty complex literal");
    if (s.back() != 'i' && s.back() != 'j') return {parse_real(s, text), 0.0};
    s.pop_back();
    // split at the last sign that is not an exponent sign
    std::size_t cut = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            cut = k;
            break;
        }
    }
    if (cut == std::string::npos) return {0.0, parse_real(s, text)};
    return {parse_real(s.substr(0, cut), text), parse_real(s.substr(cut), text)};
}

}  // namespace ellq

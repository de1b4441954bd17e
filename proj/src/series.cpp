#include "ellq/series.hpp"

#include <cmath>
#include <limits>

#include "ellq/theta.hpp"

namespace ellq {

namespace {

struct Neumaier {
    double sum = 0.0, comp = 0.0;
    void add(double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

struct ComplexSum {
    Neumaier re, im;
    void add(cplx z) {
        re.add(z.real());
        im.add(z.imag());
    }
    cplx value() const { return {re.value(), im.value()}; }
};

bool nonpositive_integer(cplx x, int* n) {
    if (std::abs(x.imag()) > 1e-12) return false;
    double k = std::round(x.real());
    if (std::abs(x.real() - k) > 1e-12 || k > 0) return false;
    *n = int(-k);
    return true;
}

// Running product that tracks brackets sitting on the zero lattice n r (n != 0) at
// integer r as (-1)^n (-n) delta, i.e. the limit r -> r + delta. Brackets at 0 are
// genuine zeros.
struct LatticeProduct {
    cplx v = 1.0;
    int order = 0;

    void mul(cplx x, const ModularParams& mp) {
        long n = 0;
        if (on_zero_lattice(x, mp, &n)) {
            if (n == 0) {
                order += 1000;
                return;
            }
            v *= (n % 2 == 0 ? 1.0 : -1.0) * double(-n);
            order += 1;
            return;
        }
        v *= bracket(x, mp);
    }
    void div(cplx x, const ModularParams& mp) {
        long n = 0;
        if (on_zero_lattice(x, mp, &n)) {
            if (n == 0) throw PoleError("series denominator bracket vanishes at " + format_cplx(x));
            v /= (n % 2 == 0 ? 1.0 : -1.0) * double(-n);
            order -= 1;
            return;
        }
        cplx b = bracket(x, mp);
        if (b == 0.0) throw PoleError("series denominator bracket vanishes at " + format_cplx(x));
        v /= b;
    }
    cplx value() const {
        if (order > 0) return 0.0;
        if (order < 0) throw PoleError("series term is singular");
        return v;
    }
};

void check_den(cplx factor, const char* what) {
    if (std::abs(factor) < 1e-14) throw PoleError(std::string("vanishing denominator in ") + what);
}

}  // namespace

int termination_index(const VSeriesSpec& spec) {
    int best = std::numeric_limits<int>::max();
    for (cplx u : spec.us) {
        int n;
        if (nonpositive_integer(u, &n) && n < best) best = n;
    }
    if (best == std::numeric_limits<int>::max())
        throw NonTerminatingError("no numerator parameter is a nonpositive integer");
    return best;
}

cplx elliptic_V_term(const VSeriesSpec& spec, int j, const ModularParams& mp) {
    cplx u0 = spec.u0;
    LatticeProduct t;
    t.mul(u0 + 2.0 * double(j), mp);
    t.div(u0, mp);
    auto factor = [&](cplx ui) {
        for (int i = 0; i < j; ++i) {
            t.mul(ui + double(i), mp);
            t.div(u0 + 1.0 - ui + double(i), mp);
        }
    };
    factor(u0);
    for (cplx ui : spec.us) factor(ui);
    return t.value();
}

cplx elliptic_V(const VSeriesSpec& spec, const ModularParams& mp) {
    if (spec.s != 0 && int(spec.us.size()) != spec.s - 4)
        throw DomainError("series index does not match the number of parameters");
    int jmax = termination_index(spec);
    cplx u0 = spec.u0;
    LatticeProduct b0;
    b0.div(u0, mp);
    ComplexSum acc;
    acc.add(1.0);
    LatticeProduct ratio;  // product part of term j
    for (int j = 1; j <= jmax; ++j) {
        auto step = [&](cplx ui) {
            ratio.mul(ui + double(j - 1), mp);
            ratio.div(u0 + 1.0 - ui + double(j - 1), mp);
        };
        step(u0);
        for (cplx ui : spec.us) step(ui);
        LatticeProduct t = ratio;
        t.mul(u0 + 2.0 * double(j), mp);
        t.v *= b0.v;
        t.order += b0.order;
        acc.add(t.value());
    }
    return acc.value();
}

BalanceCheck check_balanced(const VSeriesSpec& spec, double tol) {
    cplx sum = 0.0;
    for (cplx u : spec.us) sum += u;
    double s = spec.s;
    double res = std::abs(sum - ((s - 7.0) / 2.0 + (s - 5.0) / 2.0 * spec.u0));
    return {res, res < tol};
}

VSeriesSpec frenkel_turaev_spec(cplx al, cplx be, cplx ga, cplx de, int s) {
    double sd = s;
    return {be - ga - sd, {cplx(-sd), al - ga, -al - ga + 1.0 - sd, be + de, be - de}, 9};
}

cplx frenkel_turaev_rhs(cplx al, cplx be, cplx ga, cplx de, int s, const ModularParams& mp) {
    cplx num = bracket_fact(ga - be, s, mp) * bracket_fact(ga + be, s, mp) *
               bracket_fact(al + de, s, mp) * bracket_fact(al - de, s, mp);
    cplx den = bracket_fact(al - be, s, mp) * bracket_fact(al + be, s, mp) *
               bracket_fact(ga + de, s, mp) * bracket_fact(ga - de, s, mp);
    if (den == 0.0) throw PoleError("Frenkel-Turaev denominator vanishes");
    return num / den;
}

cplx basic_phi(const PhiSeriesSpec& spec) {
    bool terminates = false;
    for (cplx a : spec.num)
        if (std::abs(a * std::pow(spec.base, spec.terms) - 1.0) < 1e-10) terminates = true;
    if (!terminates) throw NonTerminatingError("no numerator parameter of the form base^{-terms}");
    ComplexSum acc;
    cplx t = 1.0;
    acc.add(t);
    for (int j = 1; j <= spec.terms; ++j) {
        cplx bj = std::pow(spec.base, j - 1);
        for (cplx a : spec.num) t *= 1.0 - a * bj;
        for (cplx d : spec.den) {
            cplx f = 1.0 - d * bj;
            check_den(f, "basic phi series");
            t /= f;
        }
        cplx f = 1.0 - spec.base * bj;
        check_den(f, "basic phi series");
        t = t / f * spec.z;
        acc.add(t);
    }
    return acc.value();
}

cplx basic_W(const WSeriesSpec& spec) {
    const cplx a = spec.a, base = spec.base;
    bool terminates = std::abs(a * std::pow(base, spec.terms) - 1.0) < 1e-10;
    for (cplx b : spec.b)
        if (std::abs(b * std::pow(base, spec.terms) - 1.0) < 1e-10) terminates = true;
    if (!terminates) throw NonTerminatingError("no parameter of the form base^{-terms}");
    check_den(1.0 - a, "very-well-poised series");
    ComplexSum acc;
    cplx t = 1.0;  // everything except the well-poising factor
    acc.add(1.0);
    for (int j = 1; j <= spec.terms; ++j) {
        cplx bj = std::pow(base, j - 1);
        t *= (1.0 - a * bj);
        cplx f = 1.0 - base * bj;
        check_den(f, "very-well-poised series");
        t /= f;
        for (cplx b : spec.b) {
            cplx g = 1.0 - a * base / b * bj;
            check_den(g, "very-well-poised series");
            t *= (1.0 - b * bj) / g;
        }
        t *= spec.z;
        acc.add(t * (1.0 - a * std::pow(base, 2 * j)) / (1.0 - a));
    }
    return acc.value();
}

}  // namespace ellq

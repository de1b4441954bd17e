#include <doctest.h>

#include "ellq/dynrep.hpp"
#include "ellq/theta.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace ellq;
using testing_support::Draw;
using testing_support::rel;

namespace {
const ModularParams mp = ModularParams::make(0.5, 3.0);

double max_of(const std::vector<NamedResidual>& v) {
    double m = 0.0;
    for (auto& r : v) m = std::max(m, r.residual);
    return m;
}

// single diagonal coefficient of op on v_m, with its shift
std::pair<cplx, int> diagonal(const SlotOp& op, int m, cplx P) {
    cplx c = 0.0;
    int shift = 0, found = 0;
    for (auto& [key, val] : op.expand(P)) {
        auto [in, out, sh] = key;
        if (in == m && out == m && std::abs(val) > 0.0) {
            c += val;
            shift = sh;
            ++found;
        }
    }
    REQUIRE(found == 1);
    return {c, shift};
}
}  // namespace

TEST_CASE("phi_l") {
    CHECK(std::abs(phi_l(0.6, 1, mp) - oracle::phi1_0_6) < 1e-10);
    CHECK(std::abs(phi_l(cplx(0.3, 0.137), 2, mp) - oracle::phi2_cplx) < 1e-10);
    cplx u(0.37, 0.137);
    CHECK(rel(phi_l(u, 0, mp), -bracket(u + 0.5, mp)) < 1e-13);
    Draw d(41);
    for (int l = 1; l <= 3; ++l)
        for (int n = 0; n < 20; ++n) {
            cplx x = d.point();
            double h = (l + 1) / 2.0;
            CHECK(rel(phi_l(x, l, mp) * phi_l(x - 1.0, l, mp), bracket(x - h, mp) * bracket(x + h, mp)) < 1e-9);
        }
}

TEST_CASE("amplitudes") {
    Amp f([](cplx P) { return P * P; });
    cplx P(0.3, 0.2);
    CHECK(f.shifted(1.0).shifted(2.0)(P) == f.shifted(3.0)(P));
    CHECK(Amp()(P) == cplx(1.0));
    CHECK((Amp() * f)(P) == f(P));
    CHECK((f + Amp::constant(2.0))(P) == f(P) + 2.0);
}

TEST_CASE("operator composition") {
    cplx v(0.1, 0.0), u(0.4, 0.137), P(1.3, 0.137);
    SlotOp b1 = entry_op(Entry::beta, u, 2, v, mp), b2 = entry_op(Entry::beta, u + 1.0, 2, v, mp);
    for (auto& [key, val] : (b1 * b2).expand(P)) {
        if (std::abs(val) == 0.0) continue;
        CHECK(std::get<2>(key) == -2);
    }
    SlotOp id = identity_op(2);
    CHECK(op_residual(b1 * id - b1, {P, cplx(-0.4, 0.137)}, {&b1}) < 1e-15);
    SlotOp d1 = entry_op(Entry::delta, u, 2, v, mp), d2 = entry_op(Entry::delta, cplx(-0.3, 0.137), 2, v, mp);
    CHECK(op_residual(d1 * d2 - d2 * d1, {P}, {&d1}) < 1e-12);
}

TEST_CASE("entry images on small modules") {
    cplx v(0.2, 0.0), u(0.45, 0.137), P(1.3, 0.137);
    // gamma kills the highest weight vector
    for (auto& [key, val] : entry_op(Entry::gamma, u, 2, v, mp).expand(P))
        if (std::get<0>(key) == 0) CHECK(std::abs(val) < 1e-15);
    // l = 0: delta is e^{-Q} with coefficient 1
    auto [c0, sh0] = diagonal(entry_op(Entry::delta, u, 0, v, mp), 0, P);
    CHECK(std::abs(c0 - 1.0) < 1e-13);
    CHECK(sh0 == -1);
    // delta equals K^{-1}
    SlotOp d = entry_op(Entry::delta, u, 2, v, mp), ki = half_current_op(HalfCurrent::Kinv, u, 2, v, mp);
    CHECK(op_residual(d - ki, {P, cplx(-0.7, 0.137)}, {&d}) < 1e-12);
}

TEST_CASE("H on the highest weight vector") {
    cplx v(0.15, 0.0), P(1.3, 0.137);
    Draw d(42);
    for (int l = 1; l <= 3; ++l) {
        cplx u = d.point();
        auto [c, sh] = diagonal(half_current_op(HalfCurrent::H, u, l, v, mp), 0, P);
        CHECK(sh == 2);
        CHECK(rel(c, bracket(u - v + (l + 1) / 2.0, mp) / bracket(u - v - (l - 1) / 2.0, mp)) < 1e-12);
    }
}

TEST_CASE("exchange relations") {
    Draw d(43);
    for (int l = 1; l <= 3; ++l)
        for (int n = 0; n < 5; ++n) {
            auto res = rll_residuals(l, d.point(), d.point(), d.real(-0.5, 0.5), d.points(2), mp);
            CHECK(res.size() >= 14);
            CHECK(max_of(res) < 1e-8);
        }
    double neg = 1e300;
    for (int n = 0; n < 5; ++n)
        for (auto& r : rll_residuals(1, d.point(), d.point(), 0.1, d.points(2), mp, true))
            if (r.name == "alpha_beta") neg = std::min(neg, r.residual);
    CHECK(neg > 1e-3);
}

TEST_CASE("half-current relations") {
    Draw d(44);
    for (int l = 1; l <= 2; ++l)
        for (int n = 0; n < 5; ++n)
            CHECK(max_of(half_current_residuals(l, d.point(), d.point(), d.real(-0.5, 0.5), d.points(2), mp)) < 1e-8);
    cplx u(0.3, 0.137);
    CHECK_THROWS_AS(half_current_residuals(1, u, u, 0.1, {cplx(1.3, 0.137)}, mp), PoleError);
}

TEST_CASE("Hopf structure") {
    Draw d(45);
    for (int l = 1; l <= 3; ++l) {
        cplx u = d.point();
        double v = d.real(-0.5, 0.5);
        CHECK(max_of(antipode_residuals(l, u, v, d.points(2), mp)) < 1e-8);
        CHECK(max_of(counit_residuals(l, u, v, d.points(2), mp)) < 1e-8);
    }
    CHECK(coassociativity_residual(cplx(0.3, 0.137), 0.1, -0.2, 0.35, d.points(2), mp) < 1e-8);
}

TEST_CASE("Drinfeld polynomial") {
    Draw d(46);
    for (int l = 1; l <= 3; ++l) {
        DrinfeldCheck c = drinfeld_poly_check(l, d.point(), d.real(-0.5, 0.5), d.point(), mp);
        CHECK(c.ratio_residual < 1e-10);
        CHECK(c.periodicity_residual < 1e-10);
    }
    cplx u(0.3, 0.137), v = 0.1;
    CHECK(rel(drinfeld_poly(u + 1.0, 1, v, mp) / drinfeld_poly(u, 1, v, mp),
              bracket(u - v + 1.0, mp) / bracket(u - v, mp)) < 1e-12);
}

TEST_CASE("l = 1 gauge equivalence with the R-matrix") {
    Draw d(47);
    for (int n = 0; n < 10; ++n) {
        GaugeCheck g = l1_gauge_check(d.point(), d.real(-0.5, 0.5), d.point(), mp);
        CHECK(g.spread < 1e-8);
        CHECK(g.zero_pattern_ok);
    }
    CHECK(l1_gauge_check(cplx(0.3, 0.137), 0.1, cplx(1.3, 0.137), mp, 0.3).spread > 1e-2);
}

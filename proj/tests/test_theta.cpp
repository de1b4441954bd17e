#include <doctest.h>

#include <cmath>

#include "ellq/theta.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace ellq;
using testing_support::Draw;
using testing_support::rel;

namespace {
const ModularParams mp = ModularParams::make(0.5, 3.0);
}

TEST_CASE("qpoch values") {
    CHECK(qpoch(0.0, std::vector<cplx>{0.1}, 50) == cplx(1.0));
    CHECK(qpoch(1.0, std::vector<cplx>{0.1}, 50) == cplx(0.0));
    CHECK(std::abs(qpoch(0.5, std::vector<cplx>{0.1}, 50) - oracle::qpoch_half_tenth) < 1e-12);
    // two bases against nested one-base products
    cplx z(0.3, 0.1), a = 0.2, b = 0.35;
    cplx nested = 1.0;
    for (int i = 0; i < 60; ++i) nested *= qpoch(z * std::pow(a, i), b, 60);
    CHECK(rel(qpoch(z, {a, b}, 60), nested) < 1e-13);
    CHECK(rel(qpoch_finite(0.4, 0.5, 3), (1.0 - 0.4) * (1.0 - 0.2) * (1.0 - 0.1)) < 1e-15);
}

TEST_CASE("theta_big") {
    ModularParams m = ModularParams::make(0.5, oracle::r_for_p005);
    CHECK(std::abs(m.p - 0.05) < 1e-14);
    CHECK(std::abs(theta_big(1.0, m)) < 1e-15);
    CHECK(std::abs(theta_big(0.4, m) - oracle::theta_p005_0_4) < 1e-12);
    cplx z(0.3, 0.1);
    CHECK(std::abs(theta_big(m.p * z, m) * z + theta_big(z, m)) < 1e-13);
    // Jacobi triple product: Theta_p(z) = sum_n (-1)^n p^{n(n-1)/2} z^n
    cplx series = 0.0;
    for (int n = -30; n <= 30; ++n)
        series += (n % 2 == 0 ? 1.0 : -1.0) * std::pow(m.p, n * (n - 1) / 2.0) * std::pow(z, n);
    CHECK(rel(theta_big(z, m), series) < 1e-13);
    CHECK_THROWS_AS(theta_big(0.0, m), DomainError);
}

TEST_CASE("bracket oracles") {
    CHECK(std::abs(bracket(0.0, mp)) < 1e-15);
    CHECK(std::abs(bracket(0.3, mp) - oracle::bracket_0_3) < 1e-12);
    CHECK(std::abs(bracket(cplx(0.41, 0.137), mp) - oracle::bracket_cplx) < 1e-12);
    ModularParams m33 = ModularParams::make(0.5, 3.3);
    CHECK(std::abs(bracket(cplx(0.41, 0.137), m33) - oracle::bracket_r33_cplx) < 1e-12);
    CHECK(bracket_fact(cplx(0.2, 0.1), 0, mp) == cplx(1.0));
    CHECK(std::abs(bracket_fact(-2.0, 3, mp)) < 1e-15);
    CHECK(std::abs(bracket_fact(0.7, 4, mp) - oracle::bracket_fact_0_7_4) < 1e-12);
    // negative length continuation
    cplx u(0.3, 0.137);
    CHECK(rel(bracket_fact(u, -2, mp) * bracket_fact(u - 2.0, 2, mp), 1.0) < 1e-14);
}

TEST_CASE("upow and qpow") {
    CHECK(upow(cplx(0.7, 0.2), 0.0, mp) == cplx(1.0));
    CHECK(std::abs(upow(0.5, 1.0 / 6.0, mp) - std::exp(2 * 0.5 * (1.0 / 6.0) * std::log(0.5))) < 1e-15);
    CHECK(std::abs(qpow(2.0, mp) - 0.25) < 1e-15);
}

TEST_CASE("bracket properties over random draws") {
    Draw d(11);
    const cplx i(0.0, 1.0);
    for (int n = 0; n < 100; ++n) {
        cplx u = d.point();
        cplx b = bracket(u, mp);
        CHECK(std::abs(bracket(-u, mp) + b) / std::max(1.0, std::abs(b)) < 1e-8);
        CHECK(std::abs(bracket(u + mp.r, mp) + b) / std::max(1.0, std::abs(b)) < 1e-8);
        cplx tau_law = -std::exp(-M_PI * i * (2.0 * u / mp.r + mp.tau)) * b;
        CHECK(rel(bracket(u + mp.r * mp.tau, mp), tau_law) < 1e-8);
    }
}

TEST_CASE("tau shift needs the minus sign") {
    // negative control: the law without the sign fails
    const cplx i(0.0, 1.0);
    cplx u(0.4, 0.137);
    cplx no_sign = std::exp(-M_PI * i * (2.0 * u / mp.r + mp.tau)) * bracket(u, mp);
    CHECK(rel(bracket(u + mp.r * mp.tau, mp), no_sign) > 1e-3);
}

TEST_CASE("four-term addition identity") {
    Draw d(12);
    auto br = [](cplx x) { return bracket(x, mp); };
    for (int n = 0; n < 100; ++n) {
        cplx u = d.point(), v = d.point(), x = d.point(), y = d.point();
        cplx t1 = br(u + x) * br(u - x) * br(v + y) * br(v - y);
        cplx t2 = br(u + y) * br(u - y) * br(v + x) * br(v - x);
        cplx t3 = br(x - y) * br(x + y) * br(u + v) * br(u - v);
        CHECK(std::abs(t1 - t2 - t3) / std::max({1.0, std::abs(t1), std::abs(t2), std::abs(t3)}) < 1e-8);
    }
}

TEST_CASE("modular params validation") {
    CHECK_THROWS_AS(ModularParams::make(1.2, 3.0), DomainError);
    CHECK_THROWS_AS(ModularParams::make(0.5, 3.0, 0), DomainError);
    CHECK_THROWS_AS(ModularParams::make(0.5, -1.0), DomainError);
    CHECK(ModularParams::make(0.5, 3.0).elliptic_loop());
    CHECK(ModularParams::make(0.5, 3.0, 64, 1e-8).truncation_adequate());
}

TEST_CASE("complex literals") {
    CHECK(parse_cplx("1.3+0.137i") == cplx(1.3, 0.137));
    CHECK(parse_cplx("-2") == cplx(-2.0, 0.0));
    CHECK(parse_cplx("0.5i") == cplx(0.0, 0.5));
    CHECK(parse_cplx("1e-3-2e-1i") == cplx(1e-3, -0.2));
    CHECK_THROWS(parse_cplx("abc"));
    CHECK_THROWS(parse_cplx(""));
    CHECK(parse_cplx(format_cplx(cplx(0.1, -0.3))) == cplx(0.1, -0.3));
}

TEST_CASE("zero lattice detection") {
    long n = 0;
    CHECK(on_zero_lattice(6.0, mp, &n));
    CHECK(n == 2);
    CHECK_FALSE(on_zero_lattice(cplx(6.0, 0.1), mp));
}

#include <doctest.h>

#include "ellq/limits.hpp"
#include "ellq/series.hpp"
#include "ellq/theta.hpp"
#include "support.hpp"

using namespace ellq;
using testing_support::rel;

TEST_CASE("trigonometric blocks") {
    const cplx q = 0.5;
    // R+(u) at z -> 0 gives the constant matrix
    Block2 a = r_affine_block(1e-12, q), c = r_const_block(q);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(std::abs(a[i][j] - c[i][j]) < 1e-11);
    CHECK(std::abs(c[0][1] - (1.0 - q * q)) < 1e-15);
    // trig dynamical block at x -> 0 is the affine block
    Block2 t = r_trig_block(0.3, 1e-14, q), f = r_affine_block(0.3, q);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(std::abs(t[i][j] - f[i][j]) < 1e-12);
}

TEST_CASE("elliptic entries approach the trigonometric ones") {
    // b(u, s) at p = 1e-10 against the trigonometric middle entry
    const double q = 0.5, p = 1e-10;
    double r = std::log(p) / (2.0 * std::log(q));
    ModularParams mp = ModularParams::make(q, r);
    cplx u(0.4, 0.11), P(1.7, 0.137);
    Block2 e = r_stripped_block(u, P, mp);
    Block2 t = r_trig_block(std::exp(2.0 * u * std::log(q)), std::exp(2.0 * P * std::log(q)), q);
    CHECK(rel(e[0][0], t[0][0]) < 1e-6);
    CHECK(rel(e[1][1], t[1][1]) < 1e-6);
}

TEST_CASE("R-matrix degeneration chain") {
    auto stages = r_limit_chain(RChainInput{});
    CHECK(stages.size() == 8);
    for (const LimitStage& s : stages) {
        INFO(s.name);
        CHECK(s.deviations.size() == 3);
        CHECK(s.monotone());
        CHECK(s.final() < 1e-5);
    }
}

TEST_CASE("series degeneration chain") {
    V12ChainInput in;
    in.l1 = 3, in.l2 = 2, in.s = 1, in.m = 2, in.k = 1;
    for (const LimitStage& s : v12_chain(in)) {
        INFO(s.name);
        if (s.exact) {
            CHECK(s.final() < 1e-9);
        } else {
            CHECK(s.monotone());
            CHECK(s.final() < 1e-5);
        }
    }
    in.k = 3;
    CHECK_THROWS(v12_chain(in));
}

TEST_CASE("8W7 transformation and the q-Hahn identification") {
    const cplx P(1.3, 0.137), q = 0.5;
    CHECK(w87_transformation_residual(2, 2, 1, 2, 1, P, q) < 1e-10);
    CHECK(chain_4phi3_balance(2, 2, 1, 2, 1, P, q) < 1e-12);
    CHECK(chain_3phi2_as_q_hahn(2, 2, 1, 2, 1, q) < 1e-10);
}

TEST_CASE("orthogonal polynomials") {
    const cplx Q = 0.25;
    CHECK(q_hahn_orthogonality(0.3, 0.45, 3, Q) < 1e-10);
    for (int x = 0; x <= 3; ++x) CHECK(std::abs(q_hahn(0, x, 0.3, 0.45, 3, Q) - 1.0) < 1e-15);
    CHECK(q_racah_orthogonality(0.35, 0.4, 0.55, 3, Q) < 1e-10);
    CHECK(q_racah_duality(0.3, 0.45, 0.5, 0.6, 3, Q) < 1e-10);
    // q-Hahn at n = 1 from its definition
    const cplx al = 0.3, be = 0.45;
    const int N = 3, x = 2;
    cplx direct = 1.0 + (1.0 - 1.0 / Q) * (1.0 - al * be * Q * Q) * (1.0 - std::pow(Q, -x)) /
                            ((1.0 - al * Q) * (1.0 - std::pow(Q, -N)) * (1.0 - Q)) * Q;
    CHECK(rel(q_hahn(1, x, al, be, N, Q), direct) < 1e-13);
}

TEST_CASE("stage bookkeeping") {
    LimitStage s{"x", {1e-6, 1e-8, 1e-10}, {1e-6, 1e-8, 1e-10}, false};
    CHECK(s.monotone());
    CHECK(s.final() == 1e-10);
    LimitStage bad{"y", {1e-6, 1e-8, 1e-10}, {1e-6, 1e-5, 1e-10}, false};
    CHECK_FALSE(bad.monotone());
}

#pragma once

#include <complex>
#include <random>
#include <vector>

#include "ellq/params.hpp"

namespace testing_support {

using ellq::cplx;

inline double rel(cplx got, cplx want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

// Points in [-1.5, 1.5] + 0.137i, fixed seed per test.
struct Draw {
    std::mt19937_64 gen;
    explicit Draw(unsigned long long seed) : gen(seed) {}
    double real(double a, double b) { return std::uniform_real_distribution<double>(a, b)(gen); }
    cplx point() { return {real(-1.5, 1.5), 0.137}; }
    std::vector<cplx> points(int n) {
        std::vector<cplx> v;
        for (int i = 0; i < n; ++i) v.push_back(point());
        return v;
    }
};

}  // namespace testing_support

#include "ellq/suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <sstream>

#include "ellq/cgkit.hpp"
#include "ellq/dynrep.hpp"
#include "ellq/limits.hpp"
#include "ellq/rmatrix.hpp"
#include "ellq/series.hpp"
#include "ellq/theta.hpp"

namespace ellq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kRetries = 5;
constexpr double kNegativeThreshold = 1e-3;

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

class Sampler {
public:
    Sampler(std::uint64_t seed, const std::string& suite) : gen_(seed ^ fnv1a(suite)) {}

    // re in [-1.5, 1.5] with the fixed imaginary offset
    cplx point() { return {uniform(-1.5, 1.5), 0.137}; }
    double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(gen_); }
    int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(gen_); }
    std::vector<cplx> points(int n) {
        std::vector<cplx> v;
        for (int i = 0; i < n; ++i) v.push_back(point());
        return v;
    }

private:
    std::mt19937_64 gen_;
};

std::string kv(std::initializer_list<std::pair<const char*, std::string>> items) {
    std::string out;
    for (auto& [k, v] : items) {
        if (!out.empty()) out += ' ';
        out += std::string(k) + "=" + v;
    }
    return out;
}
std::string I(long v) { return std::to_string(v); }
std::string D(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

double rel_to_one(cplx got, cplx want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

class Builder {
public:
    Builder(std::string suite, std::uint64_t seed) : sampler(seed, suite), suite_(std::move(suite)) {}

    Sampler sampler;

    void add(const std::string& name, const std::string& inputs, double residual, double threshold,
             bool negative = false, const std::string& note = "") {
        Case c{suite_ + "." + name, inputs, residual, threshold, negative, false, note};
        if (std::isfinite(residual)) c.pass = negative ? residual > threshold : residual < threshold;
        cases_.push_back(c);
    }

    // Max of f over draws. A draw that throws a pole/domain error or returns a non-finite
    // value is redrawn up to kRetries times; after that the residual is inf.
    double max_over(int draws, const std::function<double(Sampler&)>& f, std::string& note) {
        double worst = 0.0;
        for (int i = 0; i < draws; ++i) {
            double v = attempt(f, note);
            if (!std::isfinite(v)) return kInf;
            worst = worst_of(worst, v);
        }
        return worst;
    }

    // Smallest value over draws, for negative controls.
    double min_over(int draws, const std::function<double(Sampler&)>& f, std::string& note) {
        double best = kInf;
        for (int i = 0; i < draws; ++i) {
            double v = attempt(f, note);
            if (!std::isfinite(v)) return kInf;
            best = std::min(best, v);
        }
        return best;
    }

    // Named residual families, maxed per name.
    std::map<std::string, double> max_named(int draws, const std::function<std::vector<NamedResidual>(Sampler&)>& f,
                                            std::string& note) {
        std::map<std::string, double> worst;
        for (int i = 0; i < draws; ++i) {
            bool ok = false;
            for (int t = 0; t <= kRetries && !ok; ++t) {
                try {
                    auto res = f(sampler);
                    bool finite = std::all_of(res.begin(), res.end(),
                                              [](const NamedResidual& r) { return std::isfinite(r.residual); });
                    if (!finite) {
                        note = "non-finite residual";
                        continue;
                    }
                    for (auto& r : res) worst[r.name] = std::max(worst[r.name], r.residual);
                    ok = true;
                } catch (const PoleError& e) {
                    note = e.what();
                } catch (const DomainError& e) {
                    note = e.what();
                }
            }
            if (!ok) {
                for (auto& [k, v] : worst) v = kInf;
                if (worst.empty()) worst["unevaluated"] = kInf;
                return worst;
            }
        }
        return worst;
    }

    std::vector<Case> finish() {
        std::sort(cases_.begin(), cases_.end(), [](const Case& a, const Case& b) {
            return a.name != b.name ? a.name < b.name : a.inputs < b.inputs;
        });
        return std::move(cases_);
    }

private:
    double attempt(const std::function<double(Sampler&)>& f, std::string& note) {
        for (int t = 0; t <= kRetries; ++t) {
            try {
                double v = f(sampler);
                if (std::isfinite(v)) return v;
                note = "non-finite residual";
            } catch (const PoleError& e) {
                note = e.what();
            } catch (const DomainError& e) {
                note = e.what();
            } catch (const NonTerminatingError& e) {
                note = e.what();
            }
        }
        return kInf;
    }

    std::string suite_;
    std::vector<Case> cases_;
};

struct Env {
    const SuiteConfig& cfg;
    ModularParams mp;
    Builder& b;
    int samples;
    double tol;
};

// ---------------------------------------------------------------------------

void theta_suite(Env& e) {
    const ModularParams& mp = e.mp;
    const int draws = 5 * e.samples;
    std::string note;
    auto br = [&](cplx u) { return bracket(u, mp); };
    std::string in = kv({{"draws", I(draws)}});

    double r1 = e.b.max_over(draws, [&](Sampler& s) {
        cplx u = s.point();
        return std::abs(br(u + mp.r) + br(u)) / std::max(1.0, std::abs(br(u)));
    }, note);
    e.b.add("quasi_period_r", in, r1, e.tol, false, note);

    note.clear();
    double r2 = e.b.max_over(draws, [&](Sampler& s) {
        cplx u = s.point();
        const cplx i(0.0, 1.0);
        cplx want = -std::exp(-M_PI * i * (2.0 * u / mp.r + mp.tau)) * br(u);
        return rel_to_one(br(u + mp.r * mp.tau), want);
    }, note);
    e.b.add("quasi_period_tau", in, r2, e.tol, false, note);

    note.clear();
    double r3 = e.b.max_over(draws, [&](Sampler& s) {
        cplx u = s.point();
        return std::abs(br(-u) + br(u)) / std::max(1.0, std::abs(br(u)));
    }, note);
    e.b.add("oddness", in, r3, e.tol, false, note);

    note.clear();
    double r4 = e.b.max_over(draws, [&](Sampler& s) {
        cplx u = s.point(), v = s.point(), x = s.point(), y = s.point();
        cplx t1 = br(u + x) * br(u - x) * br(v + y) * br(v - y);
        cplx t2 = br(u + y) * br(u - y) * br(v + x) * br(v - x);
        cplx t3 = br(x - y) * br(x + y) * br(u + v) * br(u - v);
        double scale = std::max({1.0, std::abs(t1), std::abs(t2), std::abs(t3)});
        return std::abs(t1 - t2 - t3) / scale;
    }, note);
    e.b.add("addition_identity", in, r4, e.tol, false, note);

    note.clear();
    double r5 = e.b.max_over(draws, [&](Sampler& s) {
        cplx u = s.point();
        int m = s.integer(1, 6);
        cplx direct = 1.0;
        for (int j = 0; j < m; ++j) direct *= br(u + double(j));
        return rel_to_one(bracket_fact(u, m, mp), direct);
    }, note);
    e.b.add("factorial_product", in, r5, e.tol, false, note);
}

void series_suite(Env& e) {
    const ModularParams& mp = e.mp;
    const int per_s = std::max(1, (3 * e.samples + 5) / 6);
    for (int s = 1; s <= 6; ++s) {
        std::string note;
        double res = e.b.max_over(per_s, [&](Sampler& S) {
            cplx al = S.point(), be = S.point(), ga = S.point(), de = S.point();
            return rel_to_one(elliptic_V(frenkel_turaev_spec(al, be, ga, de, s), mp),
                              frenkel_turaev_rhs(al, be, ga, de, s, mp));
        }, note);
        e.b.add("frenkel_turaev", kv({{"s", I(s)}, {"draws", I(per_s)}}), res, e.tol, false, note);
    }

    std::string note;
    double bal = e.b.max_over(e.samples, [&](Sampler& S) {
        cplx u = S.point(), P = S.point(), a = S.point();
        double worst = 0.0;
        for (int l1 = 1; l1 <= 3; ++l1)
            for (int l2 = 1; l2 <= 3; ++l2)
                for (int s = 0; s <= std::min(l1, l2); ++s) {
                    SingularVectorSpec sp{l1, l2, s, a};
                    for (int m = 0; m <= sp.l(); ++m)
                        for (int k = std::max(0, s + m - l2); k <= std::min(l1, s + m); ++k)
                            worst = worst_of(worst, check_balanced(cg_series_spec(sp, m, k, u, P), 1e-12).residual);
                }
        return worst;
    }, note);
    e.b.add("balancing_12V11", kv({{"draws", I(e.samples)}}), bal, 1e-12, false, note);

    note.clear();
    double term = e.b.max_over(e.samples, [&](Sampler& S) {
        int s = S.integer(1, 6);
        VSeriesSpec v = frenkel_turaev_spec(S.point(), S.point(), S.point(), S.point(), s);
        return std::abs(elliptic_V_term(v, termination_index(v) + 1, mp));
    }, note);
    e.b.add("termination", kv({{"draws", I(e.samples)}}), term, e.tol, false, note);

    note.clear();
    double zero = e.b.max_over(e.samples, [&](Sampler& S) {
        VSeriesSpec v{S.point(), {0.0, S.point(), S.point(), S.point(), S.point()}, 9};
        return std::abs(elliptic_V(v, mp) - 1.0);
    }, note);
    e.b.add("zero_parameter", kv({{"draws", I(e.samples)}}), zero, e.tol, false, note);
}

void rmatrix_suite(Env& e) {
    const ModularParams& mp = e.mp;
    ModularParams ms = ModularParams::make(mp.q, mp.r, mp.trunc_N, mp.tol, mp.r + 0.5);
    auto brs = [&](cplx u) { return bracket(u, ms, true); };
    auto br = [&](cplx u) { return bracket(u, ms); };
    const int draws = e.samples;
    std::string in = kv({{"r_star", "r+0.5"}, {"draws", I(draws)}});
    std::string note;

    e.b.add("rho_at_zero", kv({{"r_star", "r+0.5"}}), std::abs(rho_ratio(0.0, ms) - 1.0), e.tol);
    e.b.add("rho_at_one", kv({{"r_star", "r+0.5"}}), rel_to_one(rho_ratio(1.0, ms), brs(1.0) / br(1.0)), e.tol);
    double refl = e.b.max_over(draws, [&](Sampler& S) {
        cplx u = S.point();
        return std::abs(rho_ratio(u, ms) * rho_ratio(-u, ms) - 1.0);
    }, note);
    e.b.add("rho_reflection", in, refl, e.tol, false, note);
    note.clear();
    double shift = e.b.max_over(draws, [&](Sampler& S) {
        cplx u = S.point();
        return rel_to_one(rho_ratio(u, ms) * rho_ratio(u + 1.0, ms), brs(u + 1.0) / brs(u) * br(u) / br(u + 1.0));
    }, note);
    e.b.add("rho_shift", in, shift, e.tol, false, note);

    note.clear();
    double pattern = e.b.max_over(draws, [&](Sampler& S) {
        Mat4 M = r_matrix(S.point(), S.point(), mp);
        int bad = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                bool allowed = (i == j) || (i == 1 && j == 2) || (i == 2 && j == 1);
                if (allowed != (M[i][j] != 0.0)) ++bad;
            }
        return double(bad);
    }, note);
    e.b.add("zero_pattern", kv({{"draws", I(draws)}}), pattern, 0.5, false, note);

    const int dybe_draws = 5 * e.samples;
    auto dybe_case = [&](const ModularParams& m, const std::string& inputs) {
        std::string n;
        double res = e.b.max_over(dybe_draws, [&](Sampler& S) {
            return dybe_residual(S.point(), S.point(), S.point(), S.point(), m);
        }, n);
        e.b.add("dybe", inputs, res, e.tol, false, n);
    };
    dybe_case(mp, kv({{"q", D(mp.q.real())}, {"r", D(mp.r.real())}, {"draws", I(dybe_draws)}}));
    for (double q : {0.3, 0.5, 0.7})
        for (double r : {3.0, 5.0}) {
            if (q == mp.q.real() && r == mp.r.real() && mp.q.imag() == 0.0) continue;
            ModularParams m = ModularParams::make(q, r, mp.trunc_N, mp.tol);
            dybe_case(m, kv({{"q", D(q)}, {"r", D(r)}, {"draws", I(dybe_draws)}}));
        }

    note.clear();
    double neg = e.b.min_over(draws, [&](Sampler& S) {
        return dybe_residual(S.point(), S.point(), S.point(), S.point(), mp, true);
    }, note);
    e.b.add("dybe_negative_shift", kv({{"draws", I(draws)}}), neg, 1e-2, true, note);
}

void rll_suite(Env& e) {
    const ModularParams& mp = e.mp;
    for (int l = 1; l <= 3; ++l) {
        std::string note;
        auto worst = e.b.max_named(e.samples, [&](Sampler& S) {
            cplx u1 = S.point(), u2 = S.point();
            double v = S.uniform(-0.5, 0.5);
            return rll_residuals(l, u1, u2, v, S.points(2), mp);
        }, note);
        for (auto& [name, res] : worst)
            e.b.add(name, kv({{"l", I(l)}, {"draws", I(e.samples)}}), res, e.tol, false, res < kInf ? "" : note);
    }
    std::string note;
    double neg = e.b.min_over(e.samples, [&](Sampler& S) {
        cplx u1 = S.point(), u2 = S.point();
        for (auto& r : rll_residuals(1, u1, u2, 0.1, S.points(2), mp, true))
            if (r.name == "alpha_beta") return r.residual;
        return 0.0;
    }, note);
    e.b.add("alpha_beta_negative_swap", kv({{"l", "1"}, {"draws", I(e.samples)}}), neg, kNegativeThreshold, true, note);

    note.clear();
    double spread = e.b.max_over(e.samples, [&](Sampler& S) {
        return l1_gauge_check(S.point(), S.uniform(-0.5, 0.5), S.point(), mp).spread;
    }, note);
    e.b.add("gauge_spread", kv({{"l", "1"}, {"draws", I(e.samples)}}), spread, e.tol, false, note);
    note.clear();
    double zp = e.b.max_over(e.samples, [&](Sampler& S) {
        return l1_gauge_check(S.point(), S.uniform(-0.5, 0.5), S.point(), mp).zero_pattern_ok ? 0.0 : 1.0;
    }, note);
    e.b.add("gauge_zero_pattern", kv({{"l", "1"}, {"draws", I(e.samples)}}), zp, 0.5, false, note);
    note.clear();
    double gneg = e.b.min_over(e.samples, [&](Sampler& S) {
        return l1_gauge_check(S.point(), S.uniform(-0.5, 0.5), S.point(), mp, 0.3).spread;
    }, note);
    e.b.add("gauge_negative_v_offset", kv({{"l", "1"}, {"offset", "0.3"}, {"draws", I(e.samples)}}), gneg, 1e-2, true,
            note);
}

void halfcurrents_suite(Env& e) {
    const ModularParams& mp = e.mp;
    for (int l = 1; l <= 2; ++l) {
        std::string note;
        auto worst = e.b.max_named(e.samples, [&](Sampler& S) {
            cplx u1 = S.point(), u2 = S.point();
            return half_current_residuals(l, u1, u2, S.uniform(-0.5, 0.5), S.points(2), mp);
        }, note);
        for (auto& [name, res] : worst)
            e.b.add(name, kv({{"l", I(l)}, {"draws", I(e.samples)}}), res, e.tol, false, res < kInf ? "" : note);
    }
    for (int l = 1; l <= 3; ++l) {
        std::string note;
        double res = e.b.max_over(e.samples, [&](Sampler& S) {
            cplx u = S.point();
            double h = (l + 1) / 2.0;
            return rel_to_one(phi_l(u, l, mp) * phi_l(u - 1.0, l, mp), bracket(u - h, mp) * bracket(u + h, mp));
        }, note);
        e.b.add("phi_product", kv({{"l", I(l)}, {"draws", I(e.samples)}}), res, 1e-9, false, note);
    }
}

void hopf_suite(Env& e) {
    const ModularParams& mp = e.mp;
    for (int l = 1; l <= 3; ++l) {
        std::string note;
        auto worst = e.b.max_named(e.samples, [&](Sampler& S) {
            cplx u = S.point();
            double v = S.uniform(-0.5, 0.5);
            auto res = antipode_residuals(l, u, v, S.points(2), mp);
            auto cu = counit_residuals(l, u, v, S.points(2), mp);
            res.insert(res.end(), cu.begin(), cu.end());
            return res;
        }, note);
        for (auto& [name, res] : worst)
            e.b.add(name, kv({{"l", I(l)}, {"draws", I(e.samples)}}), res, e.tol, false, res < kInf ? "" : note);
    }
    std::string note;
    double co = e.b.max_over(e.samples, [&](Sampler& S) {
        return coassociativity_residual(S.point(), S.uniform(-0.5, 0.5), S.uniform(-0.5, 0.5), S.uniform(-0.5, 0.5),
                                        S.points(2), mp);
    }, note);
    e.b.add("coassociativity", kv({{"l", "1,1,1"}, {"draws", I(e.samples)}}), co, e.tol, false, note);

    for (int l = 1; l <= 3; ++l) {
        note.clear();
        double as = e.b.max_over(e.samples, [&](Sampler& S) {
            double v = S.uniform(-0.5, 0.5);
            SlotOp A = entry_op(Entry::alpha, S.point(), l, v, mp);
            SlotOp B = entry_op(Entry::beta, S.point(), l, v, mp);
            SlotOp C = entry_op(Entry::gamma, S.point(), l, v, mp);
            SlotOp left = (A * B) * C;
            return op_residual(left - A * (B * C), S.points(2), {&left});
        }, note);
        e.b.add("atom_associativity", kv({{"l", I(l)}, {"draws", I(e.samples)}}), as, e.tol, false, note);
    }
}

std::string spec_inputs(int l1, int l2, int s, int draws) {
    return kv({{"l1", I(l1)}, {"l2", I(l2)}, {"s", I(s)}, {"draws", I(draws)}});
}

void cg_suite(Env& e) {
    const ModularParams& mp = e.mp;
    const int draws = std::max(1, e.samples / 4);
    for (int l1 = 1; l1 <= 3; ++l1)
        for (int l2 = 1; l2 <= 3; ++l2)
            for (int s = 0; s <= std::min(l1, l2); ++s) {
                std::string note;
                double cf = e.b.max_over(draws, [&](Sampler& S) {
                    SingularVectorSpec sp{l1, l2, s, S.point()};
                    cplx u = S.point(), P = S.point();
                    double worst = 0.0;
                    for (int m = 0; m <= sp.l(); ++m)
                        worst = worst_of(worst, compare_closed_form(sp, m, u, P, mp).max_rel_dev);
                    return worst;
                }, note);
                e.b.add("closed_form", spec_inputs(l1, l2, s, draws), cf, e.tol, false, note);

                note.clear();
                double van = e.b.max_over(draws, [&](Sampler& S) {
                    SingularVectorSpec sp{l1, l2, s, S.point()};
                    return vanish_check(sp, S.point(), S.points(2), mp);
                }, note);
                e.b.add("vanishing", spec_inputs(l1, l2, s, draws), van, e.tol, false, note);

                note.clear();
                auto ev = [&](bool alpha) {
                    return [&, alpha](Sampler& S) {
                        SingularVectorSpec sp{l1, l2, s, S.point()};
                        auto r = ad_eigen_residual(sp, S.points(2), S.points(2), mp);
                        return alpha ? r.alpha : r.delta;
                    };
                };
                double ea = e.b.max_over(draws, ev(true), note);
                e.b.add("eigen_alpha", spec_inputs(l1, l2, s, draws), ea, e.tol, false, note);
                note.clear();
                double ed = e.b.max_over(draws, ev(false), note);
                e.b.add("eigen_delta", spec_inputs(l1, l2, s, draws), ed, e.tol, false, note);
            }
    for (int l1 = 1; l1 <= 4; ++l1)
        for (int l2 = 1; l2 <= 4; ++l2)
            for (int s = 0; s <= std::min(l1, l2); ++s) {
                std::string note;
                double an = e.b.max_over(draws, [&](Sampler& S) {
                    SingularVectorSpec sp{l1, l2, s, S.point()};
                    return annihilation_residual(sp, S.points(4), S.points(2), mp);
                }, note);
                e.b.add("annihilation", spec_inputs(l1, l2, s, draws), an, e.tol, false, note);
                if (s == 0) continue;
                note.clear();
                double neg = e.b.min_over(draws, [&](Sampler& S) {
                    SingularVectorSpec sp{l1, l2, s, S.point()};
                    sp.b_offset = 0.25;
                    return annihilation_residual(sp, S.points(4), S.points(2), mp);
                }, note);
                e.b.add("annihilation_negative_offset", spec_inputs(l1, l2, s, draws) + " b_offset=0.25", neg,
                        kNegativeThreshold, true, note);
            }
    std::string note;
    double disp = e.b.min_over(draws, [&](Sampler& S) {
        SingularVectorSpec sp{2, 2, 1, S.point()};
        return compare_closed_form(sp, 1, S.point(), S.point(), mp, true).max_rel_dev;
    }, note);
    e.b.add("displayed_form_negative", spec_inputs(2, 2, 1, draws) + " m=1", disp, kNegativeThreshold, true, note);
}

void lemmas_suite(Env& e) {
    const ModularParams& mp = e.mp;
    const int draws = std::max(1, e.samples / 4);
    for (int l = 1; l <= 3; ++l)
        for (int L = 1; L <= 3; ++L) {
            std::string note;
            double r = e.b.max_over(draws, [&](Sampler& S) {
                return lemma_b1_residual(l, L, S.point(), S.point(), S.uniform(-0.5, 0.5), S.points(2), mp);
            }, note);
            e.b.add("b1_exchange", kv({{"l", I(l)}, {"L", I(L)}, {"draws", I(draws)}}), r, e.tol, false, note);
        }
    for (int l1 = 1; l1 <= 2; ++l1)
        for (int l2 = 1; l2 <= 2; ++l2)
            for (int m = 1; m <= 4; ++m) {
                std::string note;
                double r = e.b.max_over(draws, [&](Sampler& S) {
                    cplx a = S.point();
                    return lemma_b2_residual(l1, l2, m, S.point(), a, a + S.uniform(0.5, 1.5), S.points(2), mp);
                }, note);
                e.b.add("b2_coproduct_expansion", kv({{"l1", I(l1)}, {"l2", I(l2)}, {"m", I(m)}, {"draws", I(draws)}}),
                        r, e.tol, false, note);
            }
    {
        std::string note;
        double r = e.b.min_over(draws, [&](Sampler& S) {
            cplx a = S.point();
            return lemma_b2_residual(1, 1, 2, S.point(), a, a + 0.7, S.points(2), mp, true);
        }, note);
        e.b.add("b2_negative_slot2", kv({{"l1", "1"}, {"l2", "1"}, {"m", "2"}, {"draws", I(draws)}}), r,
                kNegativeThreshold, true, note);
    }
    for (int l1 = 1; l1 <= 3; ++l1) {
        std::string note;
        double r = e.b.max_over(draws, [&](Sampler& S) {
            cplx u = S.point(), a = S.point(), P = S.point();
            double worst = 0.0;
            for (int m = 1; m <= 3; ++m)
                for (int j = 0; j <= m; ++j)
                    for (int m1 = 0; m1 <= l1; ++m1) {
                        if (m1 + m - j > l1) continue;
                        cplx d = lemma_b3_direct(l1, m, j, m1, u, a, P, mp);
                        worst = worst_of(worst, rel_to_one(lemma_b3_closed(l1, m, j, m1, u, a, P, mp), d));
                    }
            return worst;
        }, note);
        e.b.add("b3_slot1_word", kv({{"l1", I(l1)}, {"draws", I(draws)}}), r, e.tol, false, note);
    }
    for (int l2 = 1; l2 <= 3; ++l2) {
        std::string note;
        double r = e.b.max_over(draws, [&](Sampler& S) {
            cplx u = S.point(), b = S.point(), P = S.point();
            double worst = 0.0;
            for (int s = 0; s <= l2; ++s)
                for (int m = 1; m <= 3; ++m)
                    for (int j = 0; j <= m; ++j)
                        for (int m1 = 0; m1 <= s; ++m1) {
                            int k = m1 + m - j, m2o = m + s - k;
                            if (m2o < 0 || m2o > l2 || s - m1 > l2) continue;
                            cplx d = lemma_b4_direct(l2, s, m, j, m1, u, b, P, mp);
                            worst = worst_of(worst, rel_to_one(lemma_b4_closed(l2, s, m, j, m1, u, b, P, mp), d));
                        }
            return worst;
        }, note);
        e.b.add("b4_slot2_word", kv({{"l2", I(l2)}, {"draws", I(draws)}}), r, e.tol, false, note);
    }
    {
        std::string note;
        double r = e.b.max_over(e.samples, [&](Sampler& S) {
            cplx P = S.point();
            double worst = 0.0;
            for (int m = 0; m <= 6; ++m)
                for (int j = 0; j <= m; ++j)
                    worst = worst_of(worst, rel_to_one(ell_binom_D(m, j, P, mp), ell_binom_D_recursive(m, j, P, mp)));
            return worst;
        }, note);
        e.b.add("binomial_recursion", kv({{"m_max", "6"}, {"draws", I(e.samples)}}), r, e.tol, false, note);
        note.clear();
        double edges = e.b.max_over(e.samples, [&](Sampler& S) {
            cplx P = S.point();
            double worst = 0.0;
            for (int m = 0; m <= 6; ++m)
                worst = worst_of(worst_of(worst, std::abs(ell_binom_D(m, 0, P, mp) - 1.0)),
                                     std::abs(ell_binom_D(m, m, P, mp) - 1.0));
            return worst;
        }, note);
        e.b.add("binomial_edges", kv({{"m_max", "6"}, {"draws", I(e.samples)}}), edges, e.tol, false, note);
    }
    for (int l1 = 1; l1 <= 3; ++l1)
        for (int l2 = 1; l2 <= 3; ++l2)
            for (int s = 1; s <= std::min(l1, l2); ++s) {
                std::string note;
                double r = e.b.max_over(draws, [&](Sampler& S) {
                    cplx n(S.uniform(0.2, 0.8), 0.1), P = S.point();
                    return rel_to_one(elliptic_V(reduced_sum_spec(l1, l2, s, n, P), mp),
                                      reduced_sum_rhs(l1, l2, s, n, P, mp));
                }, note);
                e.b.add("reduced_sum_generic_n", spec_inputs(l1, l2, s, draws), r, e.tol, false, note);
                // The reduced form is 0/0 once n >= l2 - s + 2; there the full coefficient of
                // beta(u)..beta(u+l) v at k = l1 - s + n is checked instead.
                const int n_split = std::min(s, l2 - s + 1);
                note.clear();
                double z = e.b.max_over(draws, [&](Sampler& S) {
                    cplx P = S.point();
                    double worst = 0.0;
                    for (int n = 1; n <= n_split; ++n)
                        worst = worst_of(worst_of(worst, std::abs(reduced_sum_rhs(l1, l2, s, n, P, mp))),
                                         std::abs(elliptic_V(reduced_sum_spec(l1, l2, s, n, P), mp)));
                    return worst;
                }, note);
                e.b.add("reduced_sum_vanishes", spec_inputs(l1, l2, s, draws) + " n=1.." + I(n_split), z, e.tol, false,
                        note);
                if (n_split == s) continue;
                note.clear();
                double zc = e.b.max_over(draws, [&](Sampler& S) {
                    SingularVectorSpec sp{l1, l2, s, S.point()};
                    cplx u = S.point(), P = S.point();
                    double worst = 0.0;
                    for (int n = n_split + 1; n <= s; ++n) {
                        int k = l1 - s + n;
                        cplx ref = cg_closed_form(sp, sp.l(), k - 1, u, P, mp);
                        worst = worst_of(worst, std::abs(cg_closed_form(sp, sp.l() + 1, k, u, P, mp)) /
                                                    std::max(1.0, std::abs(ref)));
                    }
                    return worst;
                }, note);
                e.b.add("coefficient_vanishes_degenerate_n",
                        spec_inputs(l1, l2, s, draws) + " n=" + I(n_split + 1) + ".." + I(s), zc, e.tol, false, note);
            }
}

void submodule_suite(Env& e) {
    const ModularParams& mp = e.mp;
    const int draws = std::max(1, e.samples / 4);
    for (int l = 1; l <= 3; ++l) {
        std::string note;
        double ratio = e.b.max_over(e.samples, [&](Sampler& S) {
            return drinfeld_poly_check(l, S.point(), S.uniform(-0.5, 0.5), S.point(), mp).ratio_residual;
        }, note);
        e.b.add("drinfeld_ratio", kv({{"l", I(l)}, {"draws", I(e.samples)}}), ratio, e.tol, false, note);
        note.clear();
        double per = e.b.max_over(e.samples, [&](Sampler& S) {
            return drinfeld_poly_check(l, S.point(), S.uniform(-0.5, 0.5), S.point(), mp).periodicity_residual;
        }, note);
        e.b.add("drinfeld_periodicity", kv({{"l", I(l)}, {"draws", I(e.samples)}}), per, e.tol, false, note);
    }
    for (int l1 = 1; l1 <= 3; ++l1)
        for (int l2 = 1; l2 <= 3; ++l2)
            for (int s = 1; s <= std::min(l1, l2); ++s) {
                auto sample_spec = [&](Sampler& S) { return SingularVectorSpec{l1, l2, s, S.point()}; };
                std::string in = spec_inputs(l1, l2, s, draws), note;
                double rd = e.b.max_over(draws, [&](Sampler& S) {
                    auto sp = sample_spec(S);
                    cplx u = S.point();
                    return rel_to_one(submodule_eigen_from_D(sp, u, mp), submodule_eigenvalue(sp, u, mp));
                }, note);
                e.b.add("route_eigen_D", in, rd, e.tol, false, note);
                note.clear();
                double rc = e.b.max_over(draws, [&](Sampler& S) {
                    auto sp = sample_spec(S);
                    return submodule_eigen_coproduct_residual(sp, S.point(), S.points(2), mp);
                }, note);
                e.b.add("route_coproduct_H", in, rc, e.tol, false, note);
                note.clear();
                double ri = e.b.max_over(draws, [&](Sampler& S) {
                    auto sp = sample_spec(S);
                    cplx u = S.point();
                    return rel_to_one(submodule_eigen_isomorphism(sp, u, mp), submodule_eigenvalue(sp, u, mp));
                }, note);
                e.b.add("route_isomorphism", in, ri, e.tol, false, note);
                note.clear();
                double qe = e.b.max_over(draws, [&](Sampler& S) {
                    return quotient_eigen_residual(sample_spec(S), S.point(), S.points(2), mp);
                }, note);
                e.b.add("quotient_eigen", in, qe, e.tol, false, note);
                note.clear();
                double qf = e.b.max_over(draws, [&](Sampler& S) {
                    return quotient_factorization_residual(sample_spec(S), S.point(), mp);
                }, note);
                e.b.add("quotient_factorization", in, qf, e.tol, false, note);
                if (l2 != 1) continue;
                note.clear();
                double dl = e.b.max_over(draws, [&](Sampler& S) {
                    auto sp = sample_spec(S);
                    cplx u = S.point();
                    return rel_to_one(submodule_eigenvalue_displayed(sp, u, mp), submodule_eigenvalue(sp, u, mp));
                }, note);
                e.b.add("displayed_ratio_l2_1", in, dl, e.tol, false, note);
            }
}

void limits_suite(Env& e) {
    const cplx q = e.mp.q;
    const double numeric_thr = 1e-5, exact_thr = 1e-9;
    auto add_stage = [&](const LimitStage& st, const std::string& prefix, const std::string& inputs) {
        std::string sweep;
        for (double p : st.params) sweep += (sweep.empty() ? "" : ",") + D(p);
        if (st.exact) {
            e.b.add(prefix + st.name, inputs, st.final(), exact_thr);
        } else {
            bool mono = st.monotone();
            e.b.add(prefix + st.name, inputs + (inputs.empty() ? "" : " ") + "sweep=" + sweep, st.final(),
                    numeric_thr, false, mono ? "" : "deviation not monotone");
            if (!mono) {
                // a failed monotonicity check fails the case regardless of the final value
                e.b.add(prefix + st.name + "_monotone", inputs, 1.0, 0.5);
            }
        }
    };
    auto guarded = [&](const std::string& name, const std::string& inputs, auto&& fn) {
        try {
            fn();
        } catch (const std::exception& ex) {
            e.b.add(name, inputs, kInf, numeric_thr, false, ex.what());
        }
    };

    RChainInput rin;
    rin.q = q;
    rin.trunc_N = e.mp.trunc_N;
    guarded("r_chain", "", [&] {
        for (const LimitStage& st : r_limit_chain(rin)) add_stage(st, "r_chain.", "");
    });

    const int combos[][5] = {{2, 2, 1, 1, 1}, {2, 1, 1, 1, 1}, {3, 2, 1, 2, 1}, {3, 3, 2, 2, 1}};
    for (auto& c : combos) {
        V12ChainInput vin;
        vin.l1 = c[0], vin.l2 = c[1], vin.s = c[2], vin.m = c[3], vin.k = c[4];
        vin.q = q;
        vin.trunc_N = e.mp.trunc_N;
        std::string in = kv({{"l1", I(c[0])}, {"l2", I(c[1])}, {"s", I(c[2])}, {"m", I(c[3])}, {"k", I(c[4])}});
        guarded("v12_chain", in, [&] {
            for (const LimitStage& st : v12_chain(vin)) add_stage(st, "v12_chain.", in);
        });
    }

    double w = 0.0, bal = 0.0, hahn = 0.0;
    int used = 0, skipped = 0;
    const cplx P(1.3, 0.137);
    for (int l1 = 1; l1 <= 3; ++l1)
        for (int l2 = 1; l2 <= 3; ++l2)
            for (int s = 0; s <= std::min(l1, l2); ++s) {
                int l = l1 + l2 - 2 * s;
                for (int m = 0; m <= l; ++m)
                    for (int k = std::max(0, s + m - l2); k <= std::min({l1, s + m, m}); ++k) {
                        try {
                            w = std::max(w, w87_transformation_residual(l1, l2, s, m, k, P, q));
                            bal = std::max(bal, chain_4phi3_balance(l1, l2, s, m, k, P, q));
                            hahn = std::max(hahn, chain_3phi2_as_q_hahn(l1, l2, s, m, k, q));
                            ++used;
                        } catch (const PoleError&) {
                            ++skipped;
                        }
                    }
            }
    std::string grid = kv({{"cases", I(used)}, {"degenerate_skipped", I(skipped)}});
    e.b.add("w87_equals_4phi3_grid", grid, w, exact_thr);
    e.b.add("chain_4phi3_balanced", grid, bal, exact_thr);
    e.b.add("chain_3phi2_is_q_hahn", grid, hahn, exact_thr);

    const cplx Q = q * q;
    e.b.add("q_hahn_orthogonality", "N=3 alpha=0.3 beta=0.45 base=q^2", q_hahn_orthogonality(0.3, 0.45, 3, Q), exact_thr);
    double deg0 = 0.0;
    for (int x = 0; x <= 3; ++x) deg0 = std::max(deg0, std::abs(q_hahn(0, x, 0.3, 0.45, 3, Q) - 1.0));
    e.b.add("q_hahn_degree_zero", "N=3", deg0, exact_thr);
    e.b.add("q_racah_orthogonality", "N=3 beta=0.35 gamma=0.4 delta=0.55 base=q^2",
            q_racah_orthogonality(0.35, 0.4, 0.55, 3, Q), exact_thr);
    e.b.add("q_racah_duality", "N=3 alpha=0.3 beta=0.45 gamma=0.5 delta=0.6 base=q^2",
            q_racah_duality(0.3, 0.45, 0.5, 0.6, 3, Q), exact_thr);
}

using SuiteFn = void (*)(Env&);

const std::map<std::string, SuiteFn>& registry() {
    static const std::map<std::string, SuiteFn> m{
        {"theta", theta_suite},   {"series", series_suite}, {"rmatrix", rmatrix_suite},
        {"rll", rll_suite},       {"halfcurrents", halfcurrents_suite}, {"hopf", hopf_suite},
        {"cg", cg_suite},         {"lemmas", lemmas_suite}, {"submodule", submodule_suite},
        {"limits", limits_suite},
    };
    return m;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"theta", "series", "rmatrix", "rll",       "halfcurrents",
                                                "hopf",  "cg",     "lemmas",  "submodule", "limits"};
    return names;
}

double default_r(const std::string& suite) {
    if (suite == "cg" || suite == "lemmas" || suite == "submodule") return 3.3;
    return 3.0;
}

SuiteResult run_suite(const std::string& name, const SuiteConfig& cfg) {
    auto it = registry().find(name);
    if (it == registry().end()) throw UnknownSuite("unknown suite: " + name);
    if (cfg.samples < 1) throw DomainError("samples must be positive");
    double r = cfg.r.value_or(default_r(name));
    ModularParams mp = ModularParams::make(cfg.q, r, cfg.trunc_N, cfg.tol);
    Builder b(name, cfg.seed);
    Env env{cfg, mp, b, cfg.samples, cfg.tol};
    it->second(env);

    SuiteResult res;
    res.name = name;
    res.context = {cfg.q, r, cfg.trunc_N, cfg.tol, cfg.samples, cfg.seed};
    res.cases = b.finish();
    res.pass = std::all_of(res.cases.begin(), res.cases.end(), [](const Case& c) { return c.pass; });
    return res;
}

Report run_suites(const std::vector<std::string>& names, const SuiteConfig& cfg) {
    std::vector<std::string> expanded;
    for (const std::string& n : names) {
        if (n == "all") {
            expanded.insert(expanded.end(), suite_names().begin(), suite_names().end());
            continue;
        }
        if (!registry().count(n)) throw UnknownSuite("unknown suite: " + n);
        expanded.push_back(n);
    }
    Report rep;
    for (const std::string& n : expanded) rep.suites.push_back(run_suite(n, cfg));
    rep.pass = !rep.suites.empty() &&
               std::all_of(rep.suites.begin(), rep.suites.end(), [](const SuiteResult& s) { return s.pass; });
    return rep;
}

}  // namespace ellq

#include "ellq/cgkit.hpp"

#include <algorithm>
#include <cmath>

#include "ellq/theta.hpp"

namespace ellq {

namespace {

SlotOp word(const std::vector<SlotOp>& ops, int l) {
    if (ops.empty()) return identity_op(l);
    SlotOp w = ops[0];
    for (std::size_t i = 1; i < ops.size(); ++i) w = w * ops[i];
    return w;
}

cplx matrix_element(const SlotOp& op, int in, int out, cplx P) {
    cplx s = 0.0;
    for (auto& [key, val] : op.expand(P))
        if (std::get<0>(key) == in && std::get<1>(key) == out) s += val;
    return s;
}

// Value c * eps^o with the common factor [eps]/eps dropped; all quantities here
// share it, so ratios of equal total order are exact.
struct Ord {
    cplx v = 1.0;
    int o = 0;
    Ord operator*(const Ord& t) const { return {v * t.v, o + t.o}; }
    Ord operator/(const Ord& t) const { return {v / t.v, o - t.o}; }
};

// [x + c eps]
Ord obr(cplx x, double c, const ModularParams& mp) {
    long n = 0;
    if (c != 0.0 && on_zero_lattice(x, mp, &n)) return {c * ((n % 2 == 0) ? 1.0 : -1.0), 1};
    return {bracket(x, mp), 0};
}

// [x + c eps]_n, negative n allowed
Ord ofact(cplx x, double c, int n, const ModularParams& mp) {
    Ord res;
    if (n < 0) {
        for (int j = 1; j <= -n; ++j) res = res / obr(x - double(j), c, mp);
        return res;
    }
    for (int j = 0; j < n; ++j) res = res * obr(x + double(j), c, mp);
    return res;
}

// prod_i phi_{l1}(u - a + i - 1) phi_{l2}(u - b2 + i - 1)
cplx phi_product(const SingularVectorSpec& sp, int m, cplx u, cplx b2, const ModularParams& mp) {
    cplx prod = 1.0;
    for (int i = 1; i <= m; ++i)
        prod *= phi_l(u - sp.a + double(i - 1), sp.l1, mp) * phi_l(u - b2 + double(i - 1), sp.l2, mp);
    return prod;
}

cplx eval_ord(const Ord& t) {
    if (t.o > 0) return 0.0;
    if (t.o < 0 || !std::isfinite(std::abs(t.v))) throw PoleError("closed-form coefficient is singular");
    return t.v;
}

}  // namespace

Amp coeff_C(const SingularVectorSpec& sp, int m1, const ModularParams& mp) {
    int s = sp.s, l1 = sp.l1, l2 = sp.l2;
    cplx C0 = sp.C0;
    cplx fixed = bracket_fact(double(l2 - s + 1), m1, mp) / bracket_fact(double(-l1), m1, mp);
    return Amp([=](cplx P) {
        return C0 * fixed * bracket_fact(P - double(l2 - s + m1), s - m1, mp) /
               bracket_fact(P + 1.0, s - m1, mp);
    });
}

TensorState singular_vector(const SingularVectorSpec& sp, const ModularParams& mp) {
    TensorState v;
    v.l1 = sp.l1;
    v.l2 = sp.l2;
    for (int m1 = 0; m1 <= sp.s; ++m1) v.terms.push_back({m1, sp.s - m1, coeff_C(sp, m1, mp)});
    return v;
}

double annihilation_residual(const SingularVectorSpec& sp, const std::vector<cplx>& us,
                             const std::vector<cplx>& Ps, const ModularParams& mp) {
    TensorState v = singular_vector(sp, mp);
    double worst = 0.0;
    for (cplx u : us) {
        TensorState g = apply(coproduct_op(Entry::gamma, u, sp.l1, sp.a, sp.l2, sp.b(), mp), v);
        for (cplx P : Ps) worst = worst_of(worst, g.norm(P) / v.norm(P));
    }
    return worst;
}

cplx eigen_A(const SingularVectorSpec& sp, cplx u, const ModularParams& mp) {
    double h1 = (sp.l1 + 1) / 2.0;
    return bracket(u - sp.a - h1, mp) * bracket(u - sp.a + h1, mp) /
           (phi_l(u - sp.a, sp.l1, mp) * phi_l(u - sp.b(), sp.l2, mp));
}

cplx eigen_D(const SingularVectorSpec& sp, cplx u, const ModularParams& mp) {
    cplx x = u - sp.a - (sp.l1 - 1) / 2.0 + double(sp.s);
    return bracket(x, mp) * bracket(x - double(sp.l2 + 1), mp) /
           (phi_l(u - sp.a, sp.l1, mp) * phi_l(u - sp.b(), sp.l2, mp));
}

EigenResidual ad_eigen_residual(const SingularVectorSpec& sp, const std::vector<cplx>& us,
                                const std::vector<cplx>& Ps, const ModularParams& mp) {
    TensorState v = singular_vector(sp, mp);
    EigenResidual res{0.0, 0.0};
    for (cplx u : us) {
        TensorState va = apply(coproduct_op(Entry::alpha, u, sp.l1, sp.a, sp.l2, sp.b(), mp), v);
        TensorState vd = apply(coproduct_op(Entry::delta, u, sp.l1, sp.a, sp.l2, sp.b(), mp), v);
        cplx A = eigen_A(sp, u, mp), D = eigen_D(sp, u, mp);
        for (cplx P : Ps) {
            auto v0 = v.eval(P), a = va.eval(P), d = vd.eval(P);
            double sa = 0.0, sd = 0.0, na = 0.0, nd = 0.0;
            for (auto& [key, val] : v0) {
                na = worst_of(na, std::abs(A * val));
                nd = worst_of(nd, std::abs(D * val));
            }
            auto diff = [&](const std::map<std::pair<int, int>, cplx>& got, cplx lam, double& out) {
                for (auto& [key, val] : got) {
                    auto it = v0.find(key);
                    cplx expect = it == v0.end() ? 0.0 : lam * it->second;
                    out = worst_of(out, std::abs(val - expect));
                }
            };
            diff(a, A, sa);
            diff(d, D, sd);
            res.alpha = std::max(res.alpha, sa / na);
            res.delta = std::max(res.delta, sd / nd);
        }
    }
    return res;
}

TensorState beta_power_bruteforce(const SingularVectorSpec& sp, int m, cplx u, const ModularParams& mp) {
    if (m < 0 || m > 8) throw DomainError("beta power length must be in 0..8");
    TensorState v = singular_vector(sp, mp);
    if (m == 0) return v;
    TensorOp T = coproduct_op(Entry::beta, u, sp.l1, sp.a, sp.l2, sp.b(), mp);
    for (int i = 1; i < m; ++i)
        T = tensor_compose(T, coproduct_op(Entry::beta, u + double(i), sp.l1, sp.a, sp.l2, sp.b(), mp));
    return apply(T, v);
}

VSeriesSpec cg_series_spec(const SingularVectorSpec& sp, int m, int k, cplx u, cplx P) {
    double l1 = sp.l1, l2 = sp.l2, s = sp.s, l = sp.l();
    double M = m, K = k;
    cplx a = sp.a;
    return {P + M - 2 * K,
            {cplx(-K), cplx(-s), P - K, cplx(l2 - s + 1), -u + a - (l1 - 1) / 2,
             u - a - l + (l1 - 1) / 2 + 2 * M - 2 * K + P, P + M - 2 * K + l1 + 1.0},
            11};
}

cplx cg_closed_form(const SingularVectorSpec& sp, int m, int k, cplx u, cplx P, const ModularParams& mp) {
    const int l1 = sp.l1, l2 = sp.l2, s = sp.s, l = sp.l();
    const double h1 = (l1 - 1) / 2.0;
    const cplx a = sp.a;
    auto B = [&](cplx x, double c) { return obr(x, c, mp); };
    auto F = [&](cplx x, double c, int n) { return ofact(x, c, n, mp); };

    Ord t{sp.C0 / phi_product(sp, m, u, sp.b(), mp), 0};
    t = t * B(P, 0) * B(P + double(m - 2 * k), 1) / (B(P + double(m - k), 1) * B(P - double(k), 0));
    t = t * Ord{(k % 2 == 0) ? 1.0 : -1.0, 0};
    t = t * F(P + double(m - 2 * k - l2 + s), 1, s) / F(P + double(m - 2 * k + 1), 1, s);
    t = t * F(u - a + (l1 + 1) / 2.0, 0, m - k) * F(u - a - double(l) + h1 + double(m - k) + P, 1, m - k);
    t = t * F(-u + a - h1 - double(m - k) - P, -1, k) * F(-u + a + double(l) - h1 - double(m) + 1.0, -1, k);
    t = t * F(double(-m), -1, k) * F(P - double(k), 0, m - k) * F(P + double(l1 - k + 1), 0, m - k) *
        F(double(s + 1), 0, m - k);
    t = t / (F(P - double(k) + 1.0, 0, m - k) * F(P, 0, m - k) * F(P + double(l1 - 2 * k + 1), 0, m));

    // 12V11 with each parameter carrying its eps coefficient
    struct Par {
        cplx x;
        double c;
    };
    VSeriesSpec vs = cg_series_spec(sp, m, k, u, P);
    const double cs[7] = {0, 0, 0, 0, 0, 2, 1};
    Par u0{vs.u0, 1};
    std::vector<Par> pars{u0};
    for (int i = 0; i < 7; ++i) pars.push_back({vs.us[i], cs[i]});
    int jmax = std::min(k, s);
    std::vector<Ord> terms;
    for (int j = 0; j <= jmax; ++j) {
        Ord tt = B(u0.x + 2.0 * double(j), u0.c) / B(u0.x, u0.c);
        for (const Par& pr : pars) tt = tt * F(pr.x, pr.c, j) / F(u0.x + 1.0 - pr.x, u0.c - pr.c, j);
        terms.push_back(tt);
    }
    int omin = terms[0].o;
    for (const Ord& tt : terms) omin = std::min(omin, tt.o);
    Ord V{0.0, omin};
    for (const Ord& tt : terms)
        if (tt.o == omin) V.v += tt.v;
    return eval_ord(t * V);
}

cplx cg_closed_form_displayed(const SingularVectorSpec& sp, int m, int k, cplx u, cplx P,
                              const ModularParams& mp) {
    const int l1 = sp.l1, l2 = sp.l2, s = sp.s, l = sp.l();
    const double h1 = (l1 - 1) / 2.0;
    const cplx a = sp.a;
    auto F = [&](cplx x, int n) { return bracket_fact(x, n, mp); };
    cplx t = sp.C0 * bracket(P, mp) / phi_product(sp, m, u, sp.a + sp.l() / 2.0, mp);
    t *= (k % 2 == 0 ? 1.0 : -1.0) * F(P + double(m - 2 * k - l2 + s), s) / F(P + double(m - 2 * k + 1), s);
    t *= F(u - a + (l1 + 1) / 2.0, m - k) * F(u - a - double(l) + h1 + double(m - k) + P, m - k);
    t *= F(-u + a - h1 - double(m - k) - P, k) * F(-u + a + double(l) - h1 - double(m) + 1.0, k);
    t *= F(double(-m), k) * F(P - double(k), m - k) * F(P + double(l1 - k + 1), m - k) * F(double(s + 1), m - k);
    t /= F(P - double(k) + 1.0, m - k) * F(P, m - k) * F(P + double(l1 - 2 * k + 1), m);
    return t * elliptic_V(cg_series_spec(sp, m, k, u, P), mp);
}

CGComparison compare_closed_form(const SingularVectorSpec& sp, int m, cplx u, cplx P,
                                 const ModularParams& mp, bool displayed) {
    auto bf = beta_power_bruteforce(sp, m, u, mp).eval(P);
    CGComparison out{0.0, 0};
    int kmin = std::max(0, sp.s + m - sp.l2), kmax = std::min(sp.l1, sp.s + m);
    for (int k = kmin; k <= kmax; ++k) {
        if (displayed && k > m) continue;
        auto it = bf.find({k, m + sp.s - k});
        cplx b = it == bf.end() ? 0.0 : it->second;
        cplx c = displayed ? cg_closed_form_displayed(sp, m, k, u, P, mp) : cg_closed_form(sp, m, k, u, P, mp);
        double scale = std::max({std::abs(b), std::abs(c), 1e-300});
        out.max_rel_dev = worst_of(out.max_rel_dev, std::abs(b - c) / scale);
        ++out.coefficients;
    }
    return out;
}

double vanish_check(const SingularVectorSpec& sp, cplx u, const std::vector<cplx>& Ps, const ModularParams& mp) {
    int l = sp.l();
    TensorState top = beta_power_bruteforce(sp, l, u, mp);
    TensorState past = beta_power_bruteforce(sp, l + 1, u, mp);
    double worst = 0.0;
    for (cplx P : Ps) worst = worst_of(worst, past.norm(P) / std::max(1.0, top.norm(P)));
    return worst;
}

VSeriesSpec reduced_sum_spec(int l1, int l2, int s, cplx n, cplx P) {
    double L1 = l1, L2 = l2, S = s;
    return {P - L1 + L2 + 1.0 - 2.0 * n,
            {-L1 + S - n, cplx(-S), P - L1 + S - n, cplx(L2 + 1 - S), P + L2 + 2.0 - 2.0 * n},
            9};
}

cplx reduced_sum_rhs(int l1, int l2, int s, cplx n, cplx P, const ModularParams& mp) {
    double L1 = l1, L2 = l2, S = s;
    auto F = [&](cplx x) { return bracket_fact(x, s, mp); };
    cplx num = F(1.0 - n) * F(-P + L1 - L2 - S - 1.0 + 2.0 * n) * F(cplx(L1 + L2 - 2 * S + 2)) * F(-P - S + n);
    cplx den = F(cplx(L1 - S + 1)) * F(-P - L2 - 1.0 + n) * F(L2 - S + 2.0 - n) * F(-P + L1 - 2 * S + 2.0 * n);
    if (den == 0.0) throw PoleError("reduced sum closed form is singular");
    return num / den;
}

cplx ell_binom_D(int m, int j, cplx P, const ModularParams& mp) {
    auto br = [&](cplx x) { return bracket(x, mp); };
    return bracket_fact(1.0, m, mp) / (bracket_fact(1.0, j, mp) * bracket_fact(1.0, m - j, mp)) * br(P) *
           br(P - double(m - 2 * j)) / (br(P + double(j)) * br(P - double(m - j)));
}

cplx ell_binom_D_recursive(int m, int j, cplx P, const ModularParams& mp) {
    auto br = [&](cplx x) { return bracket(x, mp); };
    cplx D = 1.0;
    for (int i = 1; i <= j; ++i) {
        double M = m, I = i;
        D *= br(P - M + I - 1.0) * br(P - M + 2 * I) * br(cplx(M - I + 1)) * br(P + I - 1.0) /
             (br(P - M + I) * br(P - M + 2 * (I - 1)) * br(P + I) * br(cplx(I)));
    }
    return D;
}

double lemma_b1_residual(int l, int L, cplx u, cplx v1, cplx v, const std::vector<cplx>& Ps,
                         const ModularParams& mp) {
    auto br = [mp](cplx x) { return bracket(x, mp); };
    std::vector<cplx> vk;
    for (int k = 0; k < L; ++k) vk.push_back(v1 + double(k));
    std::vector<SlotOp> betas;
    for (cplx x : vk) betas.push_back(entry_op(Entry::beta, x, l, v, mp));
    SlotOp A = entry_op(Entry::alpha, u, l, v, mp);
    SlotOp lhs = A * word(betas, l);
    cplx vL = vk.back();
    SlotOp rhs = fP(l, [=](cplx P) {
                     return br(P + 1.0) * br(P - double(L)) * br(u - vL) /
                            (br(P) * br(P - double(L) + 1.0) * br(u - v1 + 1.0));
                 }) *
                 word(betas, l) * A;
    for (int k = 1; k <= L; ++k) {
        std::vector<SlotOp> ops = betas;
        ops[k - 1] = entry_op(Entry::alpha, vk[k - 1], l, v, mp);
        ops.push_back(entry_op(Entry::beta, u, l, v, mp));
        cplx vkk = vk[k - 1];
        rhs = rhs + fP(l, [=](cplx P) {
                        return br(P + 1.0) * br(P - double(k) + 1.0 - u + vkk) * br(1.0) /
                               (br(P) * br(u - v1 + 1.0) * br(P - double(k) + 2.0));
                    }) *
                        word(ops, l);
    }
    return op_residual(lhs - rhs, Ps, {&lhs});
}

double lemma_b2_residual(int l1, int l2, int m, cplx u, cplx a, cplx b, const std::vector<cplx>& Ps,
                         const ModularParams& mp, bool dressing_in_slot2) {
    TensorOp T = coproduct_op(Entry::beta, u, l1, a, l2, b, mp);
    for (int i = 1; i < m; ++i) T = tensor_compose(T, coproduct_op(Entry::beta, u + double(i), l1, a, l2, b, mp));
    TensorOp R;
    for (int j = 0; j <= m; ++j) {
        std::vector<SlotOp> w1, w2;
        for (int i = 1; i <= j; ++i) w1.push_back(entry_op(Entry::alpha, u + double(m - i), l1, a, mp));
        for (int i = 1; i <= m - j; ++i) w1.push_back(entry_op(Entry::beta, u + double(m - j - i), l1, a, mp));
        for (int i = 0; i < m - j; ++i) w2.push_back(entry_op(Entry::delta, u + double(i), l2, b, mp));
        for (int i = 0; i < j; ++i) w2.push_back(entry_op(Entry::beta, u + double(m - j + i), l2, b, mp));
        SlotOp X = word(w1, l1), Y = word(w2, l2);
        auto D = [mp, m, j](cplx P) { return ell_binom_D(m, j, P, mp); };
        if (dressing_in_slot2)
            R.terms.emplace_back(X, fP(l2, D) * Y);
        else
            R.terms.emplace_back(fP(l1, D) * X, Y);
    }
    Amp F([mp](cplx P) { return bracket(P + 0.3, mp) / bracket(P - 0.7, mp); });
    double worst = 0.0;
    for (int m1 = 0; m1 <= l1; ++m1)
        for (int m2 = 0; m2 <= l2; ++m2) {
            TensorState st{l1, l2, {{m1, m2, F}}};
            TensorState lhs = apply(T, st), rhs = apply(R, st);
            for (cplx P : Ps) {
                auto d1 = lhs.eval(P), d2 = rhs.eval(P);
                double sc = 1e-300, dev = 0.0;
                for (auto& kv : d1) sc = worst_of(sc, std::abs(kv.second));
                for (auto& kv : d1) {
                    auto it = d2.find(kv.first);
                    dev = worst_of(dev, std::abs(kv.second - (it == d2.end() ? 0.0 : it->second)));
                }
                for (auto& kv : d2)
                    if (!d1.count(kv.first)) dev = worst_of(dev, std::abs(kv.second));
                if (d1.empty() && d2.empty()) continue;
                worst = worst_of(worst, dev / sc);
            }
        }
    return worst;
}

cplx lemma_b3_closed(int l1, int m, int j, int m1, cplx u, cplx a, cplx P, const ModularParams& mp) {
    int k = m1 + m - j;
    auto F = [&](cplx x, int n) { return bracket_fact(x, n, mp); };
    cplx prod = 1.0;
    for (int i = 1; i <= m; ++i) prod *= phi_l(u - a + double(i - 1), l1, mp);
    double sign = ((k + m1 + m) % 2 == 0) ? 1.0 : -1.0;
    double h1 = (l1 - 1) / 2.0;
    cplx t = sign * F(u - a + (l1 + 1) / 2.0, m - k) * F(P - double(k), m - k) * F(P + double(l1 - k + 1), m - k) *
             F(-u + a - double(m) - h1 - P + double(k), k) * F(1.0, k) /
             (prod * F(P, m - k) * F(P + double(l1 - 2 * k + 1), m));
    t *= F(-u + a - (l1 + 1) / 2.0 + 1.0, m1) * F(P - double(2 * k - m), m1) * F(P + double(l1 + m - 2 * k + 1), m1) /
         (F(P + double(m - k), m1) * F(u - a + double(m) + h1 + P - double(2 * k) + 1.0, m1) * F(1.0, m1));
    return t;
}

cplx lemma_b3_direct(int l1, int m, int j, int m1, cplx u, cplx a, cplx P, const ModularParams& mp) {
    std::vector<SlotOp> ops;
    for (int i = 1; i <= j; ++i) ops.push_back(entry_op(Entry::alpha, u + double(m - i), l1, a, mp));
    for (int i = 1; i <= m - j; ++i) ops.push_back(entry_op(Entry::beta, u + double(m - j - i), l1, a, mp));
    return matrix_element(word(ops, l1), m1, m1 + m - j, P);
}

cplx lemma_b4_closed(int l2, int s, int m, int j, int m1, cplx u, cplx b, cplx P, const ModularParams& mp) {
    int k = m1 + m - j;
    auto F = [&](cplx x, int n) { return bracket_fact(x, n, mp); };
    cplx prod = 1.0;
    for (int i = 1; i <= m; ++i) prod *= phi_l(u - b + double(i - 1), l2, mp);
    double sign = ((m + k) % 2 == 0) ? 1.0 : -1.0;
    double g1 = (l2 - 1) / 2.0, g2 = (l2 + 1) / 2.0;
    cplx t = sign * F(-u + b + g1 - double(m + s) + 1.0, k) * F(u - b - g2 + double(m + s + 1 - k) + P, m - k) *
             F(double(s + 1), m - k) / (prod * F(P - double(k) + 1.0, m - k));
    t *= F(u - b - g2 + double(2 * m + s + 1 - 2 * k) + P, m1) * F(P - double(k) + 1.0, m1) * F(double(-s), m1) /
         (F(-u + b + g1 - double(m + s) + 1.0, m1) * F(P + double(m - 2 * k + 1), 2 * m1));
    return t;
}

cplx lemma_b4_direct(int l2, int s, int m, int j, int m1, cplx u, cplx b, cplx P, const ModularParams& mp) {
    int k = m1 + m - j;
    int m2 = s - m1, m2o = m + s - k;
    std::vector<SlotOp> ops;
    for (int i = 0; i < m - j; ++i) ops.push_back(entry_op(Entry::delta, u + double(i), l2, b, mp));
    for (int i = 0; i < j; ++i) ops.push_back(entry_op(Entry::beta, u + double(m - j + i), l2, b, mp));
    int nu = l2 - 2 * m2o;
    return matrix_element(word(ops, l2), m2, m2o, P - double(nu));
}

// ---- submodule eigenvalues ----

cplx submodule_eigenvalue(const SingularVectorSpec& sp, cplx u, const ModularParams& mp) {
    cplx x = u - sp.a - (sp.l1 - 1) / 2.0;
    double h = (sp.l1 + 1) / 2.0;
    return bracket(u - sp.a - h, mp) * bracket(u - sp.a + h, mp) /
           (bracket(x + double(sp.s), mp) * bracket(x + double(sp.s - sp.l2 - 1), mp));
}

cplx submodule_eigenvalue_displayed(const SingularVectorSpec& sp, cplx u, const ModularParams& mp) {
    double h = (sp.l1 + 1) / 2.0;
    return bracket(u - sp.a - h, mp) * bracket(u - sp.a + h, mp) /
           (bracket(u - sp.a - (sp.l1 - 1) / 2.0 + double(sp.s), mp) *
            bracket(u - sp.a - h - 1.0 + double(sp.s), mp));
}

cplx highest_ratio(cplx u, int l, cplx v, const ModularParams& mp) {
    return bracket(u - v + (l + 1) / 2.0, mp) / bracket(u - v - (l - 1) / 2.0, mp);
}

cplx submodule_eigen_from_D(const SingularVectorSpec& sp, cplx u, const ModularParams& mp) {
    return 1.0 / (eigen_D(sp, u, mp) * eigen_D(sp, u - 1.0, mp));
}

cplx submodule_eigen_isomorphism(const SingularVectorSpec& sp, cplx u, const ModularParams& mp) {
    return highest_ratio(u, sp.l1 - sp.s, sp.a - sp.s / 2.0, mp) *
           highest_ratio(u, sp.l2 - sp.s, sp.b() + sp.s / 2.0, mp);
}

namespace {

SlotOp power(const SlotOp& O, int j, int l) {
    SlotOp R = identity_op(l);
    for (int i = 0; i < j; ++i) R = R * O;
    return R;
}

// Delta(H(u)) at c = 0, truncated where E and F powers vanish on the modules.
TensorOp coproduct_H(cplx u, int l1, cplx a, int l2, cplx b, const ModularParams& mp) {
    auto K1 = [&](cplx w) { return half_current_op(HalfCurrent::K, w, l1, a, mp); };
    auto E1 = [&](cplx w) { return half_current_op(HalfCurrent::E, w, l1, a, mp); };
    auto H1 = half_current_op(HalfCurrent::H, u, l1, a, mp);
    auto K2 = [&](cplx w) { return half_current_op(HalfCurrent::K, w, l2, b, mp); };
    auto F2 = [&](cplx w) { return half_current_op(HalfCurrent::F, w, l2, b, mp); };
    auto H2 = half_current_op(HalfCurrent::H, u, l2, b, mp);
    TensorOp T;
    T.terms.emplace_back(H1, H2);
    int L = std::max(l1, l2) + 1;
    for (int j = 1; j <= L; ++j) {
        cplx sg = (j % 2 == 0) ? 1.0 : -1.0;
        T.terms.emplace_back(sg * (K1(u) * power(E1(u - 1.0), j, l1) * K1(u - 1.0)), H2 * power(F2(u - 1.0), j, l2));
        T.terms.emplace_back(sg * (power(E1(u), j, l1) * H1), K2(u) * power(F2(u), j, l2) * K2(u - 1.0));
    }
    for (int i = 1; i <= L; ++i)
        for (int j = 1; j <= L; ++j) {
            cplx sg = ((i + j) % 2 == 0) ? 1.0 : -1.0;
            T.terms.emplace_back(sg * (power(E1(u), i, l1) * K1(u) * power(E1(u - 1.0), j, l1) * K1(u - 1.0)),
                                 K2(u) * power(F2(u), i, l2) * K2(u - 1.0) * power(F2(u - 1.0), j, l2));
        }
    return T;
}

double state_deviation(const TensorState& got, const TensorState& ref, cplx lam, cplx P) {
    auto d = got.eval(P), r = ref.eval(P);
    double dev = 0.0, sc = 1e-300;
    // relative above magnitude 1 in lam, so a small eigenvalue does not amplify cancellation
    for (auto& kv : r) sc = worst_of(sc, std::max(1.0, std::abs(lam)) * std::abs(kv.second));
    for (auto& kv : d) {
        auto it = r.find(kv.first);
        dev = worst_of(dev, std::abs(kv.second - (it == r.end() ? 0.0 : lam * it->second)));
    }
    for (auto& kv : r)
        if (!d.count(kv.first)) dev = worst_of(dev, std::abs(lam * kv.second));
    return dev / sc;
}

}  // namespace

double submodule_eigen_coproduct_residual(const SingularVectorSpec& sp, cplx u, const std::vector<cplx>& Ps,
                                          const ModularParams& mp) {
    TensorState v = singular_vector(sp, mp);
    TensorState Hv = apply(coproduct_H(u, sp.l1, sp.a, sp.l2, sp.b(), mp), v);
    cplx lam = submodule_eigenvalue(sp, u, mp);
    double worst = 0.0;
    for (cplx P : Ps) worst = worst_of(worst, state_deviation(Hv, v, lam, P));
    return worst;
}

double quotient_eigen_residual(const SingularVectorSpec& sp, cplx u, const std::vector<cplx>& Ps,
                               const ModularParams& mp) {
    TensorState top{sp.l1, sp.l2, {{0, 0, Amp()}}};
    TensorState Hv = apply(coproduct_H(u, sp.l1, sp.a, sp.l2, sp.b(), mp), top);
    cplx lam = highest_ratio(u, sp.l1, sp.a, mp) * highest_ratio(u, sp.l2, sp.b(), mp);
    double worst = 0.0;
    for (cplx P : Ps) worst = worst_of(worst, state_deviation(Hv, top, lam, P));
    return worst;
}

double quotient_factorization_residual(const SingularVectorSpec& sp, cplx u, const ModularParams& mp) {
    cplx prod = drinfeld_poly(u + 1.0, sp.l1, sp.a, mp) * drinfeld_poly(u + 1.0, sp.l2, sp.b(), mp) /
                (drinfeld_poly(u, sp.l1, sp.a, mp) * drinfeld_poly(u, sp.l2, sp.b(), mp));
    double shift = (sp.l1 - sp.s + 1) / 2.0;
    cplx split = highest_ratio(u, sp.s - 1, sp.a + shift, mp) *
                 highest_ratio(u, sp.l1 + sp.l2 - sp.s + 1, sp.b() - shift, mp);
    return std::abs(prod - split) / std::max(1.0, std::abs(prod));
}

}  // namespace ellq

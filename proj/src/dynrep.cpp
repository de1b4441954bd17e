#include "ellq/dynrep.hpp"

#include <algorithm>
#include <cmath>

#include "ellq/rmatrix.hpp"
#include "ellq/theta.hpp"

namespace ellq {

// ---- Amp ----

Amp::Amp() : Amp(constant(1.0)) {}

Amp::Amp(Fn f) : f_(std::make_shared<const Fn>(std::move(f))) {}

Amp Amp::constant(cplx c) {
    Amp a{Fn([c](cplx) { return c; })};
    return a;
}

Amp Amp::shifted(double a) const {
    if (a == 0.0) return *this;
    auto f = f_;
    return Amp([f, a](cplx P) { return (*f)(P + a); });
}

Amp operator*(const Amp& x, const Amp& y) {
    auto f = x.f_, g = y.f_;
    return Amp([f, g](cplx P) { return (*f)(P) * (*g)(P); });
}

Amp operator+(const Amp& x, const Amp& y) {
    auto f = x.f_, g = y.f_;
    return Amp([f, g](cplx P) { return (*f)(P) + (*g)(P); });
}

Amp operator-(const Amp& x, const Amp& y) {
    auto f = x.f_, g = y.f_;
    return Amp([f, g](cplx P) { return (*f)(P) - (*g)(P); });
}

Amp operator*(cplx c, const Amp& x) {
    auto f = x.f_;
    return Amp([f, c](cplx P) { return c * (*f)(P); });
}

// ---- SlotOp ----

OpExpansion SlotOp::expand(cplx P) const {
    OpExpansion d;
    for (const Atom& a : atoms) d[{a.in, a.out, a.shift}] += a.coeff(P);
    return d;
}

SlotOp operator*(const SlotOp& A, const SlotOp& B) {
    SlotOp C;
    C.dim = A.dim;
    for (const Atom& a : A.atoms)
        for (const Atom& b : B.atoms) {
            if (b.out != a.in) continue;
            C.atoms.push_back({b.in, a.out, a.coeff * b.coeff.shifted(a.shift), a.shift + b.shift});
        }
    return C;
}

SlotOp operator+(const SlotOp& A, const SlotOp& B) {
    SlotOp C = A;
    C.dim = std::max(A.dim, B.dim);
    C.atoms.insert(C.atoms.end(), B.atoms.begin(), B.atoms.end());
    return C;
}

SlotOp operator*(cplx c, const SlotOp& A) {
    SlotOp C = A;
    for (Atom& a : C.atoms) a.coeff = c * a.coeff;
    return C;
}

SlotOp operator-(const SlotOp& A) { return cplx(-1.0) * A; }

SlotOp operator-(const SlotOp& A, const SlotOp& B) { return A + (-B); }

SlotOp identity_op(int l) { return eQ(l, 0); }

SlotOp mult_op(int l, std::function<cplx(cplx, int)> g) {
    SlotOp op;
    op.dim = l + 1;
    auto shared = std::make_shared<const std::function<cplx(cplx, int)>>(std::move(g));
    for (int m = 0; m <= l; ++m) {
        int h = l - 2 * m;
        op.atoms.push_back({m, m, Amp([shared, h](cplx P) { return (*shared)(P, h); }), 0});
    }
    return op;
}

SlotOp eQ(int l, int a) {
    SlotOp op;
    op.dim = l + 1;
    for (int m = 0; m <= l; ++m) op.atoms.push_back({m, m, Amp(), a});
    return op;
}

SlotOp s_plus(int l) {
    SlotOp op;
    op.dim = l + 1;
    for (int m = 1; m <= l; ++m) op.atoms.push_back({m, m - 1, Amp(), 0});
    return op;
}

SlotOp s_minus(int l) {
    SlotOp op;
    op.dim = l + 1;
    for (int m = 0; m < l; ++m) op.atoms.push_back({m, m + 1, Amp(), 0});
    return op;
}

SlotOp fP(int l, std::function<cplx(cplx)> f) {
    return mult_op(l, [f = std::move(f)](cplx P, int) { return f(P); });
}

SlotOp fPh(int l, std::function<cplx(cplx)> f) {
    return mult_op(l, [f = std::move(f)](cplx P, int h) { return f(P + double(h)); });
}

// ---- evaluation representation ----

cplx rho_kl(int k, int l, cplx z, const ModularParams& mp) {
    auto Q = [&](double a) { return qpow(a, mp); };
    auto D = [&](cplx x) { return dprod(x, mp); };
    cplx p = mp.p;
    double kk = k, ll = l;
    cplx first = D(p * Q(kk - ll + 2) * z) * D(p * Q(-kk + ll + 2) * z) /
                 (D(p * Q(kk + ll + 2) * z) * D(p * Q(-kk - ll + 2) * z));
    cplx second = D(Q(kk + ll + 2) / z) * D(Q(-kk - ll + 2) / z) /
                  (D(Q(kk - ll + 2) / z) * D(Q(-kk + ll + 2) / z));
    return Q(kk * ll / 2.0) * first * second;
}

cplx phi_l(cplx u, int l, const ModularParams& mp) {
    cplx z = upow(u, 1.0, mp);
    cplx rho = rho_kl(1, l, z, mp);
    if (rho == 0.0) throw PoleError("rho^+_{1l} vanishes");
    return -upow(u, -double(l) / (2.0 * mp.r), mp) / rho * bracket(u + (l + 1) / 2.0, mp);
}

Entry entry_from_signs(int e1, int e2) {
    if (e1 > 0) return e2 > 0 ? Entry::alpha : Entry::beta;
    return e2 > 0 ? Entry::gamma : Entry::delta;
}

std::pair<int, int> entry_signs(Entry e) {
    switch (e) {
        case Entry::alpha: return {1, 1};
        case Entry::beta: return {1, -1};
        case Entry::gamma: return {-1, 1};
        default: return {-1, -1};
    }
}

const char* entry_name(Entry e) {
    switch (e) {
        case Entry::alpha: return "alpha";
        case Entry::beta: return "beta";
        case Entry::gamma: return "gamma";
        default: return "delta";
    }
}

SlotOp entry_op(Entry kind, cplx u, int l, cplx v, const ModularParams& mp) {
    cplx x = u - v;
    cplx ph = phi_l(x, l, mp);
    auto br = [mp](cplx y) { return bracket(y, mp); };
    double L = l;
    switch (kind) {
        case Entry::alpha:
            return mult_op(l, [=](cplx P, int h) {
                       return -br(x + (h + 1) / 2.0) * br(P - (L - h) / 2.0) * br(P + (L + h + 2) / 2.0) /
                              (ph * br(P) * br(P + double(h) + 1.0));
                   }) *
                   eQ(l, 1);
        case Entry::beta:
            return s_minus(l) *
                   mult_op(l, [=](cplx P, int h) {
                       return -br(x + (h - 1) / 2.0 + P) * br((L - h + 2) / 2.0) /
                              (ph * br(P + double(h) - 1.0));
                   }) *
                   eQ(l, -1);
        case Entry::gamma:
            return s_plus(l) *
                   mult_op(l, [=](cplx P, int h) {
                       return br(x - (h + 1) / 2.0 - P) * br((L + h + 2) / 2.0) / (ph * br(P));
                   }) *
                   eQ(l, 1);
        default:
            return mult_op(l, [=](cplx, int h) { return -br(x - (h - 1) / 2.0) / ph; }) * eQ(l, -1);
    }
}

SlotOp half_current_op(HalfCurrent kind, cplx u, int l, cplx v, const ModularParams& mp) {
    cplx x = u - v;
    auto br = [mp](cplx y) { return bracket(y, mp); };
    double L = l;
    switch (kind) {
        case HalfCurrent::K: {
            cplx ph = phi_l(x, l, mp);
            return mult_op(l, [=](cplx, int h) { return -ph / br(x - (h - 1) / 2.0); }) * eQ(l, 1);
        }
        case HalfCurrent::Kinv: {
            cplx ph = phi_l(x, l, mp);
            return eQ(l, -1) * mult_op(l, [=](cplx, int h) { return -br(x - (h - 1) / 2.0) / ph; });
        }
        case HalfCurrent::E:
            return -(eQ(l, 1) * s_plus(l) *
                     mult_op(l,
                             [=](cplx P, int h) {
                                 return br(x - (h + 1) / 2.0 - P) * br((L + h + 2) / 2.0) /
                                        (br(x - (h + 1) / 2.0) * br(P));
                             }) *
                     eQ(l, 1));
        case HalfCurrent::F:
            return s_minus(l) * mult_op(l, [=](cplx P, int h) {
                       return br(x + (h - 1) / 2.0 + P) * br((L - h + 2) / 2.0) /
                              (br(x - (h - 1) / 2.0) * br(P + double(h) - 1.0));
                   });
        default:
            return mult_op(l,
                           [=](cplx, int h) {
                               return br(x - (L + 1) / 2.0) * br(x + (L + 1) / 2.0) /
                                      (br(x - (h - 1) / 2.0) * br(x - (h + 1) / 2.0));
                           }) *
                   eQ(l, 2);
    }
}

SlotOp antipode_op(Entry kind, cplx u, int l, cplx v, const ModularParams& mp) {
    auto br = [mp](cplx y) { return bracket(y, mp); };
    switch (kind) {
        case Entry::alpha: return entry_op(Entry::delta, u - 1.0, l, v, mp);
        case Entry::beta:
            return fPh(l, [=](cplx P) { return -br(P + 1.0) / br(P); }) *
                   entry_op(Entry::beta, u - 1.0, l, v, mp);
        case Entry::gamma:
            return fP(l, [=](cplx P) { return -br(P) / br(P + 1.0); }) *
                   entry_op(Entry::gamma, u - 1.0, l, v, mp);
        default:
            return fPh(l, [=](cplx P) { return br(P + 1.0) / br(P); }) *
                   fP(l, [=](cplx P) { return br(P) / br(P + 1.0); }) *
                   entry_op(Entry::alpha, u - 1.0, l, v, mp);
    }
}

double op_residual(const SlotOp& op, const std::vector<cplx>& Ps, const std::vector<const SlotOp*>& scale) {
    double worst = 0.0;
    for (cplx P : Ps) {
        double sc = 1.0;
        for (const SlotOp* s : scale)
            for (auto& kv : s->expand(P)) sc = worst_of(sc, std::abs(kv.second));
        double m = 0.0;
        for (auto& kv : op.expand(P)) {
            double a = std::abs(kv.second);
            if (std::isnan(a)) return a;  // std::max would drop it
            m = worst_of(m, a);
        }
        if (std::isnan(sc)) return sc;
        worst = worst_of(worst, m / sc);
    }
    return worst;
}

// ---- tensor products ----

TensorOp tensor_compose(const TensorOp& A, const TensorOp& B) {
    TensorOp C;
    for (auto& [X1, Y1] : A.terms)
        for (auto& [X2, Y2] : B.terms) C.terms.emplace_back(X1 * X2, Y1 * Y2);
    return C;
}

TensorOp coproduct_op(Entry kind, cplx u, int l1, cplx a, int l2, cplx b, const ModularParams& mp) {
    auto [e1, e2] = entry_signs(kind);
    TensorOp T;
    for (int e : {1, -1})
        T.terms.emplace_back(entry_op(entry_from_signs(e1, e), u, l1, a, mp),
                             entry_op(entry_from_signs(e, e2), u, l2, b, mp));
    return T;
}

std::map<std::pair<int, int>, cplx> TensorState::eval(cplx P) const {
    std::map<std::pair<int, int>, cplx> d;
    for (const TensorTerm& t : terms) d[{t.m1, t.m2}] += t.F(P);
    return d;
}

double TensorState::norm(cplx P) const {
    double n = 0.0;
    for (auto& kv : eval(P)) n = worst_of(n, std::abs(kv.second));
    return n;
}

TensorState apply(const TensorOp& T, const TensorState& state) {
    TensorState out;
    out.l1 = state.l1;
    out.l2 = state.l2;
    for (auto& [X, Y] : T.terms)
        for (const TensorTerm& t : state.terms)
            for (const Atom& y : Y.atoms) {
                if (y.in != t.m2) continue;
                int nu = state.l2 - 2 * y.out;
                Amp ymoved = y.coeff.shifted(-nu);
                for (const Atom& x : X.atoms) {
                    if (x.in != t.m1) continue;
                    out.terms.push_back({x.out, y.out, x.coeff * t.F.shifted(x.shift) * ymoved});
                }
            }
    return out;
}

// ---- module trees ----

Module eval_module(int l) {
    Module m;
    for (int k = 0; k <= l; ++k) m.weights.push_back(l - 2 * k);
    return m;
}

Module tensor_module(const Module& A, const Module& B) {
    Module m;
    for (int a : A.weights)
        for (int b : B.weights) m.weights.push_back(a + b);
    return m;
}

SlotOp tensor_atoms(const SlotOp& X, const SlotOp& Y, const Module& A, const Module& B) {
    SlotOp op;
    int dB = B.dim();
    op.dim = A.dim() * dB;
    for (const Atom& x : X.atoms)
        for (const Atom& y : Y.atoms) {
            int nu_in = B.weights[y.in], nu_out = B.weights[y.out];
            op.atoms.push_back({x.in * dB + y.in, x.out * dB + y.out,
                                x.coeff.shifted(nu_out) * y.coeff, x.shift + nu_out - nu_in});
        }
    return op;
}

ModuleRep eval_rep(int l, cplx v, const ModularParams& mp) {
    return {eval_module(l), [l, v, mp](Entry e, cplx u) { return entry_op(e, u, l, v, mp); }};
}

ModuleRep counit_rep() {
    Module m{{0}};
    return {m, [](Entry e, cplx) {
                SlotOp op;
                op.dim = 1;
                if (e == Entry::alpha) op.atoms.push_back({0, 0, Amp(), 1});
                if (e == Entry::delta) op.atoms.push_back({0, 0, Amp(), -1});
                return op;
            }};
}

ModuleRep tensor_rep(const ModuleRep& A, const ModuleRep& B) {
    Module m = tensor_module(A.mod, B.mod);
    return {m, [A, B](Entry kind, cplx u) {
                auto [e1, e2] = entry_signs(kind);
                SlotOp sum;
                sum.dim = A.mod.dim() * B.mod.dim();
                for (int e : {1, -1})
                    sum = sum + tensor_atoms(A.L(entry_from_signs(e1, e), u),
                                             B.L(entry_from_signs(e, e2), u), A.mod, B.mod);
                return sum;
            }};
}

// ---- relation suites ----

namespace {

using RFun = cplx (*)(cplx, cplx, const ModularParams&);
cplx fb(cplx u, cplx s, const ModularParams& mp) { return r_entries(u, s, mp).b; }
cplx fc(cplx u, cplx s, const ModularParams& mp) { return r_entries(u, s, mp).c; }
cplx fbb(cplx u, cplx s, const ModularParams& mp) { return r_entries(u, s, mp).bbar; }
cplx fcb(cplx u, cplx s, const ModularParams& mp) { return r_entries(u, s, mp).cbar; }

NamedResidual rel(const std::string& name, const SlotOp& lhs, const SlotOp& rhs,
                  const std::vector<cplx>& Ps) {
    return {name, op_residual(lhs - rhs, Ps, {&lhs, &rhs})};
}

}  // namespace

std::vector<NamedResidual> rll_residuals(int l, cplx u1, cplx u2, cplx v, const std::vector<cplx>& Ps,
                                         const ModularParams& mp, bool swap_b_bbar) {
    cplx u = u1 - u2;
    auto A = [&](cplx x) { return entry_op(Entry::alpha, x, l, v, mp); };
    auto B = [&](cplx x) { return entry_op(Entry::beta, x, l, v, mp); };
    auto G = [&](cplx x) { return entry_op(Entry::gamma, x, l, v, mp); };
    auto D = [&](cplx x) { return entry_op(Entry::delta, x, l, v, mp); };
    auto c = [&](RFun f) { return fP(l, [=](cplx P) { return f(u, P, mp); }); };
    auto ch = [&](RFun f) { return fPh(l, [=](cplx P) { return f(u, P, mp); }); };

    std::vector<NamedResidual> out;
    out.push_back(rel("alpha_alpha", A(u1) * A(u2), A(u2) * A(u1), Ps));
    out.push_back(rel("delta_delta", D(u1) * D(u2), D(u2) * D(u1), Ps));
    out.push_back(rel("beta_beta", B(u1) * B(u2), B(u2) * B(u1), Ps));
    out.push_back(rel("gamma_gamma", G(u1) * G(u2), G(u2) * G(u1), Ps));
    out.push_back(rel("alpha_beta", A(u1) * B(u2),
                      c(fcb) * A(u2) * B(u1) + c(swap_b_bbar ? fbb : fb) * B(u2) * A(u1), Ps));
    out.push_back(rel("beta_alpha", B(u1) * A(u2), c(fbb) * A(u2) * B(u1) + c(fc) * B(u2) * A(u1), Ps));
    out.push_back(rel("gamma_delta", G(u1) * D(u2), c(fcb) * G(u2) * D(u1) + c(fb) * D(u2) * G(u1), Ps));
    out.push_back(rel("delta_gamma", D(u1) * G(u2), c(fbb) * G(u2) * D(u1) + c(fc) * D(u2) * G(u1), Ps));
    out.push_back(rel("gamma_alpha", ch(fc) * G(u1) * A(u2) + ch(fb) * A(u1) * G(u2), G(u2) * A(u1), Ps));
    out.push_back(rel("alpha_gamma", ch(fbb) * G(u1) * A(u2) + ch(fcb) * A(u1) * G(u2), A(u2) * G(u1), Ps));
    out.push_back(rel("delta_beta", ch(fc) * D(u1) * B(u2) + ch(fb) * B(u1) * D(u2), D(u2) * B(u1), Ps));
    out.push_back(rel("beta_delta", ch(fbb) * D(u1) * B(u2) + ch(fcb) * B(u1) * D(u2), B(u2) * D(u1), Ps));
    out.push_back(rel("mixed_1", ch(fc) * G(u1) * B(u2) + ch(fb) * A(u1) * D(u2),
                      c(fcb) * G(u2) * B(u1) + c(fb) * D(u2) * A(u1), Ps));
    out.push_back(rel("mixed_2", ch(fbb) * G(u1) * B(u2) + ch(fcb) * A(u1) * D(u2),
                      c(fb) * B(u2) * G(u1) + c(fcb) * A(u2) * D(u1), Ps));
    out.push_back(rel("mixed_3", ch(fb) * B(u1) * G(u2) + ch(fc) * D(u1) * A(u2),
                      c(fbb) * G(u2) * B(u1) + c(fc) * D(u2) * A(u1), Ps));
    out.push_back(rel("mixed_4", ch(fcb) * B(u1) * G(u2) + ch(fbb) * D(u1) * A(u2),
                      c(fc) * B(u2) * G(u1) + c(fbb) * A(u2) * D(u1), Ps));
    return out;
}

std::vector<NamedResidual> half_current_residuals(int l, cplx u1, cplx u2, cplx v,
                                                  const std::vector<cplx>& Ps, const ModularParams& mp) {
    cplx u = u1 - u2;
    auto br = [mp](cplx y) { return bracket(y, mp); };
    if (br(u) == 0.0 || on_zero_lattice(u, mp)) throw PoleError("half-current relations have a pole at [u1 - u2] = 0");
    auto K = [&](cplx x) { return half_current_op(HalfCurrent::K, x, l, v, mp); };
    auto Ki = [&](cplx x) { return half_current_op(HalfCurrent::Kinv, x, l, v, mp); };
    auto E = [&](cplx x) { return half_current_op(HalfCurrent::E, x, l, v, mp); };
    auto F = [&](cplx x) { return half_current_op(HalfCurrent::F, x, l, v, mp); };
    auto c = [&](std::function<cplx(cplx)> f) { return fP(l, std::move(f)); };
    auto ch = [&](std::function<cplx(cplx)> f) { return fPh(l, std::move(f)); };
    SlotOp K1 = K(u1), K2 = K(u2), E1 = E(u1), E2 = E(u2), F1 = F(u1), F2 = F(u2), K1i = Ki(u1);

    std::vector<NamedResidual> out;
    out.push_back(rel("gauss_alpha", entry_op(Entry::alpha, u1, l, v, mp), K(u1 - 1.0) + F1 * K1i * E1, Ps));
    out.push_back(rel("gauss_beta", entry_op(Entry::beta, u1, l, v, mp), F1 * K1i, Ps));
    out.push_back(rel("gauss_gamma", entry_op(Entry::gamma, u1, l, v, mp), K1i * E1, Ps));
    out.push_back(rel("gauss_delta", entry_op(Entry::delta, u1, l, v, mp), K1i, Ps));
    out.push_back(rel("K_inverse", K1 * K1i, identity_op(l), Ps));
    out.push_back(rel("hf1_KK", K1 * K2, K2 * K1, Ps));
    out.push_back(rel("hf2_KEKinv", K1 * E2 * K1i,
                      E2 * c([=](cplx) { return br(1.0 + u) / br(u); }) -
                          E1 * c([=](cplx P) { return br(1.0) / br(P) * br(P + u) / br(u); }),
                      Ps));
    out.push_back(rel("hf3_KinvFK", K1i * F2 * K1,
                      c([=](cplx) { return br(1.0 + u) / br(u); }) * F2 -
                          ch([=](cplx P) { return br(1.0) / br(P) * br(P - u) / br(u); }) * F1,
                      Ps));
    out.push_back(rel("hf4_EE",
                      c([=](cplx) { return br(1.0 - u) / br(u); }) * E1 * E2 +
                          c([=](cplx) { return br(1.0 + u) / br(u); }) * E2 * E1,
                      E1 * E1 * c([=](cplx P) { return br(1.0) / br(P - 2.0) * br(P - 2.0 + u) / br(u); }) +
                          E2 * E2 * c([=](cplx P) { return br(1.0) / br(P - 2.0) * br(P - 2.0 - u) / br(u); }),
                      Ps));
    out.push_back(rel("hf5_FF",
                      c([=](cplx) { return br(1.0 + u) / br(u); }) * F1 * F2 +
                          c([=](cplx) { return br(1.0 - u) / br(u); }) * F2 * F1,
                      F1 * F1 * ch([=](cplx P) { return br(1.0) / br(P - 2.0) * br(P - 2.0 - u) / br(u); }) +
                          F2 * F2 * ch([=](cplx P) { return br(1.0) / br(P - 2.0) * br(P - 2.0 + u) / br(u); }),
                      Ps));
    auto w = [=](cplx P) { return br(P - 1.0 - u) / br(u) * br(1.0) / br(P - 1.0); };
    out.push_back(rel("hf6_EF", E1 * F2 - F2 * E1, K(u2 - 1.0) * K2 * c(w) - K1 * K(u1 - 1.0) * ch(w), Ps));
    out.push_back(rel("H_equals_KK", half_current_op(HalfCurrent::H, u1, l, v, mp), K1 * K(u1 - 1.0), Ps));
    return out;
}

std::vector<NamedResidual> antipode_residuals(int l, cplx u, cplx v, const std::vector<cplx>& Ps,
                                              const ModularParams& mp) {
    std::vector<NamedResidual> out;
    for (int e1 : {1, -1})
        for (int e2 : {1, -1}) {
            SlotOp right, left;
            right.dim = left.dim = l + 1;
            for (int e : {1, -1}) {
                Entry a = entry_from_signs(e1, e), b = entry_from_signs(e, e2);
                right = right + entry_op(a, u, l, v, mp) * antipode_op(b, u, l, v, mp);
                left = left + antipode_op(a, u, l, v, mp) * entry_op(b, u, l, v, mp);
            }
            SlotOp target;
            target.dim = l + 1;
            if (e1 == e2) target = identity_op(l);
            std::string tag = entry_name(entry_from_signs(e1, e2));
            out.push_back(rel("L_S(L)_" + tag, right, target, Ps));
            out.push_back(rel("S(L)_L_" + tag, left, target, Ps));
        }
    return out;
}

std::vector<NamedResidual> counit_residuals(int l, cplx u, cplx v, const std::vector<cplx>& Ps,
                                            const ModularParams& mp) {
    ModuleRep A = eval_rep(l, v, mp), eps = counit_rep();
    ModuleRep right = tensor_rep(A, eps), left = tensor_rep(eps, A);
    std::vector<NamedResidual> out;
    for (Entry e : {Entry::alpha, Entry::beta, Entry::gamma, Entry::delta}) {
        SlotOp ref = A.L(e, u);
        out.push_back(rel(std::string("counit_right_") + entry_name(e), right.L(e, u), ref, Ps));
        out.push_back(rel(std::string("counit_left_") + entry_name(e), left.L(e, u), ref, Ps));
    }
    return out;
}

double coassociativity_residual(cplx u, cplx a, cplx b, cplx c, const std::vector<cplx>& Ps,
                                const ModularParams& mp) {
    ModuleRep A = eval_rep(1, a, mp), B = eval_rep(1, b, mp), C = eval_rep(1, c, mp);
    ModuleRep lhs = tensor_rep(tensor_rep(A, B), C), rhs = tensor_rep(A, tensor_rep(B, C));
    double worst = 0.0;
    for (Entry e : {Entry::alpha, Entry::beta, Entry::gamma, Entry::delta}) {
        SlotOp x = lhs.L(e, u), y = rhs.L(e, u);
        worst = worst_of(worst, op_residual(x - y, Ps, {&x, &y}));
    }
    return worst;
}

cplx drinfeld_poly(cplx u, int l, cplx v, const ModularParams& mp) {
    cplx res = 1.0;
    for (int i = 0; i < l; ++i) res *= bracket(u - v - (l - 1) / 2.0 + double(i), mp);
    return res;
}

DrinfeldCheck drinfeld_poly_check(int l, cplx u, cplx v, cplx P, const ModularParams& mp) {
    SlotOp H = half_current_op(HalfCurrent::H, u, l, v, mp);
    OpExpansion d = H.expand(P);
    cplx eig = d[{0, 0, 2}];
    cplx ratio = drinfeld_poly(u + 1.0, l, v, mp) / drinfeld_poly(u, l, v, mp);
    DrinfeldCheck out;
    out.ratio_residual = std::abs(eig - ratio) / std::max(1.0, std::abs(ratio));
    cplx Pu = drinfeld_poly(u, l, v, mp);
    cplx Pr = drinfeld_poly(u + mp.r, l, v, mp);
    double sign = (l % 2 == 0) ? 1.0 : -1.0;
    out.periodicity_residual = std::abs(Pr - sign * Pu) / std::max(1.0, std::abs(Pu));
    return out;
}

GaugeCheck l1_gauge_check(cplx u, cplx v, cplx P, const ModularParams& mp, double v_offset) {
    Mat4 Lm{};
    bool has[4][4] = {};
    for (int e1 : {1, -1})
        for (int e2 : {1, -1}) {
            SlotOp op = entry_op(entry_from_signs(e1, e2), u, 1, v, mp);
            int r0 = e1 > 0 ? 0 : 2, c0 = e2 > 0 ? 0 : 2;
            for (const Atom& a : op.atoms) {
                Lm[r0 + a.out][c0 + a.in] += a.coeff(P);
                has[r0 + a.out][c0 + a.in] = true;
            }
        }
    Mat4 R = r_matrix(u - v - v_offset, P, mp, RNorm::matrix_only);
    GaugeCheck g{0.0, true, 0.0};
    const int nz[6][2] = {{0, 0}, {1, 1}, {1, 2}, {2, 1}, {2, 2}, {3, 3}};
    g.gauge = R[0][0] / Lm[0][0];
    for (auto& ij : nz) {
        cplx ratio = R[ij[0]][ij[1]] / Lm[ij[0]][ij[1]];
        g.spread = worst_of(g.spread, std::abs(ratio / g.gauge - 1.0));
    }
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            bool nonzero = std::any_of(std::begin(nz), std::end(nz),
                                       [&](const int* ij) { return ij[0] == i && ij[1] == j; });
            if (!nonzero && (has[i][j] || R[i][j] != 0.0)) g.zero_pattern_ok = false;
        }
    return g;
}

}  // namespace ellq

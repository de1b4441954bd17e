#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "ellq/params.hpp"

namespace ellq {

// Evaluable map P -> complex. Copies share the underlying closure.
class Amp {
public:
    using Fn = std::function<cplx(cplx)>;

    Amp();  // constant 1
    explicit Amp(Fn f);
    static Amp constant(cplx c);

    cplx operator()(cplx P) const { return (*f_)(P); }

    // (T_a f)(P) = f(P + a)
    Amp shifted(double a) const;

    friend Amp operator*(const Amp& x, const Amp& y);
    friend Amp operator+(const Amp& x, const Amp& y);
    friend Amp operator-(const Amp& x, const Amp& y);
    friend Amp operator*(cplx c, const Amp& x);

private:
    std::shared_ptr<const Fn> f_;
};

// F(P)|in> -> coeff(P) F(P + shift)|out>
struct Atom {
    int in = 0;
    int out = 0;
    Amp coeff;
    int shift = 0;
};

using OpKey = std::tuple<int, int, int>;  // (in, out, shift)
using OpExpansion = std::map<OpKey, cplx>;

// Finite sum of atoms on a module of dimension dim.
struct SlotOp {
    int dim = 0;
    std::vector<Atom> atoms;

    // Coefficients summed per (in, out, shift) at P; two operators are equal iff these agree.
    OpExpansion expand(cplx P) const;
};

SlotOp operator*(const SlotOp& A, const SlotOp& B);  // A after B
SlotOp operator+(const SlotOp& A, const SlotOp& B);
SlotOp operator-(const SlotOp& A);
SlotOp operator-(const SlotOp& A, const SlotOp& B);
SlotOp operator*(cplx c, const SlotOp& A);

// Building blocks on V^(l); h is the weight l - 2m of the state the function multiplies.
SlotOp identity_op(int l);
SlotOp mult_op(int l, std::function<cplx(cplx P, int h)> g);
SlotOp eQ(int l, int a);
SlotOp s_plus(int l);   // m -> m-1
SlotOp s_minus(int l);  // m -> m+1
SlotOp fP(int l, std::function<cplx(cplx)> f);   // f(P)
SlotOp fPh(int l, std::function<cplx(cplx)> f);  // f(P+h)

// rho^+_{kl}(z) of the evaluation representation.
cplx rho_kl(int k, int l, cplx z, const ModularParams& mp);
// phi_l(u) = -z^{-l/2r} [u + (l+1)/2] / rho^+_{1l}(z)
cplx phi_l(cplx u, int l, const ModularParams& mp);

enum class Entry { alpha, beta, gamma, delta };  // L_{++}, L_{+-}, L_{-+}, L_{--}
Entry entry_from_signs(int e1, int e2);          // signs are +1 / -1
std::pair<int, int> entry_signs(Entry e);
const char* entry_name(Entry e);

// Image of an L-entry on V^(l)(q^{2v}).
SlotOp entry_op(Entry kind, cplx u, int l, cplx v, const ModularParams& mp);

enum class HalfCurrent { K, Kinv, E, F, H };
SlotOp half_current_op(HalfCurrent kind, cplx u, int l, cplx v, const ModularParams& mp);

// S(L) on V^(l).
SlotOp antipode_op(Entry kind, cplx u, int l, cplx v, const ModularParams& mp);

// max |expand(op)| over P samples, divided by max(1, |expand(scale_i)|).
double op_residual(const SlotOp& op, const std::vector<cplx>& Ps,
                   const std::vector<const SlotOp*>& scale = {});

// ---- tensor products in slot-1 normal form ----

struct TensorOp {
    std::vector<std::pair<SlotOp, SlotOp>> terms;
};

TensorOp tensor_compose(const TensorOp& A, const TensorOp& B);  // slot-local A after B

// Delta(L_{e1 e2}) = sum_e L_{e1 e} (x) L_{e e2}
TensorOp coproduct_op(Entry kind, cplx u, int l1, cplx a, int l2, cplx b, const ModularParams& mp);

struct TensorTerm {
    int m1, m2;
    Amp F;  // slot-1 amplitude
};

struct TensorState {
    int l1 = 0, l2 = 0;
    std::vector<TensorTerm> terms;

    std::map<std::pair<int, int>, cplx> eval(cplx P) const;
    double norm(cplx P) const;  // max |amplitude|
};

// Slot-2 coefficients g(P) next to an output state of weight nu move to slot 1 as g(P - nu).
TensorState apply(const TensorOp& T, const TensorState& state);

// ---- modules as trees, each with its own dynamical variable ----

// Atoms act on flat indices. For A (x) B the index is a * dim(B) + b and
// the own variable is P_A - nu_B.
struct Module {
    std::vector<int> weights;
    int dim() const { return int(weights.size()); }
};

Module eval_module(int l);
Module tensor_module(const Module& A, const Module& B);

// Composite atoms of the pair (X on A, Y on B) acting on A (x) B.
SlotOp tensor_atoms(const SlotOp& X, const SlotOp& Y, const Module& A, const Module& B);

struct ModuleRep {
    Module mod;
    std::function<SlotOp(Entry, cplx)> L;
};

ModuleRep eval_rep(int l, cplx v, const ModularParams& mp);
// V^(0) carrying the counit: alpha = e^Q, delta = e^{-Q}, beta = gamma = 0.
ModuleRep counit_rep();
ModuleRep tensor_rep(const ModuleRep& A, const ModuleRep& B);

// ---- relation suites ----

struct NamedResidual {
    std::string name;
    double residual;
};

// The fourteen component relations of the RLL relation at c = 0.
// swap_b_bbar replaces b by bbar in the alpha-beta exchange (negative control).
std::vector<NamedResidual> rll_residuals(int l, cplx u1, cplx u2, cplx v,
                                         const std::vector<cplx>& Ps, const ModularParams& mp,
                                         bool swap_b_bbar = false);

// Gauss decomposition, K K^{-1} = 1, the six half-current relations and H = K(u)K(u-1).
std::vector<NamedResidual> half_current_residuals(int l, cplx u1, cplx u2, cplx v,
                                                  const std::vector<cplx>& Ps,
                                                  const ModularParams& mp);

// sum_e L_{e1 e} S(L_{e e2}) and sum_e S(L_{e1 e}) L_{e e2} against delta_{e1 e2} Id.
std::vector<NamedResidual> antipode_residuals(int l, cplx u, cplx v, const std::vector<cplx>& Ps,
                                              const ModularParams& mp);

// Counit on either side of V^(l), and coassociativity on V^(1) x V^(1) x V^(1).
std::vector<NamedResidual> counit_residuals(int l, cplx u, cplx v, const std::vector<cplx>& Ps,
                                            const ModularParams& mp);
double coassociativity_residual(cplx u, cplx a, cplx b, cplx c, const std::vector<cplx>& Ps,
                                const ModularParams& mp);

// P_{l,v}(u) = prod_{i=0}^{l-1} [u - v - (l-1)/2 + i]
cplx drinfeld_poly(cplx u, int l, cplx v, const ModularParams& mp);

struct DrinfeldCheck {
    double ratio_residual;      // H on v_0 against P(u+1)/P(u)
    double periodicity_residual;  // P(u+r) against (-1)^l P(u)
};
DrinfeldCheck drinfeld_poly_check(int l, cplx u, cplx v, cplx P, const ModularParams& mp);

// Ratio spread of the l = 1 L-matrix against R^+(u - v - v_offset, P) over the six
// nonzero entries; zero_pattern_ok reports exact agreement of the vanishing entries.
struct GaugeCheck {
    double spread;
    bool zero_pattern_ok;
    cplx gauge;
};
GaugeCheck l1_gauge_check(cplx u, cplx v, cplx P, const ModularParams& mp, double v_offset = 0.0);

}  // namespace ellq

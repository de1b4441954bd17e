#pragma once

#include <vector>

#include "ellq/dynrep.hpp"
#include "ellq/series.hpp"

namespace ellq {

// Singular vector in V^(l1)(q^{2a}) (x) V^(l2)(q^{2b}); b = a + l/2 + 1 + b_offset with l = l1+l2-2s.
// A nonzero b_offset breaks the existence condition.
struct SingularVectorSpec {
    int l1 = 1, l2 = 1, s = 0;
    cplx a = 0.0;
    cplx C0 = 1.0;
    cplx b_offset = 0.0;

    int l() const { return l1 + l2 - 2 * s; }
    cplx b() const { return a + l() / 2.0 + 1.0 + b_offset; }
};

// C^s_{m1}(P) = C0 [P-l2+s-m1]_{s-m1} [l2-s+1]_{m1} / ([P+1]_{s-m1} [-l1]_{m1})
Amp coeff_C(const SingularVectorSpec& spec, int m1, const ModularParams& mp);

TensorState singular_vector(const SingularVectorSpec& spec, const ModularParams& mp);

// max over samples of |Delta(gamma(u)) v| / |v|
double annihilation_residual(const SingularVectorSpec& spec, const std::vector<cplx>& us,
                             const std::vector<cplx>& Ps, const ModularParams& mp);

cplx eigen_A(const SingularVectorSpec& spec, cplx u, const ModularParams& mp);
cplx eigen_D(const SingularVectorSpec& spec, cplx u, const ModularParams& mp);

struct EigenResidual {
    double alpha, delta;
};
EigenResidual ad_eigen_residual(const SingularVectorSpec& spec, const std::vector<cplx>& us,
                                const std::vector<cplx>& Ps, const ModularParams& mp);

// Delta(beta(u) beta(u+1) ... beta(u+m-1)) v^(s), composed slot-locally and applied once.
TensorState beta_power_bruteforce(const SingularVectorSpec& spec, int m, cplx u, const ModularParams& mp);

// Parameters of the 12V11 factor of the (m, k) coefficient.
VSeriesSpec cg_series_spec(const SingularVectorSpec& spec, int m, int k, cplx u, cplx P);

// Closed-form coefficient of v_k (x) v_{m+s-k} in the beta power. For k > m the
// 0/0 in the series is resolved as the limit m -> m + eps taken in every
// position that is not a factorial length.
cplx cg_closed_form(const SingularVectorSpec& spec, int m, int k, cplx u, cplx P, const ModularParams& mp);

// The closed form exactly as usually displayed: a bare [P] prefactor and
// phi_{l2}(u - a - l/2 + i - 1). Disagrees with the brute force; kept as a control.
cplx cg_closed_form_displayed(const SingularVectorSpec& spec, int m, int k, cplx u, cplx P,
                              const ModularParams& mp);

struct CGComparison {
    double max_rel_dev;  // over the admissible k
    int coefficients;
};
CGComparison compare_closed_form(const SingularVectorSpec& spec, int m, cplx u, cplx P,
                                 const ModularParams& mp, bool displayed = false);

// |beta power at m = l+1| relative to max(1, |beta power at m = l|)
double vanish_check(const SingularVectorSpec& spec, cplx u, const std::vector<cplx>& Ps,
                    const ModularParams& mp);

// The 10V9 left after substituting m = l+1, k = l1-s+n, and its product evaluation
// which carries [1-n]_s. n may be non-integer.
VSeriesSpec reduced_sum_spec(int l1, int l2, int s, cplx n, cplx P);
cplx reduced_sum_rhs(int l1, int l2, int s, cplx n, cplx P, const ModularParams& mp);

// D^m_j(P) = [1]_m/([1]_j [1]_{m-j}) [P][P-m+2j]/([P+j][P-m+j])
cplx ell_binom_D(int m, int j, cplx P, const ModularParams& mp);
// D^m_j from the ratio recursion in j with D^m_0 = 1.
cplx ell_binom_D_recursive(int m, int j, cplx P, const ModularParams& mp);

// alpha(u) beta(v_1)...beta(v_L) exchange with v_k = v_1 + k - 1, on V^(l).
double lemma_b1_residual(int l, int L, cplx u, cplx v1, cplx v, const std::vector<cplx>& Ps,
                         const ModularParams& mp);

// Delta of a beta string of length m against the D^m_j-weighted normal form, on all
// basis states with a nontrivial amplitude. dressing_in_slot2 moves D to slot 2 (fails).
double lemma_b2_residual(int l1, int l2, int m, cplx u, cplx a, cplx b, const std::vector<cplx>& Ps,
                         const ModularParams& mp, bool dressing_in_slot2 = false);

// Matrix elements of the slot-1 and slot-2 words against their closed forms; k = m1 + m - j.
cplx lemma_b3_closed(int l1, int m, int j, int m1, cplx u, cplx a, cplx P, const ModularParams& mp);
cplx lemma_b3_direct(int l1, int m, int j, int m1, cplx u, cplx a, cplx P, const ModularParams& mp);
cplx lemma_b4_closed(int l2, int s, int m, int j, int m1, cplx u, cplx b, cplx P, const ModularParams& mp);
cplx lemma_b4_direct(int l2, int s, int m, int j, int m1, cplx u, cplx b, cplx P, const ModularParams& mp);

// ---- submodule eigenvalues ----

// [u-a-(l1+1)/2][u-a+(l1+1)/2] / ([x+s][x+s-l2-1]), x = u-a-(l1-1)/2
cplx submodule_eigenvalue(const SingularVectorSpec& spec, cplx u, const ModularParams& mp);
// Same ratio with denominator [x+s][x+s-2]; agrees with the above only for l2 = 1.
cplx submodule_eigenvalue_displayed(const SingularVectorSpec& spec, cplx u, const ModularParams& mp);

// [u-v+(l+1)/2]/[u-v-(l-1)/2], the H-eigenvalue on the highest vector of V^(l)(q^{2v}).
cplx highest_ratio(cplx u, int l, cplx v, const ModularParams& mp);

// Route 1: 1/(D(u) D(u-1)).
cplx submodule_eigen_from_D(const SingularVectorSpec& spec, cplx u, const ModularParams& mp);
// Route 2: truncated coproduct of H applied to v^(s); returns |Delta(H) v - lambda v| / |lambda v|.
double submodule_eigen_coproduct_residual(const SingularVectorSpec& spec, cplx u,
                                          const std::vector<cplx>& Ps, const ModularParams& mp);
// Route 3: the submodule as V^(l1-s)(q^{2(a-s/2)}) (x) V^(l2-s)(q^{2(b+s/2)}).
cplx submodule_eigen_isomorphism(const SingularVectorSpec& spec, cplx u, const ModularParams& mp);

// Delta(H) on v_0 (x) v_0 of the full product against the product of single-module ratios.
double quotient_eigen_residual(const SingularVectorSpec& spec, cplx u, const std::vector<cplx>& Ps,
                               const ModularParams& mp);
// Drinfeld ratio of the product equals that of the quotient factors
// V^(s-1)(a+(l1-s+1)/2) and V^(l1+l2-s+1)(b-(l1-s+1)/2).
double quotient_factorization_residual(const SingularVectorSpec& spec, cplx u, const ModularParams& mp);

}  // namespace ellq

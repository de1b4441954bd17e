// Generated by tests/oracles/gen_oracles.py; do not edit by hand.
#pragma once
#include "ellq/params.hpp"
namespace oracle {
using ellq::cplx;
inline const cplx qpoch_half_tenth{0.47236244381657223655, 0.0};
inline const cplx bracket_0_3{0.40909268613287119347, 0.0};
inline const cplx bracket_fact_0_7_4{-0.41588292899665935919, 0.0};
inline const cplx bracket_cplx{0.55678027396614044883, 0.1733040735663621468};
inline const cplx rho_plus_0_8{-19.914991925807120174, 0.0};
inline const cplx phi1_0_6{0.39122131148974901628, 0.0};
inline const cplx phi2_cplx{0.30706156186592991747, -0.29449417059791262627};
inline const cplx r_b{0.095694093823572662906, -0.018972424861377522742};
inline const cplx r_c{0.7217015002030223402, -0.052707919179562095431};
inline const cplx r_cbar{0.86913503762636434737, 0.052726702601494671804};
inline const cplx r_bbar{0.40887546045158152614, 0.0};
inline const cplx binom_D31{1.0465648703018653676e-41, 9.8991821947730335091e-42};
inline const cplx ft_series{0.18308433453157642262, 0.049439704057663932137};
inline const cplx ft_product{0.18308433453157642262, 0.049439704057663932137};
inline const cplx theta_p005_0_4{0.48377300626318869429, 0.0};
inline const double r_for_p005 = 2.1609640474436811739;
inline const cplx bracket_r33_cplx{0.55881854232231959215, 0.1761900123668406268};
inline const cplx binom_D31_r33{-0.14818428984192968908, -0.12907689254699284479};
inline const cplx c10_over_c11_r33{-1.1457059624132472589, -0.15805996133599320209};
}  // namespace oracle

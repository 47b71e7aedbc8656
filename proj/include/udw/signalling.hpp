#ifndef UDW_SIGNALLING_HPP
#define UDW_SIGNALLING_HPP

#include "udw/model.hpp"
#include "udw/quadrature.hpp"

namespace udw {

struct TwoDetectorScenario {
  DetectorConfig a, b;  // b switches off before a switches on
  double d = 0.0;       // centre separation
};

// Signs of the detector phases e^{i sA OmegaA t1 + i sB OmegaB t2}. The
// estimator uses (+1, -1).
struct SigmaPairing {
  int a = +1, b = -1;
};

// (1/(2pi)^3) int dw (w/2) F_A F_B (4 pi sin(wd)/(wd)) kernel(w dt), with
// kernel e^{-iw dt} (RWA) or e^{-iw dt} - e^{iw dt} (full).
QuadratureResult commutator_expectation(CouplingModel model, double dt, double d, const TwoDetectorScenario& sc,
                                        const QuadratureConfig& q = {});

// lambda_A lambda_B int dt1 dt2 chi_A(t1) chi_B(t2) <[psi_A(t1), psi_B^dag(t2)]> e^{i Omega_A t1 - i Omega_B t2}
QuadratureResult c_ab(CouplingModel model, const TwoDetectorScenario& sc, const QuadratureConfig& q = {},
                      SigmaPairing pairing = {});

}  // namespace udw

#endif

#ifndef UDW_DELTA_COUPLING_HPP
#define UDW_DELTA_COUPLING_HPP

#include <vector>

#include "udw/model.hpp"
#include "udw/quadrature.hpp"

namespace udw {

// K = lambda~ sqrt((4 pi / (2 pi)^3) int dw (w/2) F(w)^2).
double capital_k(double lambda_tilde, const SmearingProfile& p, const QuadratureConfig& cfg = {});

// sin^2 K / K^2, equal to 1 - K^2/3 + ... near zero.
double sinc2(double K);

// Observables right after (t >= 0) a delta kick at t = 0. `cfg.switching`
// must be a DeltaKick; lambda~ = cfg.lambda * cfg.switching.eta.
QuadratureResult rwa_observable_delta(Observable obs, double x, double t, const DetectorConfig& cfg,
                                      const QuadratureConfig& q = {});
QuadratureResult full_observable_delta(Observable obs, double x, double t, const DetectorConfig& cfg,
                                       const QuadratureConfig& q = {});

// <psi_RWA | psi_full>.
cplx state_overlap(double K, cplx a_g, cplx a_e);

struct KickPoint {
  double x, value, abs_err;
};

struct KickResult {
  double K = 0.0;
  std::vector<KickPoint> profile;
};

KickResult kick_profile(CouplingModel model, Observable obs, const std::vector<double>& xs, double t,
                        const DetectorConfig& cfg, const QuadratureConfig& q = {});

}  // namespace udw

#endif

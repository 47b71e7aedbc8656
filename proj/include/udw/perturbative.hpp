#ifndef UDW_PERTURBATIVE_HPP
#define UDW_PERTURBATIVE_HPP

#include "udw/model.hpp"
#include "udw/quadrature.hpp"

// Second-order expectations for a top-hat switching. State e uses the gap as
// given, state g the gap with flipped sign.

namespace udw {

enum class DetectorState { Excited, Ground };

struct JContraction {
  cplx j0{}, jr{};
  double abs_err = 0.0;
  std::size_t n_evals = 0;
};

struct SecondOrderTerms {
  cplx j2_t00{};  // J2_00 + J2_rr
  cplx m2{};
  double err_j2 = 0.0, err_m2 = 0.0;
  std::size_t n_evals = 0;
};

JContraction j1(double x, double t, const DetectorConfig& cfg, DetectorState st, const QuadratureConfig& q = {});
QuadratureResult m1(double x, double t, const DetectorConfig& cfg, DetectorState st, const QuadratureConfig& q = {});
SecondOrderTerms j2_m2(double x, double t, const DetectorConfig& cfg, DetectorState st,
                       const QuadratureConfig& q = {});

QuadratureResult expectation_second_order(Observable obs, CouplingModel model, double x, double t,
                                          const DetectorConfig& cfg, const QuadratureConfig& q = {});

// lambda^2 | int d^3k F(k) / ((2 pi)^{3/2} sqrt(2 w)) W(w + Omega) |^2 with W
// the transform of a top hat of duration T centred on t = 0.
QuadratureResult first_order_difference(const DetectorConfig& cfg, double T, const QuadratureConfig& q = {});

// Ordered second-order scalar term for the symmetric window (-T, T) at t = T,
// split into the part that survives long times near the light cone and the
// part that averages out.
struct M2Split {
  QuadratureResult residual, uniform;
};

M2Split m2_split(double x, double T, const DetectorConfig& cfg, const QuadratureConfig& q = {});

}  // namespace udw

#endif

#ifndef UDW_WIGHTMAN_HPP
#define UDW_WIGHTMAN_HPP

#include <array>
#include <vector>

#include "udw/model.hpp"

// Closed form of the hard-sphere smeared two-point integral
//   P(s, x) = int d^3k F(k)/w e^{i w s - i k.x},
// which is the kernel every single-detector observable is built from, plus
// the switching-window integrals over it. Valid for any real s and x > 0.

namespace udw {

struct WightmanValue {
  cplx p;   // P
  cplx ps;  // dP/ds
  cplx px;  // dP/dx
};

WightmanValue smeared_wightman(double s, double x, double radius = 1.0);

// True when `route` selects the closed form for this profile. Throws
// std::invalid_argument for Route::Spacetime with a non-hard-sphere profile.
bool use_spacetime(const SmearingProfile& p, Route route);

// Values of s in [lo, hi] where P_s and P_x have log singularities and the
// imaginary part switches on or off.
std::vector<double> wightman_singular_times(double x, double radius, double lo, double hi);

// Window integrals of P for a top hat at evaluation time t >= t_off, for both
// signs of the gap (index 0: e^{+i Omega t1}, index 1: e^{-i Omega t1}):
//   m1[k] = int dt1 e^{i sigma Omega t1} P(t - t1)
//   j0[k] = same with -i dP/ds,  jr[k] = same with -i dP/dx
// and the ordered sine moments for sigma = +1
//   tri_phi = int int_{t2 < t1} sin(Omega (t1 - t2)) P(t - t1) P(t - t2)
//   tri_t00 = same with the sum over mu of (-i dP_mu)(-i dP_mu).
struct WindowedWightman {
  std::array<cplx, 2> m1{}, j0{}, jr{};
  cplx tri_phi{}, tri_t00{};
  double err_m1 = 0, err_j = 0, err_tri_phi = 0, err_tri_t00 = 0;
  std::size_t n_evals = 0;
};

WindowedWightman windowed_wightman(double x, double t, const SwitchingSpec& sw, double gap, double radius,
                                   bool ordered_terms);

}  // namespace udw

#endif

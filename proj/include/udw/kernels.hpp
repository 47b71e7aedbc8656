#ifndef UDW_KERNELS_HPP
#define UDW_KERNELS_HPP

#include <cmath>
#include <functional>
#include <numbers>

#include <Eigen/Core>

#include "udw/model.hpp"
#include "udw/quadrature.hpp"

namespace udw {

// Hard-sphere transform 4 pi (sin u - u cos u) / u^3 as a function of u = kR,
// elementwise on any Eigen array expression. A short series is used below
// u = 1e-2 where the closed form cancels.
template <typename Derived>
auto hard_sphere_ft(const Eigen::ArrayBase<Derived>& u) {
  using Scalar = typename Derived::Scalar;
  return u.unaryExpr([](Scalar v) {
    constexpr Scalar c = Scalar(4) * std::numbers::pi_v<Scalar>;
    if (std::abs(v) < Scalar(1e-2)) {
      const Scalar v2 = v * v;
      return c * (Scalar(1) / 3 - v2 / 30 + v2 * v2 / 840 - v2 * v2 * v2 / 45360);
    }
    return c * (std::sin(v) - v * std::cos(v)) / (v * v * v);
  });
}

double smearing_ft(const SmearingProfile& p, double k);
Eigen::ArrayXd smearing_ft(const SmearingProfile& p, const Eigen::ArrayXd& k);

// Fourier transform of 1/omega over k: 4 pi / r^2.
double nonlocal_kernel(double r);

// (2 pi / (i r)) int_0^{omega_max} (e^{i w r} - e^{-i w r}) e^{-eps w} dw.
double regularized_kernel_numeric(double r, double eps, double omega_max, QuadratureConfig cfg = {});

enum class RadialKernel { Sin, CosDeriv };

// Sin:      int d^3k g(w) e^{iwt - ik.x} = (4 pi / x) int_0^inf w g(w) e^{iwt} sin(w x) dw.
// CosDeriv: radial component of int d^3k k g(w) e^{iwt - ik.x}, i.e. i d/dx of the Sin value.
// `extra_phases` lists oscillation frequencies already present in g.
QuadratureResult radial_reduce(const BatchIntegrand& g, double x, double t, RadialKernel kernel,
                               const QuadratureConfig& cfg, std::span<const double> extra_phases = {},
                               std::span<const double> breakpoints = {});

// int dt chi(t) e^{-i nu t}. Top hat: series within delta_pole of nu = 0.
cplx window_ft(const SwitchingSpec& sw, double nu, double delta_pole = 1e-4);

// int dt chi(t) e^{-i (w - s Omega) t}, s = +1 or -1.
inline cplx time_window_ft(const SwitchingSpec& sw, double gap, double w, int s, double delta_pole = 1e-4) {
  return window_ft(sw, w - s * gap, delta_pole);
}

// Ordered double integral int dt1 int^{t1} dt2 chi(t1) chi(t2) e^{-i a t1 - i b t2}
// for a top hat, with the removable singularities at b = 0, a = 0, a + b = 0
// handled by series.
cplx ordered_window_ft(const SwitchingSpec& sw, double a, double b, double delta_pole = 1e-4);

struct NestedTimeIntegral {
  cplx first;   // e^{-i(w+Omega)t1 - i(w'-Omega)t2}
  cplx second;  // e^{-i(w-Omega)t2 - i(w'+Omega)t1}
  cplx sum() const { return first + second; }
};

NestedTimeIntegral nested_time_integral(const SwitchingSpec& sw, double gap, double w, double w2,
                                        double delta_pole = 1e-4);

// Radially reduced counter-rotating integrand for the symmetric window
// (-T, T) evaluated at t = T:
//   e^{i(w+w')T} sin(w x) sin(w' x) (4i / (Omega - w')) [A - B],
//   A = e^{i(w'-Omega)T} sin((w+Omega)T)/(w+Omega),  B = sin((w+w')T)/(w+w').
struct CounterRotatingI {
  cplx value;
  cplx a_term;  // the A part including all prefactors
  cplx b_term;  // the -B part including all prefactors
};

CounterRotatingI counter_rotating_I(double w, double w2, double T, double gap, double x, double delta_pole = 1e-4);

}  // namespace udw

#endif

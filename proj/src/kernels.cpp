#include "udw/kernels.hpp"

#include <algorithm>
#include <stdexcept>

namespace udw {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx I{0.0, 1.0};

// Linear interpolant of the tabulated profile, zero outside the table.
double profile_at(const SmearingProfile& p, double z) {
  const auto& zs = p.zeta;
  if (z < zs.front() || z > zs.back()) return 0.0;
  auto it = std::upper_bound(zs.begin(), zs.end(), z);
  if (it == zs.end()) return p.g.back();
  const std::size_t i = std::size_t(it - zs.begin());
  if (i == 0) return p.g.front();
  const double t = (z - zs[i - 1]) / (zs[i] - zs[i - 1]);
  return (1 - t) * p.g[i - 1] + t * p.g[i];
}

double sinc(double v) { return std::abs(v) < 1e-4 ? 1.0 - v * v / 6.0 : std::sin(v) / v; }

template <typename F>
double simpson(const F& f, double a, double b, double fa, double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6 * (fa + 4 * flm + fm);
  const double right = (b - m) / 6 * (fm + 4 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15 * tol)
    return left + right + (left + right - whole) / 15;
  return simpson(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         simpson(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

double tabulated_ft(const SmearingProfile& p, double k) {
  const double kr = k * p.radius;
  auto f = [&](double z) { return z * z * profile_at(p, z) * sinc(kr * z); };
  double total = 0.0;
  // piecewise-linear G has kinks at the samples; integrate segment by segment
  double a = 0.0;
  for (std::size_t i = 0; i <= p.zeta.size(); ++i) {
    const double b = i < p.zeta.size() ? p.zeta[i] : p.zeta.back();
    if (b <= a) continue;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6 * (fa + 4 * fm + fb);
    total += simpson(f, a, b, fa, fm, fb, whole, 1e-13 * std::max(1.0, std::abs(whole)), 30);
    a = b;
  }
  return 4 * kPi * total;
}

// int_0^T e^{-i c tau} d tau
cplx E(double c, double T, double delta) {
  const double ct = c * T;
  if (std::abs(c) < delta && std::abs(ct) < 0.5) {
    // T sum_n (-i c T)^n / (n+1)!, n <= 4
    const cplx z = -I * ct;
    return T * (1.0 + z / 2.0 + z * z / 6.0 + z * z * z / 24.0 + z * z * z * z / 120.0);
  }
  return (1.0 - std::exp(-I * ct)) / (I * c);
}

// int_0^T tau^k e^{-i a tau} d tau for k = 0..kmax
std::vector<cplx> moments(double a, double T, int kmax) {
  std::vector<cplx> m(std::size_t(kmax) + 1);
  if (std::abs(a * T) < 1.0) {
    for (int k = 0; k <= kmax; ++k) {
      cplx s{};
      cplx term = 1.0;  // (-i a)^j / j!
      for (int j = 0; j < 40; ++j) {
        const cplx add = term * std::pow(T, k + j + 1) / double(k + j + 1);
        s += add;
        if (std::abs(add) < 1e-18 * std::abs(s)) break;
        term *= -I * a / double(j + 1);
      }
      m[std::size_t(k)] = s;
    }
    return m;
  }
  m[0] = (1.0 - std::exp(-I * a * T)) / (I * a);
  for (int k = 1; k <= kmax; ++k)
    m[std::size_t(k)] = I * (std::pow(T, k) * std::exp(-I * a * T) - double(k) * m[std::size_t(k - 1)]) / a;
  return m;
}

}  // namespace

double smearing_ft(const SmearingProfile& p, double k) {
  if (k < 0) throw std::domain_error("smearing_ft: k must be >= 0");
  if (p.kind == SmearingKind::HardSphere) {
    Eigen::Array<double, 1, 1> u;
    u << k * p.radius;
    return hard_sphere_ft(u)(0);
  }
  return tabulated_ft(p, k);
}

Eigen::ArrayXd smearing_ft(const SmearingProfile& p, const Eigen::ArrayXd& k) {
  if ((k < 0).any()) throw std::domain_error("smearing_ft: k must be >= 0");
  if (p.kind == SmearingKind::HardSphere) return hard_sphere_ft((k * p.radius).eval());
  Eigen::ArrayXd out(k.size());
  for (Eigen::Index i = 0; i < k.size(); ++i) out[i] = tabulated_ft(p, k[i]);
  return out;
}

double nonlocal_kernel(double r) {
  if (!(r > 0)) throw std::domain_error("nonlocal_kernel: r must be positive");
  return 4 * kPi / (r * r);
}

double regularized_kernel_numeric(double r, double eps, double omega_max, QuadratureConfig cfg) {
  if (!(r > 0)) throw std::domain_error("regularized_kernel_numeric: r must be positive");
  if (!(eps > 0)) throw std::domain_error("regularized_kernel_numeric: eps must be positive");
  cfg.omega_max = omega_max;
  // (e^{iwr} - e^{-iwr}) / (i r) = 2 sin(wr) / r
  auto f = [=](const Eigen::ArrayXd& w) -> Eigen::ArrayXcd {
    return ((4 * kPi / r) * (w * r).sin() * (-eps * w).exp()).cast<cplx>();
  };
  const double ph[] = {r};
  return integrate_osc_1d(f, ph, cfg).value.real();
}

QuadratureResult radial_reduce(const BatchIntegrand& g, double x, double t, RadialKernel kernel,
                               const QuadratureConfig& cfg, std::span<const double> extra_phases,
                               std::span<const double> breakpoints) {
  if (!(x > 0)) throw std::domain_error("radial_reduce: |x| must be positive");
  double emax = 0.0;
  for (double a : extra_phases) emax = std::max(emax, std::abs(a));
  const double ph[] = {std::abs(t) + x + emax};
  BatchIntegrand f;
  if (kernel == RadialKernel::Sin) {
    f = [&, x, t](const Eigen::ArrayXd& w) -> Eigen::ArrayXcd {
      const Eigen::ArrayXcd phase = (w * t).cos().cast<cplx>() + I * (w * t).sin().cast<cplx>();
      return (4 * kPi / x) * (w * (w * x).sin()).cast<cplx>() * phase * g(w);
    };
  } else {
    f = [&, x, t](const Eigen::ArrayXd& w) -> Eigen::ArrayXcd {
      const Eigen::ArrayXcd phase = (w * t).cos().cast<cplx>() + I * (w * t).sin().cast<cplx>();
      const Eigen::ArrayXd d = w * (w * (w * x).cos() - (w * x).sin() / x);
      return (I * (4 * kPi / x)) * d.cast<cplx>() * phase * g(w);
    };
  }
  return integrate_osc_1d(f, ph, cfg, breakpoints);
}

cplx window_ft(const SwitchingSpec& sw, double nu, double delta_pole) {
  if (sw.kind == SwitchingKind::DeltaKick) return sw.eta;
  return std::exp(-I * nu * sw.t_on) * E(nu, sw.duration(), delta_pole);
}

cplx ordered_window_ft(const SwitchingSpec& sw, double a, double b, double delta_pole) {
  if (sw.kind == SwitchingKind::DeltaKick) return 0.5 * sw.eta * sw.eta;
  const double T = sw.duration();
  const cplx shift = std::exp(-I * (a + b) * sw.t_on);
  cplx n0;
  if (std::abs(b) < delta_pole && std::abs(b * T) < 0.5) {
    // sum_n (-i b)^n / (n+1)! int_0^T tau^{n+1} e^{-i a tau}
    const auto m = moments(a, T, 5);
    cplx term = 1.0;
    n0 = 0.0;
    double fact = 1.0;
    for (int n = 0; n <= 4; ++n) {
      fact *= double(n + 1);
      n0 += term / fact * m[std::size_t(n + 1)];
      term *= -I * b;
    }
  } else {
    n0 = (E(a, T, delta_pole) - E(a + b, T, delta_pole)) / (I * b);
  }
  return shift * n0;
}

NestedTimeIntegral nested_time_integral(const SwitchingSpec& sw, double gap, double w, double w2, double delta_pole) {
  if (sw.kind != SwitchingKind::TopHat) throw std::invalid_argument("nested_time_integral: top-hat switching only");
  return {ordered_window_ft(sw, w + gap, w2 - gap, delta_pole), ordered_window_ft(sw, w2 + gap, w - gap, delta_pole)};
}

CounterRotatingI counter_rotating_I(double w, double w2, double T, double gap, double x, double delta_pole) {
  const auto sw = SwitchingSpec::top_hat(-T, T);
  const cplx outer = std::exp(I * (w + w2) * T) * std::sin(w * x) * std::sin(w2 * x);
  CounterRotatingI r;
  r.value = 2.0 * outer * ordered_window_ft(sw, w + gap, w2 - gap, delta_pole);
  const cplx pre = outer * 4.0 * I / (gap - w2);
  r.a_term = pre * std::exp(I * (w2 - gap) * T) * T * sinc((w + gap) * T);
  r.b_term = -pre * T * sinc((w + w2) * T);
  return r;
}

}  // namespace udw

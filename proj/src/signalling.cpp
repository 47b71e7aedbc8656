#include "udw/signalling.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "udw/kernels.hpp"

namespace udw {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx I{0.0, 1.0};

Eigen::ArrayXd spatial_factor(const TwoDetectorScenario& sc, const Eigen::ArrayXd& w) {
  const Eigen::ArrayXd fa = smearing_ft(sc.a.smearing, w);
  const Eigen::ArrayXd fb = smearing_ft(sc.b.smearing, w);
  Eigen::ArrayXd sinc(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    const double v = w[i] * sc.d;
    sinc[i] = std::abs(v) < 1e-4 ? 1.0 - v * v / 6.0 : std::sin(v) / v;
  }
  return 4 * kPi / std::pow(2 * kPi, 3) * 0.5 * w * fa * fb * sinc;
}

double max_abs_time(const SwitchingSpec& s) { return std::max(std::abs(s.t_on), std::abs(s.t_off)); }

}  // namespace

QuadratureResult commutator_expectation(CouplingModel model, double dt, double d, const TwoDetectorScenario& sc,
                                        const QuadratureConfig& q) {
  if (d < 0) throw std::domain_error("separation must be >= 0");
  if (model == CouplingModel::Full && dt == 0.0) return {};
  TwoDetectorScenario s = sc;
  s.d = d;
  const bool full = model == CouplingModel::Full;
  const BatchIntegrand f = [&](const Eigen::ArrayXd& w) -> Eigen::ArrayXcd {
    const Eigen::ArrayXd base = spatial_factor(s, w);
    const Eigen::ArrayXd c = (w * dt).cos(), sn = (w * dt).sin();
    if (full) return (-2.0 * I) * (base * sn).cast<cplx>();
    return base.cast<cplx>() * (c.cast<cplx>() - I * sn.cast<cplx>());
  };
  const double ph[] = {d + std::abs(dt) + sc.a.smearing.radius + sc.b.smearing.radius};
  return integrate_osc_1d(f, ph, q);
}

QuadratureResult c_ab(CouplingModel model, const TwoDetectorScenario& sc, const QuadratureConfig& q,
                      SigmaPairing pairing) {
  const auto& A = sc.a;
  const auto& B = sc.b;
  if (A.switching.kind != SwitchingKind::TopHat || B.switching.kind != SwitchingKind::TopHat)
    throw std::invalid_argument("c_ab: top-hat switchings required");
  if (sc.d < 0) throw std::domain_error("separation must be >= 0");
  const bool full = model == CouplingModel::Full;
  const double dp = q.delta_pole;
  const double ga = pairing.a * A.gap, gb = pairing.b * B.gap;
  const BatchIntegrand f = [&](const Eigen::ArrayXd& w) -> Eigen::ArrayXcd {
    const Eigen::ArrayXd base = spatial_factor(sc, w);
    Eigen::ArrayXcd out(w.size());
    for (Eigen::Index i = 0; i < w.size(); ++i) {
      // e^{-iw(t1-t2)} part, then the e^{+iw(t1-t2)} part of the full kernel
      cplx k = window_ft(A.switching, w[i] - ga, dp) * window_ft(B.switching, -w[i] - gb, dp);
      if (full) k -= window_ft(A.switching, -w[i] - ga, dp) * window_ft(B.switching, w[i] - gb, dp);
      out[i] = base[i] * k;
    }
    return out;
  };
  const double ph[] = {sc.d + max_abs_time(A.switching) + max_abs_time(B.switching) + A.smearing.radius +
                       B.smearing.radius};
  auto r = integrate_osc_1d(f, ph, q);
  const double l = A.lambda * B.lambda;
  r.value *= l;
  r.abs_err *= std::abs(l);
  return r;
}

}  // namespace udw

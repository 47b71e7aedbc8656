#include "udw/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace udw {

double asymptotic_value(TailFormula f, const TailParams& p) {
  constexpr double pi2 = std::numbers::pi * std::numbers::pi;
  const double l2 = p.lambda * p.lambda;
  const double r2 = p.r * p.r;
  switch (f) {
    case TailFormula::PertT00:
    case TailFormula::PertPhi2: {
      const double s = std::sin(0.5 * p.t * p.gap);
      const double base = 8 * l2 * s * s / (9 * pi2 * p.gap * p.gap * r2 * r2);
      return f == TailFormula::PertPhi2 ? base : 2 * base / r2;
    }
    case TailFormula::DeltaT00:
    case TailFormula::DeltaPhi2: {
      const double R2 = p.radius * p.radius;
      const double s = std::sin(R2);
      const double base = 2 * l2 * s * s / (9 * pi2 * R2 * R2 * r2 * r2);
      return f == TailFormula::DeltaPhi2 ? base : 2 * base / r2;
    }
    case TailFormula::SignallingD2:
      return 1.0 / r2;
  }
  return 0.0;
}

PowerLawFit fit_power_law(std::span<const std::pair<double, double>> samples) {
  if (samples.size() < 2) throw std::invalid_argument("fit_power_law: need at least two samples");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = double(samples.size());
  for (std::size_t i = 1; i < samples.size(); ++i)
    if (!(samples[i].first > samples[i - 1].first)) throw std::domain_error("fit_power_law: r must increase");
  for (const auto& [r, v] : samples) {
    if (!(r > 0)) throw std::domain_error("fit_power_law: r must be positive");
    if (!(v > 0)) throw std::domain_error("fit_power_law: values must be positive");
    const double lx = std::log(r), ly = std::log(v);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double den = n * sxx - sx * sx;
  if (!(den > 0)) throw std::invalid_argument("fit_power_law: r values must not all coincide");
  PowerLawFit out;
  out.slope = (n * sxy - sx * sy) / den;
  const double icpt = (sy - out.slope * sx) / n;
  out.amplitude = std::exp(icpt);
  double ss = 0;
  for (const auto& [r, v] : samples) {
    const double e = std::log(v) - (icpt + out.slope * std::log(r));
    ss += e * e;
  }
  out.residual = std::sqrt(ss / n);
  return out;
}

}  // namespace udw
